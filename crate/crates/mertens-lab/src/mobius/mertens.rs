//! The Mertens function M(n) = sum of μ(k) for k = 1..n.
//!
//! Two independent routes:
//!
//! * prefix sums over a sieve ([`mertens_prefix`] for in-memory tables,
//!   [`mertens_scan_range`] to stream arbitrarily large ranges segment by
//!   segment), and
//! * the divisor-count recurrence ([`mertens_recurrence`]), which uses
//!   sum_{k=1..n} M(floor(n/k)) = 1 and runs in roughly O(n^(3/4)) without
//!   materializing μ beyond n^(2/3).
//!
//! Agreement between the two is the core self-check of this crate.
//!
//! All accumulators are 64-bit signed; since |M(n)| stays far below sqrt(n)
//! at every scale this code targets, overflow is not reachable in practice.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::mobius::{isqrt, mobius_segment, mobius_sieve, Method, MobiusValue, PrimeTable};

/// Default segment length for streaming scans: 4 Mi entries keeps the
/// working set cache-friendly while amortizing per-segment prime setup.
pub const DEFAULT_SEGMENT_SIZE: usize = 1 << 22;

/// A contiguous run of Mertens values `M(start), M(start+1), ...`.
#[derive(Clone, Debug)]
pub struct MertensTable {
    start: u64,
    values: Vec<i64>,
    method: Method,
}

impl MertensTable {
    /// Build a table, validating the defining invariants: consecutive values
    /// differ by a Möbius value (-1, 0, or +1), and a table starting at 1
    /// must start with M(1) = 1.
    pub fn new(start: u64, values: Vec<i64>, method: Method) -> Result<Self> {
        if start == 0 {
            return Err(Error::invalid("start", "Mertens tables start at n >= 1"));
        }
        if values.is_empty() {
            return Err(Error::invalid("values", "Mertens table must be non-empty"));
        }
        if start == 1 && values[0] != 1 {
            return Err(Error::invalid("values", "M(1) must equal 1"));
        }
        if let Some(i) = values.windows(2).position(|w| (w[1] - w[0]).abs() > 1) {
            return Err(Error::invalid(
                "values",
                format!(
                    "entries for n = {} and n = {} differ by more than 1",
                    start + i as u64,
                    start + i as u64 + 1
                ),
            ));
        }
        Ok(MertensTable {
            start,
            values,
            method,
        })
    }

    pub fn start(&self) -> u64 {
        self.start
    }

    /// Largest n covered by the table.
    pub fn end(&self) -> u64 {
        self.start + (self.values.len() as u64 - 1)
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// M(n), if n lies inside the table.
    pub fn get(&self, n: u64) -> Option<i64> {
        if n < self.start || n > self.end() {
            return None;
        }
        Some(self.values[(n - self.start) as usize])
    }

    /// The last (largest-n) value.
    pub fn last(&self) -> i64 {
        *self.values.last().expect("table is non-empty")
    }
}

/// M(1..=limit) as an in-memory table via the linear sieve.
pub fn mertens_prefix(limit: u64) -> Result<MertensTable> {
    let limit_us = usize::try_from(limit)
        .map_err(|_| Error::invalid("limit", "exceeds addressable memory"))?;
    let mu = mobius_sieve(limit_us)?;
    let mut values = Vec::new();
    values
        .try_reserve_exact(mu.len())
        .map_err(|_| Error::AllocationFailed {
            what: "Mertens table",
            requested: mu.len() * 8,
        })?;
    let mut acc = 0i64;
    for m in &mu {
        acc += m.as_i64();
        values.push(acc);
    }
    MertensTable::new(1, values, Method::LinearSieve)
}

/// Stream μ over `[lo, hi]` in segments, invoking `visit` once per segment
/// (ascending), and return M(hi) given `m_before` = M(lo - 1).
///
/// `visit` receives the segment start, the μ values of the segment, and the
/// running Mertens value just before the segment. Segments are sieved by a
/// pool of parallel workers one wave at a time, but the visit order and the
/// resulting sums are identical for every thread count: each segment's μ
/// values depend only on its range, and the reduction is a sequential
/// left-to-right pass over segments.
pub fn mertens_scan_range<F>(
    lo: u64,
    hi: u64,
    m_before: i64,
    segment_size: usize,
    mut visit: F,
) -> Result<i64>
where
    F: FnMut(u64, &[MobiusValue], i64),
{
    if lo == 0 {
        return Err(Error::invalid("lo", "scan must start at 1 or above"));
    }
    if lo > hi {
        return Err(Error::invalid("lo", format!("lo = {lo} exceeds hi = {hi}")));
    }
    if segment_size == 0 {
        return Err(Error::invalid("segment_size", "must be >= 1"));
    }
    let primes = PrimeTable::up_to(isqrt(hi))?;
    let seg = segment_size as u64;
    let mut starts: Vec<u64> = Vec::new();
    let mut s = lo;
    while s <= hi {
        starts.push(s);
        s = match s.checked_add(seg) {
            Some(next) => next,
            None => break,
        };
    }
    let wave = rayon::current_num_threads().max(1);
    let mut acc = m_before;
    for chunk in starts.chunks(wave) {
        let sieved: Vec<Result<(u64, Vec<MobiusValue>)>> = chunk
            .par_iter()
            .map(|&start| {
                let end = hi.min(start.saturating_add(seg - 1));
                Ok((start, mobius_segment(start, end, &primes)?))
            })
            .collect();
        for piece in sieved {
            let (start, mu) = piece?;
            visit(start, &mu, acc);
            for m in &mu {
                acc += m.as_i64();
            }
        }
    }
    Ok(acc)
}

/// M(n) at each of the given points via one streaming scan to the largest.
///
/// Points may be unsorted or repeated; the result is aligned with the input.
pub fn mertens_at_points(points: &[u64], segment_size: usize) -> Result<Vec<i64>> {
    if points.is_empty() {
        return Ok(Vec::new());
    }
    if points.contains(&0) {
        return Err(Error::invalid("points", "M(n) requires n >= 1"));
    }
    let hi = *points.iter().max().expect("non-empty");
    let mut sorted: Vec<u64> = points.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut found: HashMap<u64, i64> = HashMap::with_capacity(sorted.len());
    mertens_scan_range(1, hi, 0, segment_size, |start, mu, m_before| {
        let end = start + mu.len() as u64 - 1;
        let lo_idx = sorted.partition_point(|&p| p < start);
        let hi_idx = sorted.partition_point(|&p| p <= end);
        let mut acc = m_before;
        let mut next = start;
        for &p in &sorted[lo_idx..hi_idx] {
            while next <= p {
                acc += mu[(next - start) as usize].as_i64();
                next += 1;
            }
            found.insert(p, acc);
        }
    })?;
    Ok(points.iter().map(|p| found[p]).collect())
}

/// M(n) by the divisor-count recurrence M(n) = 1 - sum_{k=2..n} M(floor(n/k)),
/// with the sum grouped over runs of equal floor(n/k).
///
/// Values at or below roughly n^(2/3) come from a sieved prefix table; the
/// handful of larger arguments (all of the form floor(n/k)) are memoized.
pub fn mertens_recurrence(n: u64) -> Result<i64> {
    if n == 0 {
        return Err(Error::invalid("n", "M(n) requires n >= 1"));
    }
    let threshold = ((n as f64).powf(2.0 / 3.0).round() as u64).clamp(1, n);
    let small = mertens_prefix(threshold)?;
    let mut memo: HashMap<u64, i64> = HashMap::new();
    return Ok(eval(n, &small, &mut memo));

    fn eval(v: u64, small: &MertensTable, memo: &mut HashMap<u64, i64>) -> i64 {
        if let Some(m) = small.get(v) {
            return m;
        }
        if let Some(&m) = memo.get(&v) {
            return m;
        }
        let mut res = 1i64;
        let mut k = 2u64;
        while k <= v {
            let t = v / k;
            let k_end = v / t;
            res -= (k_end - k + 1) as i64 * eval(t, small, memo);
            k = k_end + 1;
        }
        memo.insert(v, res);
        res
    }
}
