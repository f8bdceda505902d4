//! The Möbius function μ(k) computed by independent methods.
//!
//! μ(1) = +1, μ(k) = 0 when a square of a prime divides k, and otherwise
//! μ(k) = (-1)^m where m is the number of distinct prime factors. Three
//! routes are provided so they can cross-check each other:
//!
//! * [`mobius_trial`] — direct factorization of one k, the slow oracle;
//! * [`mobius_sieve`] — linear sieve producing all values up to a limit;
//! * [`mobius_segment`] — segmented sieve for a window `[lo, hi]` that never
//!   allocates storage below `lo`, used to stream huge ranges.
//!
//! Partial sums of μ (the Mertens function) live in [`crate::mobius::mertens`],
//! persistent resume records in [`crate::mobius::checkpoint`].

use crate::error::{Error, Result};

pub mod checkpoint;
pub mod mertens;

/// A value of the Möbius function: always -1, 0, or +1.
///
/// Stored as a single signed byte so sieve tables over 10^7+ entries stay
/// compact; the enum makes any other value unrepresentable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[repr(i8)]
pub enum MobiusValue {
    MinusOne = -1,
    Zero = 0,
    PlusOne = 1,
}

impl MobiusValue {
    #[inline]
    pub fn as_i8(self) -> i8 {
        self as i8
    }

    #[inline]
    pub fn as_i64(self) -> i64 {
        self as i8 as i64
    }

    /// Flip the sign; zero stays zero.
    #[inline]
    pub fn negate(self) -> Self {
        match self {
            MobiusValue::MinusOne => MobiusValue::PlusOne,
            MobiusValue::Zero => MobiusValue::Zero,
            MobiusValue::PlusOne => MobiusValue::MinusOne,
        }
    }
}

impl std::ops::Neg for MobiusValue {
    type Output = Self;
    fn neg(self) -> Self {
        self.negate()
    }
}

impl std::fmt::Display for MobiusValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.as_i8())
    }
}

/// Which route produced a Mertens value; recorded in tables and checkpoints.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Trial,
    LinearSieve,
    SegmentedSieve,
    Recurrence,
}

impl Method {
    pub fn tag(self) -> &'static str {
        match self {
            Method::Trial => "trial",
            Method::LinearSieve => "linear-sieve",
            Method::SegmentedSieve => "segmented-sieve",
            Method::Recurrence => "recurrence",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.tag())
    }
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "trial" => Ok(Method::Trial),
            "linear-sieve" => Ok(Method::LinearSieve),
            "segmented-sieve" => Ok(Method::SegmentedSieve),
            "recurrence" => Ok(Method::Recurrence),
            other => Err(Error::invalid(
                "method",
                format!("unknown method tag `{other}`"),
            )),
        }
    }
}

/// Integer square root: the largest r with r*r <= n.
pub(crate) fn isqrt(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut r = (n as f64).sqrt() as u64;
    while r.checked_mul(r).is_none_or(|s| s > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|s| s <= n) {
        r += 1;
    }
    r
}

/// Allocate a vector of `len` copies of `fill`, reporting allocation failure
/// as an error instead of aborting.
pub(crate) fn try_vec<T: Clone>(len: usize, fill: T, what: &'static str) -> Result<Vec<T>> {
    let mut v = Vec::new();
    v.try_reserve_exact(len).map_err(|_| Error::AllocationFailed {
        what,
        requested: len.saturating_mul(std::mem::size_of::<T>()),
    })?;
    v.resize(len, fill);
    Ok(v)
}

/// All primes up to a bound, with the bound retained so segmented sieves can
/// verify coverage before trusting the table.
#[derive(Clone, Debug)]
pub struct PrimeTable {
    bound: u64,
    primes: Vec<u64>,
}

impl PrimeTable {
    /// Sieve of Eratosthenes up to `bound` (inclusive).
    pub fn up_to(bound: u64) -> Result<Self> {
        let len = usize::try_from(bound.saturating_add(1))
            .map_err(|_| Error::invalid("bound", "exceeds addressable memory"))?;
        let mut composite = try_vec(len.max(2), false, "prime table")?;
        let mut primes = Vec::new();
        let mut p: u64 = 2;
        while p <= bound {
            if !composite[p as usize] {
                primes.push(p);
                let mut q = p.saturating_mul(p);
                while q <= bound {
                    composite[q as usize] = true;
                    q += p;
                }
            }
            p += 1;
        }
        Ok(PrimeTable { bound, primes })
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }
}

/// μ(k) by trial division. The reference oracle: slow, obviously correct.
pub fn mobius_trial(k: u64) -> Result<MobiusValue> {
    if k == 0 {
        return Err(Error::invalid("k", "Möbius function is defined for k >= 1"));
    }
    let mut rest = k;
    let mut factors = 0u32;
    let mut d: u64 = 2;
    while d * d <= rest {
        if rest % d == 0 {
            rest /= d;
            if rest % d == 0 {
                return Ok(MobiusValue::Zero);
            }
            factors += 1;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        factors += 1;
    }
    Ok(if factors % 2 == 0 {
        MobiusValue::PlusOne
    } else {
        MobiusValue::MinusOne
    })
}

/// μ(1), μ(2), ..., μ(limit) by a linear sieve.
///
/// Entry `i` of the result holds μ(i + 1). Runs in O(limit) time using a
/// smallest-prime-factor table: each composite is generated exactly once as
/// i·p with p <= spf(i), where μ(i·p) = 0 if p | i and -μ(i) otherwise.
pub fn mobius_sieve(limit: usize) -> Result<Vec<MobiusValue>> {
    if limit == 0 {
        return Err(Error::invalid("limit", "sieve limit must be >= 1"));
    }
    if u32::try_from(limit).is_err() {
        return Err(Error::invalid("limit", "sieve limit must fit in 32 bits"));
    }
    let mut mu = try_vec(limit + 1, MobiusValue::PlusOne, "Möbius table")?;
    let mut spf = try_vec(limit + 1, 0u32, "smallest-prime-factor table")?;
    let mut primes: Vec<u32> = Vec::new();
    mu[0] = MobiusValue::Zero;
    for i in 2..=limit {
        if spf[i] == 0 {
            spf[i] = i as u32;
            primes.push(i as u32);
            mu[i] = MobiusValue::MinusOne;
        }
        for &p in &primes {
            if p > spf[i] {
                break;
            }
            let ip = i * p as usize;
            if ip > limit {
                break;
            }
            spf[ip] = p;
            mu[ip] = if p == spf[i] {
                MobiusValue::Zero
            } else {
                mu[i].negate()
            };
        }
    }
    mu.drain(..1);
    Ok(mu)
}

/// μ over the window `[lo, hi]` without allocating anything below `lo`.
///
/// `primes` must cover every prime up to floor(sqrt(hi)); anything divisible
/// only by larger primes has at most one prime factor left after the small
/// primes are stripped, which is what the final sign flip accounts for.
pub fn mobius_segment(lo: u64, hi: u64, primes: &PrimeTable) -> Result<Vec<MobiusValue>> {
    if lo == 0 {
        return Err(Error::invalid("lo", "segment must start at 1 or above"));
    }
    if lo > hi {
        return Err(Error::invalid("lo", format!("lo = {lo} exceeds hi = {hi}")));
    }
    let required = isqrt(hi);
    if primes.bound() < required {
        return Err(Error::PrimeTableTooSmall {
            required,
            available: primes.bound(),
        });
    }
    let len = usize::try_from(hi - lo + 1)
        .map_err(|_| Error::invalid("hi", "segment too large to address"))?;
    let mut mu = try_vec(len, MobiusValue::PlusOne, "segment Möbius values")?;
    // Cofactor still to be factored for each k in the window.
    let mut rem: Vec<u64> = {
        let mut v = Vec::new();
        v.try_reserve_exact(len).map_err(|_| Error::AllocationFailed {
            what: "segment cofactors",
            requested: len * 8,
        })?;
        v.extend(lo..=hi);
        v
    };
    for &p in primes.primes() {
        if p > required {
            break;
        }
        let first = lo.div_ceil(p) * p;
        let mut m = first;
        while m <= hi {
            let idx = (m - lo) as usize;
            let mut exp = 0u32;
            while rem[idx] % p == 0 {
                rem[idx] /= p;
                exp += 1;
            }
            mu[idx] = if exp >= 2 {
                MobiusValue::Zero
            } else {
                mu[idx].negate()
            };
            m += p;
        }
    }
    for idx in 0..len {
        if rem[idx] > 1 {
            // One prime factor above sqrt(hi) remains.
            mu[idx] = mu[idx].negate();
        }
    }
    Ok(mu)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trial_small_values() {
        // mu(1..=10) = 1, -1, -1, 0, -1, 1, -1, 0, 0, 1
        let expect: [i8; 10] = [1, -1, -1, 0, -1, 1, -1, 0, 0, 1];
        for (k, &e) in (1u64..).zip(expect.iter()) {
            assert_eq!(mobius_trial(k).unwrap().as_i8(), e, "mu({k})");
        }
        assert_eq!(mobius_trial(30).unwrap().as_i8(), -1); // 2*3*5
        assert_eq!(mobius_trial(100).unwrap().as_i8(), 0); // 4 | 100
    }

    #[test]
    fn trial_rejects_zero() {
        assert!(matches!(
            mobius_trial(0),
            Err(Error::InvalidArgument { name: "k", .. })
        ));
    }

    #[test]
    fn sieve_matches_example() {
        let mu = mobius_sieve(4).unwrap();
        let got: Vec<i8> = mu.iter().map(|m| m.as_i8()).collect();
        assert_eq!(got, vec![1, -1, -1, 0]);
    }

    #[test]
    fn sieve_rejects_zero_limit() {
        assert!(mobius_sieve(0).is_err());
    }

    #[test]
    fn sieve_matches_trial_to_2000() {
        let mu = mobius_sieve(2000).unwrap();
        for k in 1..=2000u64 {
            assert_eq!(
                mu[(k - 1) as usize],
                mobius_trial(k).unwrap(),
                "disagreement at k = {k}"
            );
        }
    }

    #[test]
    fn segment_matches_sieve() {
        let limit = 5000u64;
        let full = mobius_sieve(limit as usize).unwrap();
        let primes = PrimeTable::up_to(isqrt(limit)).unwrap();
        for (lo, hi) in [(1u64, 100), (97, 97), (1000, 2500), (4900, 5000)] {
            let seg = mobius_segment(lo, hi, &primes).unwrap();
            for (i, k) in (lo..=hi).enumerate() {
                assert_eq!(seg[i], full[(k - 1) as usize], "k = {k}");
            }
        }
    }

    #[test]
    fn segment_requires_covering_primes() {
        let primes = PrimeTable::up_to(10).unwrap();
        let err = mobius_segment(1, 1000, &primes).unwrap_err();
        match err {
            Error::PrimeTableTooSmall { required, available } => {
                assert_eq!(required, 31); // floor(sqrt(1000))
                assert_eq!(available, 10);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn segment_rejects_bad_window() {
        let primes = PrimeTable::up_to(100).unwrap();
        assert!(mobius_segment(0, 10, &primes).is_err());
        assert!(mobius_segment(10, 5, &primes).is_err());
    }

    #[test]
    fn isqrt_is_exact() {
        for n in 0..2000u64 {
            let r = isqrt(n);
            assert!(r * r <= n && (r + 1) * (r + 1) > n, "isqrt({n}) = {r}");
        }
        assert_eq!(isqrt(10_000_000), 3162);
        assert_eq!(isqrt(u64::MAX), (1u64 << 32) - 1);
    }

    #[test]
    fn prime_table_small() {
        let t = PrimeTable::up_to(30).unwrap();
        assert_eq!(t.primes(), &[2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(t.bound(), 30);
        let empty = PrimeTable::up_to(1).unwrap();
        assert!(empty.primes().is_empty());
    }

    #[test]
    fn method_tags_round_trip() {
        for m in [
            Method::Trial,
            Method::LinearSieve,
            Method::SegmentedSieve,
            Method::Recurrence,
        ] {
            assert_eq!(m.tag().parse::<Method>().unwrap(), m);
        }
        assert!("nonsense".parse::<Method>().is_err());
    }
}
