//! Eventually periodic permutations of the integers.
//!
//! A permutation is stored as an explicit window `lo..=hi` together with a
//! period `k`.  Below the window values repeat the first `k` entries shifted
//! down by multiples of `k`; above it they repeat the last `k` entries
//! shifted up.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;

use crate::error::Error;

/// Default cap on the window length of computed permutations.
pub const DEFAULT_MAX_WINDOW: usize = 1_000_000;

/// Resource caps shared by the operations that build new permutations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_window: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_window: DEFAULT_MAX_WINDOW }
    }
}

impl Limits {
    pub(crate) fn check(&self, len: i64) -> Result<(), Error> {
        if len < 0 || len as u64 > self.max_window as u64 {
            return Err(Error::ResourceLimit { needed: len.max(0) as usize, cap: self.max_window });
        }
        Ok(())
    }
}

/// Which periodic tail a residue check refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tail {
    Left,
    Right,
}

/// A failed invariant of a raw representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    BadPeriod { period: i64 },
    ShortWindow { len: usize, period: i64 },
    ResidueCollision { tail: Tail, residue: i64 },
    DuplicateImage { value: i64, first: i64, second: i64 },
    MissingPreimage { value: i64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::BadPeriod { period } => write!(f, "period {period} is not positive"),
            Violation::ShortWindow { len, period } => {
                write!(f, "window of length {len} is shorter than the period {period}")
            }
            Violation::ResidueCollision { tail, residue } => {
                write!(f, "{tail:?} tail repeats residue {residue}")
            }
            Violation::DuplicateImage { value, first, second } => {
                write!(f, "duplicate image {value} at {first} and {second}")
            }
            Violation::MissingPreimage { value } => write!(f, "missing preimage of {value}"),
        }
    }
}

/// Unchecked representation: period, window start and window values.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RawPerm {
    pub period: i64,
    pub lo: i64,
    pub vals: Vec<i64>,
}

impl RawPerm {
    pub fn new(period: i64, lo: i64, vals: Vec<i64>) -> Self {
        RawPerm { period, lo, vals }
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.vals.len() as i64 - 1
    }

    /// Tail-rule evaluation; requires a well-shaped window.
    #[inline]
    pub(crate) fn eval(&self, n: i64) -> i64 {
        let k = self.period;
        let lo = self.lo;
        let hi = self.hi();
        if n < lo {
            let (q, r) = (n - lo).div_mod_floor(&k);
            self.vals[r as usize] + q * k
        } else if n > hi {
            let base = hi - k + 1;
            let (q, r) = (n - base).div_mod_floor(&k);
            self.vals[(base - lo + r) as usize] + q * k
        } else {
            self.vals[(n - lo) as usize]
        }
    }

    fn window_bound(&self) -> i64 {
        self.vals.iter().enumerate().map(|(i, &v)| (v - (self.lo + i as i64)).abs()).max().unwrap_or(0)
    }

    /// Checks the residue, injectivity and preimage invariants.
    pub fn validate(&self) -> Result<(), Vec<Violation>> {
        let mut out = Vec::new();
        if self.period < 1 {
            out.push(Violation::BadPeriod { period: self.period });
            return Err(out);
        }
        if (self.vals.len() as i64) < self.period {
            out.push(Violation::ShortWindow { len: self.vals.len(), period: self.period });
            return Err(out);
        }
        let k = self.period;
        let len = self.vals.len();
        for (tail, gen) in [(Tail::Left, &self.vals[..k as usize]), (Tail::Right, &self.vals[len - k as usize..])] {
            let mut seen = BTreeSet::new();
            for &v in gen {
                let r = v.rem_euclid(k);
                if !seen.insert(r) {
                    out.push(Violation::ResidueCollision { tail, residue: r });
                }
            }
        }
        if !out.is_empty() {
            return Err(out);
        }
        let m = self.window_bound();
        let (lo, hi) = (self.lo, self.hi());
        let mut images: BTreeMap<i64, i64> = BTreeMap::new();
        for n in (lo - 2 * m - 2 * k)..=(hi + 2 * m + 2 * k) {
            let v = self.eval(n);
            if let Some(&first) = images.get(&v) {
                out.push(Violation::DuplicateImage { value: v, first, second: n });
            } else {
                images.insert(v, n);
            }
        }
        for a in (lo - m - k)..=(hi + m + k) {
            match images.get(&a) {
                Some(&n) if (n - a).abs() <= m => {}
                _ => out.push(Violation::MissingPreimage { value: a }),
            }
        }
        if out.is_empty() {
            Ok(())
        } else {
            Err(out)
        }
    }

    /// Smallest period and window reproducing the same function.
    /// Expects a representation that passes [`RawPerm::validate`].
    pub fn canonicalize(&self) -> RawPerm {
        let k = self.period;
        let (lo, hi) = (self.lo, self.hi());
        let d = (1..=k)
            .filter(|d| k % d == 0)
            .find(|&d| {
                (lo..lo + k).all(|n| self.eval(n - d) == self.eval(n) - d)
                    && (hi - k + 1..=hi).all(|n| self.eval(n + d) == self.eval(n) + d)
            })
            .unwrap_or(k);
        let left_fail = (lo..=hi + d).find(|&n| self.eval(n - d) != self.eval(n) - d);
        let right_fail = (lo - d..=hi).rev().find(|&n| self.eval(n + d) != self.eval(n) + d);
        let (new_lo, new_hi) = match (left_fail, right_fail) {
            (Some(l), Some(r)) => {
                let (mut a, b) = (l - d, r + d);
                if b - a + 1 < d {
                    a = b - d + 1;
                }
                (a, b)
            }
            _ => (0, d - 1),
        };
        RawPerm { period: d, lo: new_lo, vals: (new_lo..=new_hi).map(|n| self.eval(n)).collect() }
    }
}

/// A validated permutation in canonical form.
///
/// Equality compares canonical forms, so two values are equal exactly when
/// they represent the same bijection.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    raw: RawPerm,
    chi: i64,
    diff_bound: i64,
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ep(k={}, lo={};", self.raw.period, self.raw.lo)?;
        for v in &self.raw.vals {
            write!(f, " {v}")?;
        }
        write!(f, ")")
    }
}

/// Admissible sets of adjacent transpositions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorSet {
    Finite(BTreeSet<i64>),
    Residue { n: i64, k: i64 },
}

impl GeneratorSet {
    pub fn finite<I: IntoIterator<Item = i64>>(items: I) -> Result<Self, Error> {
        let set: BTreeSet<i64> = items.into_iter().collect();
        if set.iter().any(|n| set.contains(&(n + 1))) {
            return Err(Error::InvalidGeneratorSet("consecutive integers"));
        }
        Ok(GeneratorSet::Finite(set))
    }

    pub fn residue(n: i64, k: i64) -> Result<Self, Error> {
        if k < 2 {
            return Err(Error::InvalidGeneratorSet("residue class modulus must be at least 2"));
        }
        Ok(GeneratorSet::Residue { n: n.rem_euclid(k), k })
    }

    pub fn contains(&self, m: i64) -> bool {
        match self {
            GeneratorSet::Finite(s) => s.contains(&m),
            GeneratorSet::Residue { n, k } => m.rem_euclid(*k) == *n,
        }
    }

    /// Period of the membership pattern.
    pub fn period(&self) -> i64 {
        match self {
            GeneratorSet::Finite(_) => 1,
            GeneratorSet::Residue { k, .. } => *k,
        }
    }

    /// Smallest and largest element for finite sets.
    pub fn span(&self) -> Option<(i64, i64)> {
        match self {
            GeneratorSet::Finite(s) => Some((*s.first()?, *s.last()?)),
            GeneratorSet::Residue { .. } => None,
        }
    }

    /// The involution exchanging n and n+1 for every member n.
    pub fn swap(&self, m: i64) -> i64 {
        if self.contains(m) {
            m + 1
        } else if self.contains(m - 1) {
            m - 1
        } else {
            m
        }
    }
}

impl Permutation {
    /// Validates and canonicalizes a raw representation.
    pub fn from_raw(raw: RawPerm) -> Result<Self, Error> {
        raw.validate().map_err(Error::NotABijection)?;
        let raw = raw.canonicalize();
        let diff_bound = raw.window_bound();
        let mut p = Permutation { raw, chi: 0, diff_bound };
        p.chi = p.count_from(0, 0) - p.count_before(0, 0);
        Ok(p)
    }

    /// Builds a permutation from values on `lo..` with the given period,
    /// checking the window length against `limits` first.
    pub fn from_fn<F: Fn(i64) -> i64>(period: i64, lo: i64, hi: i64, limits: &Limits, f: F) -> Result<Self, Error> {
        limits.check(hi - lo + 1)?;
        Permutation::from_raw(RawPerm::new(period, lo, (lo..=hi).map(f).collect()))
    }

    /// A permutation of `off..off+d` extended by the identity.
    pub fn from_one_line(values: &[i64], off: i64) -> Result<Self, Error> {
        let d = values.len() as i64;
        let mut seen = vec![false; values.len()];
        for &v in values {
            if v < off || v >= off + d {
                return Err(Error::InvalidOneLine("value out of range"));
            }
            let slot = &mut seen[(v - off) as usize];
            if *slot {
                return Err(Error::InvalidOneLine("duplicate value"));
            }
            *slot = true;
        }
        let mut vals = Vec::with_capacity(values.len() + 2);
        vals.push(off - 1);
        vals.extend_from_slice(values);
        vals.push(off + d);
        Permutation::from_raw(RawPerm::new(1, off - 1, vals))
    }

    /// The extended affine permutation with `alpha(n) = window[n]` on `0..k`
    /// and `alpha(n + k) = alpha(n) + k`.
    pub fn affine(window: &[i64]) -> Result<Self, Error> {
        if window.is_empty() {
            return Err(Error::InvalidOneLine("empty affine window"));
        }
        Permutation::from_raw(RawPerm::new(window.len() as i64, 0, window.to_vec()))
    }

    /// The shift `n -> n - chi`.
    pub fn shift(chi: i64) -> Self {
        Permutation { raw: RawPerm::new(1, 0, vec![-chi]), chi, diff_bound: chi.abs() }
    }

    pub fn identity() -> Self {
        Permutation::shift(0)
    }

    /// The involution exchanging `n` and `n+1` for each `n` in `set`.
    pub fn sigma(set: &GeneratorSet) -> Self {
        let (period, lo, hi) = match set {
            GeneratorSet::Finite(s) if s.is_empty() => (1, 0, 0),
            GeneratorSet::Finite(s) => (1, s.first().unwrap() - 1, s.last().unwrap() + 2),
            GeneratorSet::Residue { k, .. } => (*k, 0, k - 1),
        };
        Permutation::from_raw(RawPerm::new(period, lo, (lo..=hi).map(|m| set.swap(m)).collect()))
            .expect("admissible generator sets give involutions")
    }

    /// The two-block permutation with blocks of sizes `m` and `n`.
    pub fn gamma(m: i64, n: i64) -> Result<Self, Error> {
        if m < 0 || n < 0 {
            return Err(Error::InvalidOneLine("gamma needs nonnegative block sizes"));
        }
        let f = |x: i64| {
            if x < -m {
                x + m + 1 - n
            } else if x < 0 {
                x + m + 1
            } else if x < n {
                x - n + 1
            } else {
                x + m + 1 - n
            }
        };
        Permutation::from_raw(RawPerm::new(1, -m - 1, (-m - 1..=n).map(f).collect()))
    }

    pub fn raw(&self) -> &RawPerm {
        &self.raw
    }

    pub fn period(&self) -> i64 {
        self.raw.period
    }

    pub fn lo(&self) -> i64 {
        self.raw.lo
    }

    pub fn hi(&self) -> i64 {
        self.raw.hi()
    }

    pub fn vals(&self) -> &[i64] {
        &self.raw.vals
    }

    /// The shift statistic.
    pub fn chi(&self) -> i64 {
        self.chi
    }

    /// Maximum of `|alpha(n) - n|` over all integers.
    pub fn diff_bound(&self) -> i64 {
        self.diff_bound
    }

    #[inline]
    pub fn apply(&self, n: i64) -> i64 {
        self.raw.eval(n)
    }

    /// `#{ n >= b : alpha(n) < a }`.
    fn count_from(&self, a: i64, b: i64) -> i64 {
        let raw = &self.raw;
        let k = raw.period;
        let (lo, hi) = (raw.lo, raw.hi());
        let mut c = 0;
        if b < lo {
            for j in 0..k {
                let np = lo + j;
                let v = raw.vals[j as usize];
                let m_hi = Integer::div_floor(&(np - b), &k);
                let m_lo = (Integer::div_floor(&(v - a), &k) + 1).max(1);
                c += (m_hi - m_lo + 1).max(0);
            }
        }
        for n in b.max(lo)..=hi {
            if raw.vals[(n - lo) as usize] < a {
                c += 1;
            }
        }
        for j in 0..k {
            let np = hi - k + 1 + j;
            let v = raw.vals[(np - lo) as usize];
            let m_lo = Integer::div_ceil(&(b - np), &k).max(1);
            let m_hi = Integer::div_floor(&(a - 1 - v), &k);
            c += (m_hi - m_lo + 1).max(0);
        }
        c
    }

    /// `#{ n < b : alpha(n) >= a }`.
    fn count_before(&self, a: i64, b: i64) -> i64 {
        let raw = &self.raw;
        let k = raw.period;
        let (lo, hi) = (raw.lo, raw.hi());
        let mut c = 0;
        for j in 0..k {
            let np = lo + j;
            let v = raw.vals[j as usize];
            let m_lo = Integer::div_ceil(&(np - b + 1), &k).max(1);
            let m_hi = Integer::div_floor(&(v - a), &k);
            c += (m_hi - m_lo + 1).max(0);
        }
        for n in lo..=hi.min(b - 1) {
            if raw.vals[(n - lo) as usize] >= a {
                c += 1;
            }
        }
        if b - 1 > hi {
            for j in 0..k {
                let np = hi - k + 1 + j;
                let v = raw.vals[(np - lo) as usize];
                let m_lo = Integer::div_ceil(&(a - v), &k).max(1);
                let m_hi = Integer::div_floor(&(b - 1 - np), &k);
                c += (m_hi - m_lo + 1).max(0);
            }
        }
        c
    }

    /// The slipface value `#{ n >= b : alpha(n) < a }`.
    pub fn eval_s(&self, a: i64, b: i64) -> i64 {
        self.count_from(a, b)
    }

    /// The slipface of the inverse, `#{ n >= b : alpha^-1(n) < a }`,
    /// computed without building the inverse.
    pub fn eval_s_inverse(&self, a: i64, b: i64) -> i64 {
        self.count_before(b, a)
    }

    /// Indicator of `alpha(b) = a`.
    pub fn delta_s(&self, a: i64, b: i64) -> i64 {
        i64::from(self.apply(b) == a)
    }

    pub fn inverse(&self) -> Permutation {
        let m = self.diff_bound;
        let (lo, hi) = (self.lo() - m, self.hi() + m);
        let mut vals = vec![i64::MIN; (hi - lo + 1) as usize];
        for n in lo - m..=hi + m {
            let v = self.apply(n);
            if (lo..=hi).contains(&v) {
                vals[(v - lo) as usize] = n;
            }
        }
        Permutation::from_raw(RawPerm::new(self.period(), lo, vals)).expect("inverse of a valid permutation")
    }

    /// The composition `n -> self(other(n))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, Error> {
        self.compose_with(other, &Limits::default())
    }

    pub fn compose_with(&self, other: &Permutation, limits: &Limits) -> Result<Permutation, Error> {
        let k = self.period().lcm(&other.period());
        let mb = other.diff_bound;
        let lo = other.lo().min(self.lo() - mb) - k;
        let hi = other.hi().max(self.hi() + mb) + k;
        Permutation::from_fn(k, lo, hi, limits, |n| self.apply(other.apply(n)))
    }

    /// True when `u < v` and `alpha(u) > alpha(v)`.
    pub fn has_inversion(&self, u: i64, v: i64) -> bool {
        u < v && self.apply(u) > self.apply(v)
    }

    /// All inversions `(u, v)` with `u` in `u_lo..=u_hi`.
    pub fn inversions_in(&self, u_lo: i64, u_hi: i64) -> Vec<(i64, i64)> {
        let reach = 2 * self.diff_bound;
        let mut out = Vec::new();
        for u in u_lo..=u_hi {
            let au = self.apply(u);
            for v in u + 1..=u + reach {
                if au > self.apply(v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// True when the inversion set is finite.
    pub fn is_finitary(&self) -> bool {
        self.period() == 1
            && self.vals()[0] - self.lo() == -self.chi
            && self.vals()[self.vals().len() - 1] - self.hi() == -self.chi
    }

    /// Number of inversions of a finitary permutation.
    pub fn inv_count(&self) -> Result<u64, Error> {
        if !self.is_finitary() {
            return Err(Error::InfiniteInversions);
        }
        Ok(self.inversions_in(self.lo() - 2 * self.diff_bound, self.hi()).len() as u64)
    }
}
