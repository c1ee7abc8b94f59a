//! Slipface functions on the integer grid.
//!
//! A slipface is stored as a box of explicit values, a band width beyond
//! which it equals the asymptote `max(0, chi + a - b)`, and a diagonal
//! period: band cells outside the box are translated along the diagonal by
//! multiples of the period onto the nearest end of the stored diagonal.

use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;

use crate::error::Error;
use crate::perm::{Limits, Permutation, RawPerm};

/// `max(0, chi + a - b)`.
#[inline]
pub fn asymptote(chi: i64, a: i64, b: i64) -> i64 {
    (chi + a - b).max(0)
}

/// A failed slipface invariant, tagged with the offending cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SfViolation {
    Shape,
    Negative { a: i64, b: i64 },
    Band { a: i64, b: i64 },
    NarrowBox { diagonal: i64 },
    Seam { a: i64, b: i64 },
    StepA { a: i64, b: i64 },
    StepB { a: i64, b: i64 },
    BelowAsymptote { a: i64, b: i64 },
}

impl fmt::Display for SfViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SfViolation::Shape => write!(f, "malformed box, period or band"),
            SfViolation::Negative { a, b } => write!(f, "negative value at ({a},{b})"),
            SfViolation::Band { a, b } => write!(f, "stored value off the asymptote at ({a},{b})"),
            SfViolation::NarrowBox { diagonal } => {
                write!(f, "box holds fewer than two periods on diagonal {diagonal}")
            }
            SfViolation::Seam { a, b } => write!(f, "diagonal seam not periodic at ({a},{b})"),
            SfViolation::StepA { a, b } => write!(f, "step in a is not 0 or 1 at ({a},{b})"),
            SfViolation::StepB { a, b } => write!(f, "step in b is not 0 or 1 at ({a},{b})"),
            SfViolation::BelowAsymptote { a, b } => write!(f, "value below asymptote at ({a},{b})"),
        }
    }
}

/// Raw slipface data; rows are indexed by `a`, columns by `b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Grid {
    pub chi: i64,
    pub period: i64,
    pub band: i64,
    pub a_lo: i64,
    pub a_hi: i64,
    pub b_lo: i64,
    pub b_hi: i64,
    pub values: Vec<i64>,
}

impl Grid {
    /// Tabulates `f` over the box.
    pub fn tabulate<F: FnMut(i64, i64) -> i64>(
        chi: i64,
        period: i64,
        band: i64,
        (a_lo, a_hi): (i64, i64),
        (b_lo, b_hi): (i64, i64),
        mut f: F,
    ) -> Grid {
        let mut values = Vec::with_capacity(((a_hi - a_lo + 1) * (b_hi - b_lo + 1)).max(0) as usize);
        for a in a_lo..=a_hi {
            for b in b_lo..=b_hi {
                values.push(f(a, b));
            }
        }
        Grid { chi, period, band, a_lo, a_hi, b_lo, b_hi, values }
    }

    fn width(&self) -> i64 {
        self.b_hi - self.b_lo + 1
    }

    fn in_box(&self, a: i64, b: i64) -> bool {
        (self.a_lo..=self.a_hi).contains(&a) && (self.b_lo..=self.b_hi).contains(&b)
    }

    #[inline]
    fn stored(&self, a: i64, b: i64) -> i64 {
        self.values[((a - self.a_lo) * self.width() + (b - self.b_lo)) as usize]
    }

    /// Range of `b` for which `(b + d, b)` lies in the box.
    fn diag_span(&self, d: i64) -> (i64, i64) {
        (self.b_lo.max(self.a_lo - d), self.b_hi.min(self.a_hi - d))
    }

    /// Evaluation rule; meaningful once the shape checks have passed.
    pub fn eval(&self, a: i64, b: i64) -> i64 {
        let d = a - b;
        if d.abs() >= self.band {
            return asymptote(self.chi, a, b);
        }
        if self.in_box(a, b) {
            return self.stored(a, b);
        }
        let k = self.period;
        let (lo, hi) = self.diag_span(d);
        let b2 =
            if b > hi { b - Integer::div_ceil(&(b - hi), &k) * k } else { b + Integer::div_ceil(&(lo - b), &k) * k };
        self.stored(b2 + d, b2)
    }

    /// Cells of the box widened by `expand`, restricted to `|a - b| <= reach`.
    fn region(&self, expand: i64, reach: i64) -> impl Iterator<Item = (i64, i64)> + '_ {
        let (b_lo, b_hi) = (self.b_lo - expand, self.b_hi + expand);
        (self.a_lo - expand..=self.a_hi + expand)
            .flat_map(move |a| (b_lo.max(a - reach)..=b_hi.min(a + reach)).map(move |b| (a, b)))
    }

    /// Checks the axioms and seam periodicity on the box and a guard frame.
    pub fn validate(&self) -> Result<(), Vec<SfViolation>> {
        let mut out = Vec::new();
        let cells = (self.a_hi - self.a_lo + 1) * (self.b_hi - self.b_lo + 1);
        if self.period < 1
            || self.band < 0
            || self.a_lo > self.a_hi
            || self.b_lo > self.b_hi
            || self.values.len() as i64 != cells
        {
            return Err(alloc::vec![SfViolation::Shape]);
        }
        for a in self.a_lo..=self.a_hi {
            for b in self.b_lo..=self.b_hi {
                let v = self.stored(a, b);
                if v < 0 {
                    out.push(SfViolation::Negative { a, b });
                } else if (a - b).abs() >= self.band && v != asymptote(self.chi, a, b) {
                    out.push(SfViolation::Band { a, b });
                }
            }
        }
        let k = self.period;
        for d in 1 - self.band..self.band {
            let (lo, hi) = self.diag_span(d);
            if hi - lo + 1 < 2 * k {
                out.push(SfViolation::NarrowBox { diagonal: d });
            }
        }
        if !out.is_empty() {
            return Err(out);
        }
        for d in 1 - self.band..self.band {
            let (lo, hi) = self.diag_span(d);
            for b in hi - k + 1..=hi {
                if self.stored(b + d, b) != self.stored(b + d - k, b - k) {
                    out.push(SfViolation::Seam { a: b + d, b });
                }
            }
            for b in lo..lo + k {
                if self.stored(b + d, b) != self.stored(b + d + k, b + k) {
                    out.push(SfViolation::Seam { a: b + d, b });
                }
            }
        }
        if !out.is_empty() {
            return Err(out);
        }
        for (a, b) in self.region(2 * k + 2, self.band + 2) {
            let v = self.eval(a, b);
            let da = self.eval(a + 1, b) - v;
            let db = v - self.eval(a, b + 1);
            if !(0..=1).contains(&da) {
                out.push(SfViolation::StepA { a, b });
            }
            if !(0..=1).contains(&db) {
                out.push(SfViolation::StepB { a, b });
            }
            if v < asymptote(self.chi, a, b) {
                out.push(SfViolation::BelowAsymptote { a, b });
            }
        }
        if out.is_empty() {
            Ok(())
        } else {
            Err(out)
        }
    }
}

/// A cell of the essential set together with its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EssPoint {
    pub a: i64,
    pub b: i64,
    pub value: i64,
}

/// Essential points in the box plus one diagonal period around it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EssSet {
    pub points: Vec<EssPoint>,
    /// The set repeats along the diagonal outside the box.
    pub periodic: bool,
}

/// A cell where `lhs <= rhs` fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Witness {
    pub a: i64,
    pub b: i64,
    pub lhs: i64,
    pub rhs: i64,
}

/// Outcome of a pointwise comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Comparison {
    Holds,
    Fails(Witness),
}

impl Comparison {
    pub fn holds(&self) -> bool {
        matches!(self, Comparison::Holds)
    }

    pub fn witness(&self) -> Option<Witness> {
        match self {
            Comparison::Holds => None,
            Comparison::Fails(w) => Some(*w),
        }
    }
}

#[derive(Clone, Copy)]
enum Op {
    Star,
    Tll,
}

/// A validated slipface.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Slipface {
    grid: Grid,
}

impl Slipface {
    pub fn from_grid(grid: Grid) -> Result<Slipface, Error> {
        grid.validate().map_err(Error::NotASlipface)?;
        Ok(Slipface { grid })
    }

    /// The slipface whose every value is the asymptote.
    pub fn asymptotic(chi: i64) -> Slipface {
        Slipface {
            grid: Grid {
                chi,
                period: 1,
                band: 0,
                a_lo: 0,
                a_hi: 0,
                b_lo: 0,
                b_hi: 0,
                values: alloc::vec![asymptote(chi, 0, 0)],
            },
        }
    }

    /// The counting function of a permutation.
    pub fn from_perm(p: &Permutation) -> Slipface {
        let band = p.diff_bound() + 1;
        let pad = 2 * band + p.period();
        let (lo, hi) = (p.lo() - pad, p.hi() + pad);
        let width = (hi - lo + 1) as usize;
        let images: Vec<i64> = (lo..=hi).map(|b| p.apply(b)).collect();
        let mut values = alloc::vec![0; width * width];
        for (row, a) in (lo..=hi).enumerate() {
            let cells = &mut values[row * width..(row + 1) * width];
            let mut v = p.eval_s(a, hi);
            cells[width - 1] = v;
            for j in (0..width - 1).rev() {
                v += i64::from(images[j] < a);
                cells[j] = v;
            }
        }
        Slipface {
            grid: Grid { chi: p.chi(), period: p.period(), band, a_lo: lo, a_hi: hi, b_lo: lo, b_hi: hi, values },
        }
    }

    /// Imports a rank grid whose band is the bound beyond which the table
    /// must equal the asymptote.
    pub fn from_rank_grid(grid: Grid) -> Result<Slipface, Error> {
        let m = grid.band;
        if grid.period >= 1 && grid.values.len() as i64 == (grid.a_hi - grid.a_lo + 1) * grid.width() {
            for a in grid.a_lo..=grid.a_hi {
                for b in grid.b_lo..=grid.b_hi {
                    let expected = if a - b <= -m {
                        0
                    } else if a - b >= m {
                        grid.chi + a - b
                    } else {
                        continue;
                    };
                    let found = grid.stored(a, b);
                    if found != expected {
                        return Err(Error::AsymptoteMismatch { a, b, found, expected });
                    }
                }
            }
        }
        Slipface::from_grid(grid)
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn chi(&self) -> i64 {
        self.grid.chi
    }

    pub fn period(&self) -> i64 {
        self.grid.period
    }

    pub fn band(&self) -> i64 {
        self.grid.band
    }

    #[inline]
    pub fn eval(&self, a: i64, b: i64) -> i64 {
        self.grid.eval(a, b)
    }

    /// `s(a+1,b) - s(a,b) - s(a+1,b+1) + s(a,b+1)`.
    pub fn delta(&self, a: i64, b: i64) -> i64 {
        self.eval(a + 1, b) - self.eval(a, b) - self.eval(a + 1, b + 1) + self.eval(a, b + 1)
    }

    /// The dual slipface `s^v(b, a) = s(a, b) - chi - a + b`.
    pub fn dual(&self) -> Slipface {
        let g = &self.grid;
        let chi = g.chi;
        let grid = Grid::tabulate(-chi, g.period, g.band, (g.b_lo, g.b_hi), (g.a_lo, g.a_hi), |x, y| {
            g.stored(y, x) - chi - y + x
        });
        Slipface { grid }
    }

    /// First cell with a negative second difference, if any.
    pub fn submodularity_violation(&self) -> Option<(i64, i64, i64)> {
        let g = &self.grid;
        g.region(2 * g.period + 2, g.band + 2).find_map(|(a, b)| {
            let d = self.delta(a, b);
            (d < 0).then_some((a, b, d))
        })
    }

    pub fn is_submodular(&self) -> bool {
        self.submodularity_violation().is_none()
    }

    /// Recovers the permutation of a submodular slipface from its second
    /// differences.
    pub fn to_perm(&self) -> Result<Permutation, Error> {
        self.to_perm_with(&Limits::default())
    }

    pub fn to_perm_with(&self, limits: &Limits) -> Result<Permutation, Error> {
        if let Some((a, b, value)) = self.submodularity_violation() {
            return Err(Error::NotSubmodular { a, b, value });
        }
        let g = &self.grid;
        let reach = g.band + g.chi.abs() + 1;
        let guard = reach + 2 * g.period + 1;
        let (lo, hi) = (g.b_lo - guard, g.b_hi + guard);
        limits.check(hi - lo + 1)?;
        let mut vals = Vec::with_capacity((hi - lo + 1) as usize);
        for b in lo..=hi {
            let mut hit = None;
            for a in b - reach..=b + reach {
                match self.delta(a, b) {
                    0 => {}
                    1 if hit.is_none() => hit = Some(a),
                    _ => return Err(Error::InconsistentSlipface { b }),
                }
            }
            vals.push(hit.ok_or(Error::InconsistentSlipface { b })?);
        }
        let p = Permutation::from_raw(RawPerm::new(g.period, lo, vals))
            .map_err(|_| Error::InconsistentSlipface { b: lo })?;
        let back = Slipface::from_perm(&p);
        if back.chi() != g.chi {
            return Err(Error::InconsistentSlipface { b: lo });
        }
        let reach = g.band.max(back.band()) + 1;
        if let Some((_, b)) = g.region(2 * g.period + 2, reach).find(|&(a, b)| back.eval(a, b) != self.eval(a, b)) {
            return Err(Error::InconsistentSlipface { b });
        }
        Ok(p)
    }

    fn is_essential(&self, a: i64, b: i64) -> Option<i64> {
        let v = self.eval(a, b);
        let ok =
            self.eval(a - 1, b) < v && self.eval(a + 1, b) == v && self.eval(a, b + 1) < v && self.eval(a, b - 1) == v;
        ok.then_some(v)
    }

    /// Essential points in the box and one diagonal period around it.
    pub fn ess_set(&self) -> EssSet {
        let g = &self.grid;
        let mut points = Vec::new();
        let mut periodic = false;
        for (a, b) in g.region(g.period, g.band + 1) {
            if let Some(value) = self.is_essential(a, b) {
                periodic |= !g.in_box(a, b);
                points.push(EssPoint { a, b, value });
            }
        }
        EssSet { points, periodic }
    }

    fn union_box(&self, t: &Slipface, expand: i64) -> Grid {
        let (s, t) = (&self.grid, &t.grid);
        Grid {
            chi: 0,
            period: 1,
            band: 0,
            a_lo: s.a_lo.min(t.a_lo) - expand,
            a_hi: s.a_hi.max(t.a_hi) + expand,
            b_lo: s.b_lo.min(t.b_lo) - expand,
            b_hi: s.b_hi.max(t.b_hi) + expand,
            values: Vec::new(),
        }
    }

    fn first_violation<I: Iterator<Item = (i64, i64)>>(&self, t: &Slipface, cells: I) -> Comparison {
        for (a, b) in cells {
            let (lhs, rhs) = (self.eval(a, b), t.eval(a, b));
            if lhs > rhs {
                return Comparison::Fails(Witness { a, b, lhs, rhs });
            }
        }
        Comparison::Holds
    }

    /// Pointwise comparison using only the essential points of `self`;
    /// requires `chi(self) <= chi(t)`.
    pub fn leq_ess(&self, t: &Slipface) -> Result<Comparison, Error> {
        if self.chi() > t.chi() {
            return Err(Error::ShiftPrecondition { chi_s: self.chi(), chi_t: t.chi() });
        }
        let k = self.period().lcm(&t.period());
        let frame = self.union_box(t, k);
        let cells = frame.region(0, self.band() + 1).filter(|&(a, b)| self.is_essential(a, b).is_some());
        Ok(self.first_violation(t, cells))
    }

    /// Pointwise comparison over the certified box plus the asymptotes.
    pub fn leq_grid(&self, t: &Slipface) -> Comparison {
        let k = self.period().lcm(&t.period());
        let reach = self.band().max(t.band()) + 1;
        let frame = self.union_box(t, k);
        let found = self.first_violation(t, frame.region(0, reach));
        if found.holds() && self.chi() > t.chi() {
            let a = reach + self.chi().abs() + 1;
            return Comparison::Fails(Witness { a, b: 0, lhs: self.eval(a, 0), rhs: t.eval(a, 0) });
        }
        found
    }

    /// Pointwise comparison `self <= t`.
    pub fn leq(&self, t: &Slipface) -> Comparison {
        match self.leq_ess(t) {
            Ok(c) => c,
            Err(_) => self.leq_grid(t),
        }
    }

    /// Column profile breakpoints of `self` at `b`: the `l` with
    /// `s(l-1,b) = s(l,b) < s(l+1,b)`.
    fn search_set(&self, b: i64) -> Vec<i64> {
        let r = self.band() + self.chi().abs() + 2;
        let col: Vec<i64> = (b - r - 1..=b + r + 1).map(|l| self.eval(l, b)).collect();
        (1..col.len() - 1)
            .filter(|&i| col[i - 1] == col[i] && col[i] < col[i + 1])
            .map(|i| b - r - 1 + i as i64)
            .collect()
    }

    fn op_value(&self, t: &Slipface, op: Op, a: i64, b: i64, set: &[i64]) -> i64 {
        match op {
            Op::Star => set.iter().map(|&l| self.eval(a, l) + t.eval(l, b)).min(),
            Op::Tll => set.iter().map(|&l| self.eval(a, l) - (t.eval(l, b) - t.chi() - l + b)).max(),
        }
        .expect("search set is never empty")
    }

    fn combine(&self, t: &Slipface, op: Op, limits: &Limits) -> Result<Slipface, Error> {
        let k = self.period().lcm(&t.period());
        let band = self.band() + t.band();
        let chi = self.chi() + t.chi();
        let base = self.union_box(t, 0);
        let pad0 = k + band + self.chi().abs() + t.chi().abs();
        for attempt in 0..4 {
            let pad = pad0 << attempt;
            let (a_lo, a_hi) = (base.a_lo - pad, base.a_hi + pad);
            let (b_lo, b_hi) = (base.b_lo - pad, base.b_hi + pad);
            limits.check((a_hi - a_lo + 1).max(b_hi - b_lo + 1))?;
            let sets: Vec<Vec<i64>> = (b_lo..=b_hi).map(|b| t.search_set(b)).collect();
            let grid = Grid::tabulate(chi, k, band, (a_lo, a_hi), (b_lo, b_hi), |a, b| {
                if (a - b).abs() >= band {
                    asymptote(chi, a, b)
                } else {
                    self.op_value(t, op, a, b, &sets[(b - b_lo) as usize])
                }
            });
            if grid.validate().is_err() {
                continue;
            }
            let frame_ok = grid.region(k + 1, band + 1).all(|(a, b)| {
                if grid.in_box(a, b) && (a - b).abs() < band {
                    return true;
                }
                grid.eval(a, b) == self.op_value(t, op, a, b, &t.search_set(b))
            });
            if frame_ok {
                return Ok(Slipface { grid });
            }
        }
        Err(Error::ClosureVerification)
    }

    /// `(s * t)(a,b) = min_l s(a,l) + t(l,b)`.
    pub fn star(&self, t: &Slipface) -> Result<Slipface, Error> {
        self.combine(t, Op::Star, &Limits::default())
    }

    pub fn star_with(&self, t: &Slipface, limits: &Limits) -> Result<Slipface, Error> {
        self.combine(t, Op::Star, limits)
    }

    /// `(s <| t)(a,b) = max_l s(a,l) - t^v(b,l)`.
    pub fn tll(&self, t: &Slipface) -> Result<Slipface, Error> {
        self.combine(t, Op::Tll, &Limits::default())
    }

    pub fn tll_with(&self, t: &Slipface, limits: &Limits) -> Result<Slipface, Error> {
        self.combine(t, Op::Tll, limits)
    }

    /// `(s |> t)(a,b) = max_l t(l,b) - s^v(l,a)`, computed as `(t^v <| s^v)^v`.
    pub fn tlr(&self, t: &Slipface) -> Result<Slipface, Error> {
        self.tlr_with(t, &Limits::default())
    }

    pub fn tlr_with(&self, t: &Slipface, limits: &Limits) -> Result<Slipface, Error> {
        Ok(t.dual().tll_with(&self.dual(), limits)?.dual())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::GeneratorSet;
    use proptest::prelude::*;

    fn one_line(v: &[i64]) -> Permutation {
        Permutation::from_one_line(v, 1).unwrap()
    }

    fn sf(p: &Permutation) -> Slipface {
        Slipface::from_perm(p)
    }

    fn sigma(n: i64) -> Permutation {
        Permutation::sigma(&GeneratorSet::finite([n]).unwrap())
    }

    fn agree_on(s: &Slipface, t: &Slipface, r: i64) -> bool {
        (-r..=r).all(|a| (-r..=r).all(|b| s.eval(a, b) == t.eval(a, b)))
    }

    #[test]
    fn from_perm_matches_counting() {
        let nine = one_line(&[5, 6, 2, 8, 3, 9, 7, 4, 1]);
        let s = sf(&nine);
        assert_eq!(s.eval(4, 5), 2);
        assert!(s.grid().validate().is_ok());
        let s0 = sf(&Permutation::affine(&[1, 0]).unwrap());
        assert_eq!(s0.period(), 2);
        assert_eq!(s0.eval(1, 1), 1);
        let g = sf(&Permutation::gamma(3, 5).unwrap());
        assert_eq!(g.eval(1, 0), 5);
        assert_eq!(g.eval(10, 0), 11);
        assert_eq!(Slipface::asymptotic(0).eval(10, 0), 10);
        for p in [nine, Permutation::affine(&[1, 0]).unwrap(), Permutation::affine(&[2, -3, 4]).unwrap()] {
            let s = sf(&p);
            for a in -30..30 {
                for b in -30..30 {
                    assert_eq!(s.eval(a, b), p.eval_s(a, b), "{p:?} at ({a},{b})");
                }
            }
        }
    }

    #[test]
    fn dual_examples() {
        let nine = one_line(&[5, 6, 2, 8, 3, 9, 7, 4, 1]);
        assert!(agree_on(&sf(&nine).dual(), &sf(&nine.inverse()), 25));
        assert!(agree_on(&sf(&Permutation::shift(1)).dual(), &sf(&Permutation::shift(-1)), 10));
        let s0 = sf(&Permutation::affine(&[1, 0]).unwrap());
        assert!(agree_on(&s0.dual(), &s0, 12));
        assert_eq!(s0.dual().dual(), s0);
    }

    #[test]
    fn validation_examples() {
        assert!(sf(&Permutation::identity()).grid().validate().is_ok());
        let mut step = sf(&Permutation::identity()).grid().clone();
        let w = step.width();
        let i = ((0 - step.a_lo) * w + (0 - step.b_lo)) as usize;
        step.values[i] += 2;
        let errs = step.validate().unwrap_err();
        assert!(errs.iter().any(|e| matches!(e, SfViolation::StepA { .. } | SfViolation::StepB { .. })));
        let mut low = sf(&sigma(1)).grid().clone();
        let (a, b) = (3, 2);
        let i = ((a - low.a_lo) * low.width() + (b - low.b_lo)) as usize;
        assert_eq!(low.values[i], 1);
        low.values[i] = 0;
        let errs = low.validate().unwrap_err();
        assert!(errs.contains(&SfViolation::BelowAsymptote { a, b }));
    }

    fn max_grid() -> Grid {
        let (s1, s2) = (sf(&sigma(1)), sf(&sigma(2)));
        let g = s1.grid();
        Grid::tabulate(0, 1, g.band + 1, (g.a_lo, g.a_hi), (g.b_lo, g.b_hi), |a, b| s1.eval(a, b).max(s2.eval(a, b)))
    }

    #[test]
    fn submodularity_examples() {
        assert!(sf(&one_line(&[3, 1, 2])).is_submodular());
        assert!(sf(&Permutation::shift(-3)).is_submodular());
        let m = Slipface::from_grid(max_grid()).unwrap();
        let (a, b, d) = m.submodularity_violation().unwrap();
        assert_eq!(d, -1);
        assert_eq!(m.delta(a, b), -1);
        assert!(matches!(m.to_perm(), Err(Error::NotSubmodular { .. })));
    }

    #[test]
    fn reconstruction() {
        let nine = one_line(&[5, 6, 2, 8, 3, 9, 7, 4, 1]);
        assert_eq!(sf(&nine).to_perm().unwrap(), nine);
        for chi in -3..=3 {
            assert_eq!(Slipface::asymptotic(chi).to_perm().unwrap(), Permutation::shift(chi));
        }
        let g = Permutation::gamma(3, 5).unwrap();
        let grid = sf(&g).grid().clone();
        let imported = Slipface::from_rank_grid(grid).unwrap();
        assert_eq!(imported.to_perm().unwrap(), g);
    }

    #[test]
    fn rank_grid_errors() {
        let ramp = Grid::tabulate(2, 1, 3, (-6, 6), (-6, 6), |a, b| asymptote(2, a, b));
        assert_eq!(Slipface::from_rank_grid(ramp).unwrap().to_perm().unwrap(), Permutation::shift(2));
        let mut bump = sf(&sigma(1)).grid().clone();
        let i = ((2 - bump.a_lo) * bump.width() + (2 - bump.b_lo)) as usize;
        bump.values[i] += 2;
        assert!(matches!(Slipface::from_rank_grid(bump), Err(Error::NotASlipface(_))));
        let mut far = sf(&Permutation::identity()).grid().clone();
        let corner = far.width() as usize - 1;
        far.values[corner] = 5;
        assert!(matches!(Slipface::from_rank_grid(far), Err(Error::AsymptoteMismatch { .. })));
    }

    #[test]
    fn essential_sets() {
        for (m, n) in [(1, 1), (3, 5), (2, 4)] {
            let e = sf(&Permutation::gamma(m, n).unwrap()).ess_set();
            assert_eq!(e.points, [EssPoint { a: 1, b: 0, value: n }]);
            assert!(!e.periodic);
        }
        let w0 = sf(&one_line(&[3, 2, 1])).ess_set();
        assert_eq!(w0.points, [EssPoint { a: 2, b: 3, value: 1 }, EssPoint { a: 3, b: 2, value: 2 }]);
        assert!(sf(&Permutation::shift(4)).ess_set().points.is_empty());
        let s0 = sf(&Permutation::affine(&[1, 0]).unwrap()).ess_set();
        assert!(s0.periodic);
    }

    #[test]
    fn comparisons() {
        let (i0, i1, im1) = (sf(&Permutation::shift(0)), sf(&Permutation::shift(1)), sf(&Permutation::shift(-1)));
        assert!(i0.leq(&i1).holds());
        assert!(!i0.leq(&im1).holds());
        assert!(im1.leq(&i0).holds());
        assert!(matches!(i0.leq_ess(&im1), Err(Error::ShiftPrecondition { .. })));
        let w = i0.leq_grid(&im1).witness().unwrap();
        assert!(w.lhs > w.rhs);
        assert_eq!(i0.eval(w.a, w.b), w.lhs);
        assert!(sf(&sigma(1)).leq(&sf(&one_line(&[3, 2, 1]))).holds());
        assert!(!sf(&one_line(&[3, 2, 1])).leq(&sf(&sigma(1))).holds());
    }

    #[test]
    fn star_examples() {
        let (s1, s2) = (sf(&sigma(1)), sf(&sigma(2)));
        let p = s1.star(&s2).unwrap();
        assert!(agree_on(&p, &sf(&one_line(&[2, 3, 1])), 12));
        let sq = s1.star(&s1).unwrap();
        assert!(agree_on(&sq, &s1, 12));
        let s0 = sf(&Permutation::affine(&[1, 0]).unwrap());
        assert!(agree_on(&s0.star(&s0).unwrap(), &s0, 14));
        let nine = sf(&one_line(&[5, 6, 2, 8, 3, 9, 7, 4, 1]));
        for n in [-2, 0, 3] {
            let shifted = nine.star(&sf(&Permutation::shift(n))).unwrap();
            let tl = nine.tll(&sf(&Permutation::shift(n))).unwrap();
            for a in -15..15 {
                for b in -15..15 {
                    assert_eq!(shifted.eval(a, b), nine.eval(a, b - n));
                    assert_eq!(tl.eval(a, b), nine.eval(a, b - n));
                }
            }
        }
    }

    #[test]
    fn resource_cap() {
        let s = sf(&one_line(&[3, 2, 1]));
        let tight = Limits { max_window: 4 };
        assert!(s.star_with(&s, &tight).unwrap_err().is_resource());
    }

    fn brute_star(s: &Slipface, t: &Slipface, a: i64, b: i64) -> i64 {
        (-60..60).map(|l| s.eval(a, l) + t.eval(l, b)).min().unwrap()
    }

    fn brute_tll(s: &Slipface, t: &Slipface, a: i64, b: i64) -> i64 {
        let td = t.dual();
        (-60..60).map(|l| s.eval(a, l) - td.eval(b, l)).max().unwrap()
    }

    fn brute_tlr(s: &Slipface, t: &Slipface, a: i64, b: i64) -> i64 {
        let sd = s.dual();
        (-60..60).map(|l| t.eval(l, b) - sd.eval(l, a)).max().unwrap()
    }

    fn arb_sf() -> impl Strategy<Value = Slipface> {
        crate::perm::tests::arb_perm().prop_map(|p| Slipface::from_perm(&p))
    }

    /// Pointwise max of two permutation slipfaces of equal shift: a valid,
    /// usually non-submodular slipface.
    fn arb_general_sf() -> impl Strategy<Value = Slipface> {
        (crate::perm::tests::arb_perm(), crate::perm::tests::arb_perm()).prop_map(|(p, q)| {
            let q = q.compose(&Permutation::shift(p.chi() - q.chi())).unwrap();
            let (s, t) = (Slipface::from_perm(&p), Slipface::from_perm(&q));
            let k = p.period().lcm(&q.period());
            let band = s.band().max(t.band());
            let lo = p.lo().min(q.lo()) - 2 * band - 2 * k;
            let hi = p.hi().max(q.hi()) + 2 * band + 2 * k;
            let g = Grid::tabulate(p.chi(), k, band, (lo, hi), (lo, hi), |a, b| s.eval(a, b).max(t.eval(a, b)));
            Slipface::from_grid(g).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn operations_match_brute_force(s in arb_general_sf(), t in arb_general_sf()) {
            let st = s.star(&t).unwrap();
            let sl = s.tll(&t).unwrap();
            let sr = s.tlr(&t).unwrap();
            prop_assert_eq!(st.chi(), s.chi() + t.chi());
            prop_assert_eq!(sl.chi(), s.chi() + t.chi());
            prop_assert_eq!(sr.chi(), s.chi() + t.chi());
            for a in -12..12 {
                for b in -12..12 {
                    prop_assert_eq!(st.eval(a, b), brute_star(&s, &t, a, b));
                    prop_assert_eq!(sl.eval(a, b), brute_tll(&s, &t, a, b));
                    prop_assert_eq!(sr.eval(a, b), brute_tlr(&s, &t, a, b));
                }
            }
        }

        #[test]
        fn dual_identities(s in arb_general_sf(), t in arb_general_sf()) {
            let lhs = s.star(&t).unwrap().dual();
            let rhs = t.dual().star(&s.dual()).unwrap();
            prop_assert!(agree_on(&lhs, &rhs, 14));
            let lhs = s.tll(&t).unwrap().dual();
            let rhs = t.dual().tlr(&s.dual()).unwrap();
            prop_assert!(agree_on(&lhs, &rhs, 14));
            prop_assert_eq!(s.dual().dual(), s);
        }

        #[test]
        fn adjunction(s in arb_general_sf(), t in arb_general_sf(), u in arb_general_sf()) {
            let fix = Permutation::shift(s.chi() + t.chi() - u.chi());
            let u = u.star(&sf(&fix)).unwrap();
            let star_ge = u.leq(&s.star(&t).unwrap()).holds();
            let left = u.tll(&t.dual()).unwrap().leq(&s).holds();
            let right = s.dual().tlr(&u).unwrap().leq(&t).holds();
            prop_assert_eq!(star_ge, left);
            prop_assert_eq!(star_ge, right);
        }

        #[test]
        fn associativity(s in arb_sf(), t in arb_sf(), u in arb_sf()) {
            let st_u = s.star(&t).unwrap().star(&u).unwrap();
            let s_tu = s.star(&t.star(&u).unwrap()).unwrap();
            prop_assert!(agree_on(&st_u, &s_tu, 14));
            let l = s.tll(&t).unwrap().tll(&u).unwrap();
            let r = s.tll(&t.star(&u).unwrap()).unwrap();
            prop_assert!(agree_on(&l, &r, 14));
            let l = s.tlr(&t.tlr(&u).unwrap()).unwrap();
            let r = s.star(&t).unwrap().tlr(&u).unwrap();
            prop_assert!(agree_on(&l, &r, 14));
        }

        #[test]
        fn monotonicity(s in arb_general_sf(), t in arb_general_sf()) {
            let big = s.star(&sf(&Permutation::shift(0))).unwrap();
            prop_assert!(agree_on(&big, &s, 12));
            if t.chi() >= 0 {
                prop_assert!(s.leq(&s.star(&t).unwrap()).holds());
                prop_assert!(s.tll(&t.dual()).unwrap().leq(&s).holds());
            }
        }

        #[test]
        fn generator_formulas(s in arb_general_sf(), n in -4i64..4, resid in any::<bool>()) {
            let set = if resid { GeneratorSet::residue(n, 2).unwrap() } else { GeneratorSet::finite([n, n + 3]).unwrap() };
            let g = sf(&Permutation::sigma(&set));
            let st = s.star(&g).unwrap();
            let sl = s.tll(&g).unwrap();
            for a in -10..10 {
                for b in -10..10 {
                    let (l, m, r) = (s.eval(a, b - 1), s.eval(a, b), s.eval(a, b + 1));
                    let on = set.contains(b - 1);
                    prop_assert_eq!(st.eval(a, b), m + i64::from(on && l > m && m == r));
                    prop_assert_eq!(sl.eval(a, b), m - i64::from(on && l == m && m > r));
                }
            }
        }

        #[test]
        fn submodular_closure_and_balance(s in arb_sf(), t in arb_sf()) {
            for r in [s.star(&t).unwrap(), s.tll(&t).unwrap(), s.tlr(&t).unwrap()] {
                prop_assert!(r.is_submodular());
                for x in -8..8 {
                    let reach = r.band() + r.chi().abs() + 2;
                    let row: i64 = (x - reach..=x + reach).map(|b| r.delta(x, b)).sum();
                    let col: i64 = (x - reach..=x + reach).map(|a| r.delta(a, x)).sum();
                    prop_assert_eq!(row, 1);
                    prop_assert_eq!(col, 1);
                }
            }
        }

        #[test]
        fn ess_and_grid_comparators_agree(s in arb_general_sf(), t in arb_general_sf()) {
            let g = s.leq_grid(&t);
            match s.leq_ess(&t) {
                Ok(c) => prop_assert_eq!(c.holds(), g.holds()),
                Err(_) => prop_assert!(!g.holds()),
            }
        }
    }
}
