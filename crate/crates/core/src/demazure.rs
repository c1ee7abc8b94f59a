//! Demazure products, their adjoints, reduced products and the reduction
//! factorizations on permutations.

use alloc::vec::Vec;

use num_integer::Integer;

use crate::error::Error;
use crate::order::{bruhat_leq, inversion_domain, leq_chi};
use crate::perm::{GeneratorSet, Limits, Permutation};
use crate::slipface::{Comparison, Slipface};

/// Greedy product `alpha * beta`.
pub fn star(alpha: &Permutation, beta: &Permutation) -> Result<Permutation, Error> {
    star_with(alpha, beta, &Limits::default())
}

pub fn star_with(alpha: &Permutation, beta: &Permutation, limits: &Limits) -> Result<Permutation, Error> {
    Slipface::from_perm(alpha).star_with(&Slipface::from_perm(beta), limits)?.to_perm_with(limits)
}

/// Stingy product `alpha <| beta`.
pub fn tll(alpha: &Permutation, beta: &Permutation) -> Result<Permutation, Error> {
    tll_with(alpha, beta, &Limits::default())
}

pub fn tll_with(alpha: &Permutation, beta: &Permutation, limits: &Limits) -> Result<Permutation, Error> {
    Slipface::from_perm(alpha).tll_with(&Slipface::from_perm(beta), limits)?.to_perm_with(limits)
}

/// Stingy product `alpha |> beta = (beta^-1 <| alpha^-1)^-1`.
pub fn tlr(alpha: &Permutation, beta: &Permutation) -> Result<Permutation, Error> {
    tlr_with(alpha, beta, &Limits::default())
}

pub fn tlr_with(alpha: &Permutation, beta: &Permutation, limits: &Limits) -> Result<Permutation, Error> {
    Ok(tll_with(&beta.inverse(), &alpha.inverse(), limits)?.inverse())
}

/// `alpha * sigma_S2` where `S2` keeps the members of `set` selected by
/// `keep(alpha(n), alpha(n+1))`.
fn sigma_product<F: Fn(i64, i64) -> bool>(
    alpha: &Permutation,
    set: &GeneratorSet,
    limits: &Limits,
    keep: F,
) -> Result<Permutation, Error> {
    let k = alpha.period().lcm(&set.period());
    let (lo, hi) = match set.span() {
        Some((first, last)) => (alpha.lo().min(first), alpha.hi().max(last + 1)),
        None => (alpha.lo(), alpha.hi()),
    };
    let chosen = |n: i64| set.contains(n) && keep(alpha.apply(n), alpha.apply(n + 1));
    Permutation::from_fn(k, lo - 2 * k - 2, hi + 2 * k + 2, limits, |m| {
        let src = if chosen(m) {
            m + 1
        } else if chosen(m - 1) {
            m - 1
        } else {
            m
        };
        alpha.apply(src)
    })
}

/// `alpha * sigma_S` by the generator rule: swap exactly where `alpha`
/// ascends.
pub fn star_sigma(alpha: &Permutation, set: &GeneratorSet) -> Result<Permutation, Error> {
    sigma_product(alpha, set, &Limits::default(), |x, y| x < y)
}

/// `alpha <| sigma_S`: swap exactly where `alpha` descends.
pub fn tll_sigma(alpha: &Permutation, set: &GeneratorSet) -> Result<Permutation, Error> {
    sigma_product(alpha, set, &Limits::default(), |x, y| x > y)
}

/// `Inv(alpha) ∩ Inv(beta^-1) = ∅`.
pub fn is_reduced_pair(alpha: &Permutation, beta: &Permutation) -> bool {
    let binv = beta.inverse();
    let m = alpha.diff_bound().min(binv.diff_bound());
    let (lo, hi) = inversion_domain(alpha, &binv, m);
    for u in lo..=hi {
        for v in u + 1..=u + 2 * m {
            if alpha.has_inversion(u, v) && binv.has_inversion(u, v) {
                return false;
            }
        }
    }
    true
}

/// `alpha1 = (alpha * beta) beta^-1`, certified to satisfy
/// `alpha1 <=_chi alpha` and to form a reduced pair with `beta`.
pub fn greedy_witness(alpha: &Permutation, beta: &Permutation) -> Result<Permutation, Error> {
    let alpha1 = star(alpha, beta)?.compose(&beta.inverse())?;
    if !leq_chi(&alpha1, alpha) {
        return Err(Error::InternalInconsistency("greedy witness is not below alpha"));
    }
    if !is_reduced_pair(&alpha1, beta) {
        return Err(Error::InternalInconsistency("greedy witness is not reduced against beta"));
    }
    Ok(alpha1)
}

/// `beta1 = (beta |> alpha^-1) alpha`, certified to satisfy
/// `beta1 <=_chi beta` and `alpha <| beta^-1 = alpha beta1^-1`.
pub fn stingy_witness(alpha: &Permutation, beta: &Permutation) -> Result<Permutation, Error> {
    let beta1 = tlr(beta, &alpha.inverse())?.compose(alpha)?;
    if !leq_chi(&beta1, beta) {
        return Err(Error::InternalInconsistency("stingy witness is not below beta"));
    }
    if tll(alpha, &beta.inverse())? != alpha.compose(&beta1.inverse())? {
        return Err(Error::InternalInconsistency("stingy witness does not realize alpha <| beta^-1"));
    }
    Ok(beta1)
}

/// Result of `reduce`: `alpha1 beta1 = gamma` as a reduced
/// product with each factor below the corresponding input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionWitness {
    pub alpha1: Permutation,
    pub beta1: Permutation,
    pub gamma: Permutation,
    pub alpha1_leq: bool,
    pub beta1_leq: bool,
    pub reduced: bool,
    pub product: bool,
}

impl ReductionWitness {
    pub fn certified(&self) -> bool {
        self.alpha1_leq && self.beta1_leq && self.reduced && self.product
    }
}

fn dominance(top: &Permutation, gamma: &Permutation) -> Result<(), Error> {
    if top.chi() != gamma.chi() {
        return Err(Error::ShiftMismatch { expected: top.chi(), found: gamma.chi() });
    }
    match bruhat_leq(gamma, top) {
        Comparison::Holds => Ok(()),
        Comparison::Fails(w) => Err(Error::NotDominated { a: w.a, b: w.b, lhs: w.rhs, rhs: w.lhs }),
    }
}

/// Splits `gamma <= alpha * beta` into a reduced product `alpha1 beta1`
/// with `alpha1 <=_chi alpha` and `beta1 <=_chi beta`.
pub fn reduce(alpha: &Permutation, beta: &Permutation, gamma: &Permutation) -> Result<ReductionWitness, Error> {
    dominance(&star(alpha, beta)?, gamma)?;
    let alpha1 = tll(gamma, &beta.inverse())?;
    let beta1 = tlr(&alpha1.inverse(), gamma)?;
    let witness = ReductionWitness {
        alpha1_leq: leq_chi(&alpha1, alpha),
        beta1_leq: leq_chi(&beta1, beta),
        reduced: is_reduced_pair(&alpha1, &beta1),
        product: alpha1.compose(&beta1)? == *gamma,
        alpha1,
        beta1,
        gamma: gamma.clone(),
    };
    if !witness.certified() {
        return Err(Error::InternalInconsistency("reduction witness failed certification"));
    }
    Ok(witness)
}

/// A tuple of factors with cached suffix products
/// `suffix[n] = factors[n+1] ... factors[last]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedTuple {
    factors: Vec<Permutation>,
    suffixes: Vec<Permutation>,
}

impl ReducedTuple {
    fn with_suffixes(factors: Vec<Permutation>) -> Result<Self, Error> {
        let mut suffixes = Vec::with_capacity(factors.len());
        let mut acc = Permutation::identity();
        for f in factors.iter().rev() {
            suffixes.push(acc.clone());
            acc = f.compose(&acc)?;
        }
        suffixes.reverse();
        Ok(ReducedTuple { factors, suffixes })
    }

    pub fn factors(&self) -> &[Permutation] {
        &self.factors
    }

    pub fn suffixes(&self) -> &[Permutation] {
        &self.suffixes
    }

    /// Each factor forms a reduced pair with the product of the factors
    /// after it.
    pub fn is_reduced(&self) -> bool {
        self.factors.iter().zip(&self.suffixes).all(|(f, p)| is_reduced_pair(f, p))
    }

    /// Ordinary product of all factors.
    pub fn product(&self) -> Result<Permutation, Error> {
        match self.factors.first() {
            Some(f) => f.compose(&self.suffixes[0]),
            None => Ok(Permutation::identity()),
        }
    }
}

pub fn is_reduced_tuple(factors: &[Permutation]) -> Result<bool, Error> {
    Ok(ReducedTuple::with_suffixes(factors.to_vec())?.is_reduced())
}

/// Replaces `factors` by a reduced tuple with product `gamma`, each entry
/// below the corresponding factor; peels from the left.
pub fn reduce_tuple(factors: &[Permutation], gamma: &Permutation) -> Result<ReducedTuple, Error> {
    let Some((first, rest)) = factors.split_first() else {
        return Err(Error::InternalInconsistency("empty factor list"));
    };
    let mut out = Vec::with_capacity(factors.len());
    if rest.is_empty() {
        dominance(first, gamma)?;
        out.push(gamma.clone());
    } else {
        let mut tail = rest[0].clone();
        for f in &rest[1..] {
            tail = star(&tail, f)?;
        }
        let w = reduce(first, &tail, gamma)?;
        out.push(w.alpha1);
        out.extend(reduce_tuple(rest, &w.beta1)?.factors);
    }
    let tuple = ReducedTuple::with_suffixes(out)?;
    if !tuple.is_reduced() || tuple.product()? != *gamma {
        return Err(Error::InternalInconsistency("reduced tuple failed certification"));
    }
    Ok(tuple)
}
