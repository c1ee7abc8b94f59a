//! Brute-force reference implementations. Nothing here calls the slipface
//! engine or the product routines; the only shared code is permutation
//! construction and pointwise evaluation.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::perm::{Limits, Permutation};

/// Largest `d` accepted by the enumeration oracles.
pub const MAX_ENUM_DEGREE: usize = 6;

fn count_range(p: &Permutation, a: i64, from: i64, to: i64) -> i64 {
    (from..to).filter(|&n| p.apply(n) < a).count() as i64
}

/// `#{n >= b : p(n) < a}` by scanning `n` in `[b, b + radius)`.
///
/// The radius must cover the window, both arguments and the displacement
/// bound times the period; the count is also recomputed at twice the radius
/// and must not change.
pub fn oracle_eval_s(p: &Permutation, a: i64, b: i64, radius: i64) -> Result<i64, Error> {
    let need = (p.hi() - p.lo() + 1) + a.abs() + b.abs() + p.diff_bound() * p.period();
    if radius < need {
        return Err(Error::InsufficientRadius);
    }
    let near = count_range(p, a, b, b + radius);
    if count_range(p, a, b + radius, b + 2 * radius) != 0 {
        return Err(Error::InsufficientRadius);
    }
    Ok(near)
}

/// One-line notation on `[1, d]` of a permutation fixing everything else.
pub fn sd_line(p: &Permutation, d: usize) -> Result<Vec<i64>, Error> {
    let top = d as i64;
    let outside_lo = p.lo().min(1) - 1;
    let outside_hi = p.hi().max(top) + 1;
    let fixed = (outside_lo..1).chain(top + 1..=outside_hi).all(|n| p.apply(n) == n);
    let line: Vec<i64> = (1..=top).map(|n| p.apply(n)).collect();
    if !fixed || line.iter().any(|&v| v < 1 || v > top) {
        return Err(Error::NotInSd(d));
    }
    Ok(line)
}

fn from_line(line: &[i64]) -> Permutation {
    Permutation::from_one_line(line, 1).expect("enumerated lines are permutations")
}

/// Rank table `t[a-1][b-1] = #{n in [b, d] : p(n) < a}` for `a, b` in `[1, d+1]`.
fn table(line: &[i64]) -> Vec<Vec<i64>> {
    let d = line.len();
    let mut t = vec![vec![0; d + 1]; d + 1];
    for (ai, row) in t.iter_mut().enumerate() {
        let a = ai as i64 + 1;
        for (bi, cell) in row.iter_mut().enumerate() {
            *cell = line[bi..].iter().filter(|&&v| v < a).count() as i64;
        }
    }
    t
}

/// Reads a permutation of `[1, d]` back from its rank table through the
/// second finite difference.
fn untable(t: &[Vec<i64>]) -> Result<Vec<i64>, Error> {
    let d = t.len() - 1;
    let at = |a: usize, b: usize| if b > d { 0 } else { t[a][b] };
    let mut line = vec![0; d];
    for (b, slot) in line.iter_mut().enumerate() {
        let hits: Vec<usize> =
            (0..d).filter(|&a| at(a + 1, b) - at(a, b) - at(a + 1, b + 1) + at(a, b + 1) == 1).collect();
        if hits.len() != 1 {
            return Err(Error::InternalInconsistency("rank table does not encode a permutation"));
        }
        *slot = hits[0] as i64 + 1;
    }
    Ok(line)
}

/// Bruhat order on `S_d` as pointwise comparison of rank tables.
pub fn sd_bruhat_leq(x: &[i64], y: &[i64]) -> bool {
    let (tx, ty) = (table(x), table(y));
    tx.iter().flatten().zip(ty.iter().flatten()).all(|(u, v)| u <= v)
}

/// Min-plus product of the two rank tables, decoded back to a permutation.
pub fn oracle_star_sd(alpha: &Permutation, beta: &Permutation, d: usize) -> Result<Permutation, Error> {
    let (x, y) = (table(&sd_line(alpha, d)?), table(&sd_line(beta, d)?));
    let mut z = vec![vec![0; d + 1]; d + 1];
    for (a, row) in z.iter_mut().enumerate() {
        for (b, cell) in row.iter_mut().enumerate() {
            *cell = (0..=d).map(|l| x[a][l] + y[l][b]).min().unwrap();
        }
    }
    Ok(from_line(&untable(&z)?))
}

/// Folds `alpha := alpha sigma_n` over the word, applied only where
/// `alpha(n) < alpha(n+1)`.
pub fn oracle_star_word(alpha: &Permutation, word: &[i64]) -> Result<Permutation, Error> {
    let mut cur = alpha.clone();
    for &n in word {
        let (x, y) = (cur.apply(n), cur.apply(n + 1));
        if x < y {
            let k = cur.period();
            let prev = cur.clone();
            cur = Permutation::from_fn(k, prev.lo().min(n) - k, prev.hi().max(n + 1) + k, &Limits::default(), |m| {
                if m == n {
                    y
                } else if m == n + 1 {
                    x
                } else {
                    prev.apply(m)
                }
            })?;
        }
    }
    Ok(cur)
}

/// All of `S_d` in lexicographic order.
pub fn sd_enumerate(d: usize) -> Vec<Vec<i64>> {
    let mut cur: Vec<i64> = (1..=d as i64).collect();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

fn compose_lines(x: &[i64], y: &[i64]) -> Vec<i64> {
    y.iter().map(|&v| x[(v - 1) as usize]).collect()
}

fn invert_line(x: &[i64]) -> Vec<i64> {
    let mut out = vec![0; x.len()];
    for (i, &v) in x.iter().enumerate() {
        out[(v - 1) as usize] = i as i64 + 1;
    }
    out
}

fn check_degree(d: usize) -> Result<(), Error> {
    if d > MAX_ENUM_DEGREE {
        return Err(Error::ResourceLimit { needed: d, cap: MAX_ENUM_DEGREE });
    }
    Ok(())
}

/// Picks the element of `cands` lying above (`top`) or below every other.
fn extremum(mut cands: Vec<Vec<i64>>, top: bool) -> Result<Vec<i64>, Error> {
    cands.sort();
    cands.dedup();
    let ext: Vec<&Vec<i64>> = cands
        .iter()
        .filter(|c| cands.iter().all(|o| if top { sd_bruhat_leq(o, c) } else { sd_bruhat_leq(c, o) }))
        .collect();
    match ext.as_slice() {
        [one] => Ok((*one).clone()),
        _ if top => Err(Error::TheoremViolation("no Bruhat-maximum among products")),
        _ => Err(Error::TheoremViolation("no Bruhat-minimum among products")),
    }
}

/// Bruhat-maximum of `{x y : x <= alpha, y <= beta}` over `S_d`.
pub fn oracle_greedy_max(alpha: &Permutation, beta: &Permutation, d: usize) -> Result<Permutation, Error> {
    check_degree(d)?;
    let (a, b) = (sd_line(alpha, d)?, sd_line(beta, d)?);
    let all = sd_enumerate(d);
    let below_a: Vec<&Vec<i64>> = all.iter().filter(|x| sd_bruhat_leq(x, &a)).collect();
    let below_b: Vec<&Vec<i64>> = all.iter().filter(|y| sd_bruhat_leq(y, &b)).collect();
    let cands = below_a.iter().flat_map(|x| below_b.iter().map(move |y| compose_lines(x, y))).collect();
    Ok(from_line(&extremum(cands, true)?))
}

/// Bruhat-minimum of `{x y^-1 : x >= alpha, y <= beta}` over `S_d`.
pub fn oracle_stingy_min(alpha: &Permutation, beta: &Permutation, d: usize) -> Result<Permutation, Error> {
    check_degree(d)?;
    let (a, b) = (sd_line(alpha, d)?, sd_line(beta, d)?);
    let all = sd_enumerate(d);
    let above_a: Vec<&Vec<i64>> = all.iter().filter(|x| sd_bruhat_leq(&a, x)).collect();
    let below_b: Vec<Vec<i64>> = all.iter().filter(|y| sd_bruhat_leq(y, &b)).map(|y| invert_line(y)).collect();
    let cands = above_a.iter().flat_map(|x| below_b.iter().map(move |y| compose_lines(x, y))).collect();
    Ok(from_line(&extremum(cands, false)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::demazure::{star, tll};
    use crate::perm::tests::arb_perm;
    use crate::perm::GeneratorSet;
    use crate::slipface::Slipface;
    use proptest::prelude::*;

    fn sym(v: &[i64]) -> Permutation {
        Permutation::from_one_line(v, 1).unwrap()
    }

    fn sigma(n: i64) -> Permutation {
        Permutation::sigma(&GeneratorSet::finite([n]).unwrap())
    }

    #[test]
    fn eval_examples() {
        let nine = sym(&[5, 6, 2, 8, 3, 9, 7, 4, 1]);
        assert_eq!(oracle_eval_s(&nine, 4, 5, 64), Ok(2));
        assert_eq!(oracle_eval_s(&Permutation::shift(3), 0, 0, 64), Ok(3));
        let s0 = Permutation::sigma(&GeneratorSet::residue(0, 2).unwrap());
        assert_eq!(oracle_eval_s(&s0, 1, 0, 64), Ok(1));
        assert_eq!(oracle_eval_s(&nine, 4, 5, 8), Err(Error::InsufficientRadius));
    }

    #[test]
    fn sd_membership() {
        assert_eq!(sd_line(&sym(&[2, 1]), 3), Ok(vec![2, 1, 3]));
        assert_eq!(sd_line(&sym(&[3, 2, 1]), 2), Err(Error::NotInSd(2)));
        assert_eq!(sd_line(&Permutation::shift(1), 3), Err(Error::NotInSd(3)));
        assert_eq!(sd_enumerate(3).len(), 6);
        assert_eq!(sd_enumerate(4).len(), 24);
        assert_eq!(sd_enumerate(0), vec![Vec::<i64>::new()]);
    }

    #[test]
    fn star_sd_examples() {
        let w0 = sym(&[3, 2, 1]);
        assert_eq!(oracle_star_sd(&sigma(1), &sigma(2), 3).unwrap(), sym(&[2, 3, 1]));
        assert_eq!(oracle_star_sd(&w0, &w0, 3).unwrap(), w0);
        for b in sd_enumerate(3) {
            let beta = sym(&b);
            assert_eq!(oracle_star_sd(&Permutation::identity(), &beta, 3).unwrap(), beta);
        }
    }

    #[test]
    fn word_examples() {
        let id = Permutation::identity();
        assert_eq!(oracle_star_word(&id, &[1, 2, 1]).unwrap(), sym(&[3, 2, 1]));
        assert_eq!(oracle_star_word(&sym(&[3, 2, 1]), &[1]).unwrap(), sym(&[3, 2, 1]));
        assert_eq!(oracle_star_word(&sigma(2), &[1]).unwrap(), sym(&[3, 1, 2]));
    }

    #[test]
    fn extremum_examples() {
        let w0 = sym(&[3, 2, 1]);
        assert_eq!(oracle_greedy_max(&sigma(1), &sigma(1), 2).unwrap(), sigma(1));
        assert_eq!(oracle_greedy_max(&sigma(1), &sigma(2), 3).unwrap(), sym(&[2, 3, 1]));
        assert_eq!(oracle_stingy_min(&w0, &sigma(1), 3).unwrap(), sym(&[2, 3, 1]));
        assert!(oracle_greedy_max(&w0, &w0, 7).unwrap_err().is_resource());
    }

    #[test]
    fn exhaustive_s3_agreement() {
        let all = sd_enumerate(3);
        for x in &all {
            for y in &all {
                let (a, b) = (sym(x), sym(y));
                let e = star(&a, &b).unwrap();
                assert_eq!(oracle_star_sd(&a, &b, 3).unwrap(), e);
                assert_eq!(oracle_greedy_max(&a, &b, 3).unwrap(), e);
                assert_eq!(oracle_stingy_min(&a, &b.inverse(), 3).unwrap(), tll(&a, &b).unwrap());
                let folded = star(&star(&a, &sigma(2)).unwrap(), &sigma(1)).unwrap();
                assert_eq!(oracle_star_word(&a, &[2, 1]).unwrap(), folded);
                assert_eq!(sd_bruhat_leq(x, y), Slipface::from_perm(&a).leq(&Slipface::from_perm(&b)).holds());
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(96))]

        #[test]
        fn eval_matches_engine(p in arb_perm(), a in -8i64..8, b in -8i64..8) {
            prop_assert_eq!(oracle_eval_s(&p, a, b, 128).unwrap(), p.eval_s(a, b));
        }

        #[test]
        fn word_matches_products(p in arb_perm(), word in prop::collection::vec(-3i64..4, 0..5)) {
            let mut e = p.clone();
            for &n in &word {
                e = star(&e, &sigma(n)).unwrap();
            }
            prop_assert_eq!(oracle_star_word(&p, &word).unwrap(), e);
        }
    }
}
