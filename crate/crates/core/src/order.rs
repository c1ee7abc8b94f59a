//! Bruhat order, the shift-graded order and the two weak orders.

use num_integer::Integer;

use crate::perm::Permutation;
use crate::slipface::{Comparison, Slipface};

/// `alpha <= beta` in Bruhat order, with a witness cell on failure.
pub fn bruhat_leq(alpha: &Permutation, beta: &Permutation) -> Comparison {
    Slipface::from_perm(alpha).leq(&Slipface::from_perm(beta))
}

/// The same comparison through the full grid instead of essential points.
pub fn bruhat_leq_grid(alpha: &Permutation, beta: &Permutation) -> Comparison {
    Slipface::from_perm(alpha).leq_grid(&Slipface::from_perm(beta))
}

/// Bruhat order restricted to equal shifts.
pub fn leq_chi(alpha: &Permutation, beta: &Permutation) -> bool {
    alpha.chi() == beta.chi() && bruhat_leq(alpha, beta).holds()
}

/// Range of `u` that meets every translation class of inversions of
/// either permutation, given the inversion reach `2 * m`.
pub(crate) fn inversion_domain(p: &Permutation, q: &Permutation, m: i64) -> (i64, i64) {
    let k = p.period().lcm(&q.period());
    (p.lo().min(q.lo()) - k - 2 * m, p.hi().max(q.hi()) + k)
}

/// An inversion of `alpha` that `beta` lacks, if any.
pub fn weak_left_witness(alpha: &Permutation, beta: &Permutation) -> Option<(i64, i64)> {
    let (lo, hi) = inversion_domain(alpha, beta, alpha.diff_bound());
    alpha.inversions_in(lo, hi).into_iter().find(|&(u, v)| !beta.has_inversion(u, v))
}

/// `Inv(alpha) ⊆ Inv(beta)`.
pub fn weak_left_leq(alpha: &Permutation, beta: &Permutation) -> bool {
    weak_left_witness(alpha, beta).is_none()
}

/// `alpha^-1 <=_L beta^-1`.
pub fn weak_right_leq(alpha: &Permutation, beta: &Permutation) -> bool {
    weak_left_leq(&alpha.inverse(), &beta.inverse())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::tests::arb_perm;
    use crate::perm::GeneratorSet;
    use proptest::prelude::*;

    fn one_line(v: &[i64]) -> Permutation {
        Permutation::from_one_line(v, 1).unwrap()
    }

    fn sigma(n: i64) -> Permutation {
        Permutation::sigma(&GeneratorSet::finite([n]).unwrap())
    }

    #[test]
    fn bruhat_examples() {
        let (i0, i1, im1) = (Permutation::shift(0), Permutation::shift(1), Permutation::shift(-1));
        assert!(bruhat_leq(&i0, &i1).holds());
        assert!(!bruhat_leq(&i0, &im1).holds());
        assert!(bruhat_leq(&im1, &i0).holds());
        let w = bruhat_leq(&i0, &im1).witness().unwrap();
        assert_eq!(w.lhs, i0.eval_s(w.a, w.b));
        assert_eq!(w.rhs, im1.eval_s(w.a, w.b));
        let w0 = one_line(&[3, 2, 1]);
        assert!(bruhat_leq(&sigma(1), &w0).holds());
        assert!(leq_chi(&sigma(1), &w0));
        assert!(!leq_chi(&i0, &i1));
        assert!(leq_chi(&w0, &w0));
    }

    #[test]
    fn weak_examples() {
        let w0 = one_line(&[3, 2, 1]);
        assert!(weak_left_leq(&sigma(1), &w0));
        assert!(!weak_left_leq(&w0, &sigma(1)));
        for m in -3..3 {
            for n in -3..3 {
                assert!(weak_left_leq(&Permutation::shift(m), &Permutation::shift(n)));
            }
        }
        let s0 = Permutation::affine(&[1, 0]).unwrap();
        let s1 = Permutation::sigma(&GeneratorSet::residue(1, 2).unwrap());
        assert!(!weak_left_leq(&s0, &s1));
        assert!(weak_left_leq(&s0, &s0.compose(&Permutation::shift(0)).unwrap()));
    }

    fn brute_left(p: &Permutation, q: &Permutation) -> bool {
        (-40..40).all(|u| (u + 1..u + 30).all(|v| !p.has_inversion(u, v) || q.has_inversion(u, v)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn weak_left_matches_band_scan(p in arb_perm(), q in arb_perm()) {
            prop_assert_eq!(weak_left_leq(&p, &q), brute_left(&p, &q));
        }

        #[test]
        fn comparators_agree(p in arb_perm(), q in arb_perm()) {
            prop_assert_eq!(bruhat_leq(&p, &q).holds(), bruhat_leq_grid(&p, &q).holds());
        }

        #[test]
        fn inverse_preserves_graded_order(p in arb_perm(), q in arb_perm()) {
            prop_assert_eq!(leq_chi(&p, &q), leq_chi(&p.inverse(), &q.inverse()));
        }

        #[test]
        fn weak_implies_strong(p in arb_perm(), q in arb_perm()) {
            if (weak_left_leq(&p, &q) || weak_right_leq(&p, &q)) && p.chi() <= q.chi() {
                prop_assert!(bruhat_leq(&p, &q).holds());
            }
        }

        #[test]
        fn shift_is_minimal(p in arb_perm(), c in -4i64..4) {
            if p.chi() >= c {
                prop_assert!(bruhat_leq(&Permutation::shift(c), &p).holds());
            }
        }
    }
}
