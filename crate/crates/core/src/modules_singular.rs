//! Rank-3 modules at a critical seed (`v21 == v22`).
//!
//! The generic formulas are evaluated symbolically along the line
//! `v21 = x + t`, `v22 = x - t`, which turns the derivative operator into
//! `f'(0) / 2`. The canonical basis is `T(z)` with `z21 >= z22` and `DT(z)`
//! with `z21 < z22`.

use crate::error::{Error, Result};
use crate::gt_action::{BasisElement, Generator, Kind, TableauVector};
use crate::scalars::{rf_derivative_at_zero, Poly, Rational, RationalFunction1V};
use crate::tableaux::{ShiftVector, Tableau};

/// One term `coeff(t) T(v + target)` of a symbolic generic action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicTerm {
    pub coeff: RationalFunction1V,
    pub target: ShiftVector,
}

/// Canonical representative and sign under `T(z) = T(tau z)` and `DT(z) = -DT(tau z)`.
pub fn canonicalize(kind: Kind, z: &ShiftVector) -> Result<(BasisElement, i8)> {
    let (m, n) = (z.get(2, 1), z.get(2, 2));
    match kind {
        Kind::Plain if m >= n => Ok((BasisElement::plain(z.clone()), 1)),
        Kind::Plain => Ok((BasisElement::plain(z.tau()), 1)),
        Kind::Derivative if m == n => Err(Error::ZeroElement),
        Kind::Derivative if m < n => Ok((BasisElement::derivative(z.clone()), 1)),
        Kind::Derivative => Ok((BasisElement::derivative(z.tau()), -1)),
    }
}

/// The lattice point a region predicate sees for a canonical element.
///
/// Regions are written in terms of `Tab(w)`, which is `T(w)` for
/// `w21 <= w22` and `DT(w)` for `w21 > w22`; both are `tau` of the canonical
/// shift, so this is a bijection between the canonical basis and `Z^3`.
pub fn region_point(b: &BasisElement) -> ShiftVector {
    b.z.tau()
}

/// Inverse of [`region_point`]: the canonical element and sign of `Tab(w)`.
pub fn tab_element(w: &ShiftVector) -> (BasisElement, i8) {
    if w.get(2, 1) <= w.get(2, 2) {
        (BasisElement::plain(w.tau()), 1)
    } else {
        (BasisElement::derivative(w.tau()), -1)
    }
}

fn entry_poly(seed: &Tableau, z: &ShiftVector, i: usize, j: usize) -> Poly {
    let c = seed.shifted_entry(z, i, j);
    match (i, j) {
        (2, 1) => Poly::linear(c, Rational::one()),
        (2, 2) => Poly::linear(c, -Rational::one()),
        _ => Poly::constant(c),
    }
}

/// Generic formulas at `v + z` with `v21 = x + t`, `v22 = x - t`.
pub fn symbolic_generic_action(g: Generator, z: &ShiftVector, seed: &Tableau) -> Result<Vec<SymbolicTerm>> {
    if seed.n() != 3 {
        return Err(Error::Rank { expected: 3, got: seed.n() });
    }
    let v = |i: usize, j: usize| entry_poly(seed, z, i, j);
    match g {
        Generator::Diag(k) => {
            let mut gamma = Poly::constant(Rational::from((k - 1) as i64));
            for i in 1..=k {
                gamma = &gamma + &v(k, i);
            }
            for i in 1..k {
                gamma = &gamma - &v(k - 1, i);
            }
            if gamma.is_zero() {
                return Ok(Vec::new());
            }
            Ok(vec![SymbolicTerm { coeff: RationalFunction1V::from_poly(gamma), target: z.clone() }])
        }
        Generator::Raise(k) | Generator::Lower(k) => {
            let raise = matches!(g, Generator::Raise(_));
            let mut out = Vec::new();
            for i in 1..=k {
                let vki = v(k, i);
                let mut den = Poly::one();
                for j in (1..=k).filter(|&j| j != i) {
                    den = &den * &(&vki - &v(k, j));
                }
                let (other, len) = if raise { (k + 1, k + 1) } else { (k - 1, k - 1) };
                let mut num = Poly::one();
                for j in 1..=len {
                    num = &num * &(&vki - &v(other, j));
                }
                if num.is_zero() {
                    continue;
                }
                if raise {
                    num = -&num;
                }
                let coeff = RationalFunction1V::new(num, den)?;
                let mut target = z.clone();
                target.bump(k, i, if raise { 1 } else { -1 });
                out.push(SymbolicTerm { coeff, target });
            }
            Ok(out)
        }
    }
}

/// Adds `D(g T(v + w)) = (g'(0)/2) T(w) + g(0) DT(w)` to `out`.
fn push_derivative_image(out: &mut TableauVector, g: &RationalFunction1V, w: &ShiftVector) -> Result<()> {
    if !g.is_regular_at_zero() {
        return Err(Error::NonRemovableSingularity(w.as_slice().to_vec()));
    }
    let d = rf_derivative_at_zero(g)?;
    if !d.is_zero() {
        let (b, _) = canonicalize(Kind::Plain, w)?;
        out.add_term(b, &d);
    }
    let e = g.eval_at_zero()?;
    if !e.is_zero() {
        match canonicalize(Kind::Derivative, w) {
            Ok((b, sign)) => out.add_term(b, &(e * Rational::from(sign as i64))),
            Err(Error::ZeroElement) => {}
            Err(err) => return Err(err),
        }
    }
    Ok(())
}

/// Action of a simple generator on the singular module at the critical `seed`.
///
/// A plain `T(z)` maps to `D((v21 - v22) E T(v + z))` and a derivative
/// `DT(z)` to `D(E T(v + z))`. Non-canonical inputs are canonicalized first.
pub fn singular_apply(g: Generator, b: &BasisElement, seed: &Tableau) -> Result<TableauVector> {
    let (b, sign) = canonicalize(b.kind, &b.z)?;
    let two_t = Poly::linear(Rational::zero(), Rational::from(2));
    let mut out = TableauVector::zero();
    for term in symbolic_generic_action(g, &b.z, seed)? {
        let f = match b.kind {
            Kind::Plain => term.coeff.mul_poly(&two_t),
            Kind::Derivative => term.coeff,
        };
        push_derivative_image(&mut out, &f, &term.target)?;
    }
    if sign < 0 {
        out = out.scale(&-Rational::one());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    /// `(c, x, x - t, x, x, x)` at `c = -1`, `x = -1/2`, `t = 1`.
    fn critical_seed() -> Tableau {
        Tableau::from_top_down(3, &[q("-1"), q("-1/2"), q("-3/2"), q("-1/2"), q("-1/2"), q("-1/2")]).unwrap()
    }

    fn mnk(m: i64, n: i64, k: i64) -> ShiftVector {
        ShiftVector::from_mnk(m, n, k)
    }

    #[test]
    fn canonical_forms() {
        let (b, s) = canonicalize(Kind::Plain, &mnk(1, 0, 4)).unwrap();
        assert_eq!((b, s), (BasisElement::plain(mnk(1, 0, 4)), 1));
        let (b, s) = canonicalize(Kind::Derivative, &mnk(1, 0, 4)).unwrap();
        assert_eq!((b, s), (BasisElement::derivative(mnk(0, 1, 4)), -1));
        assert!(matches!(canonicalize(Kind::Derivative, &mnk(2, 2, 4)), Err(Error::ZeroElement)));
        assert_eq!(canonicalize(Kind::Plain, &mnk(0, 3, 1)).unwrap().0, BasisElement::plain(mnk(3, 0, 1)));
    }

    #[test]
    fn tab_is_inverse_of_region_point() {
        for m in -2..=2 {
            for n in -2..=2 {
                let w = mnk(m, n, 1);
                let (b, sign) = tab_element(&w);
                assert_eq!(region_point(&b), w);
                assert_eq!(b.kind == Kind::Plain, m <= n);
                assert_eq!(sign == 1, m <= n);
            }
        }
    }

    #[test]
    fn diag_terms_are_t_free() {
        let seed = critical_seed();
        let terms = symbolic_generic_action(Generator::Diag(2), &mnk(0, 0, 0), &seed).unwrap();
        assert_eq!(terms.len(), 1);
        // 1 + 2x - v11 = 1 - 1 + 1/2
        assert_eq!(terms[0].coeff, RationalFunction1V::constant(q("1/2")));
    }

    #[test]
    fn raise_two_has_2t_denominators() {
        let seed = Tableau::from_top_down(3, &[q("1/5"), q("2/7"), q("3/11"), q("1/2"), q("1/2"), q("1/3")]).unwrap();
        let terms = symbolic_generic_action(Generator::Raise(2), &mnk(0, 0, 0), &seed).unwrap();
        assert_eq!(terms.len(), 2);
        for term in &terms {
            assert!(!term.coeff.is_regular_at_zero());
            assert_eq!(term.coeff.denom(), &Poly::t());
        }
        let lower = symbolic_generic_action(Generator::Lower(1), &mnk(0, 0, 0), &seed).unwrap();
        assert_eq!(lower.len(), 1);
        assert!(lower[0].coeff.is_regular_at_zero());
    }

    #[test]
    fn diag_acts_diagonally_on_both_kinds() {
        let seed = critical_seed();
        for b in [BasisElement::plain(mnk(2, -1, 0)), BasisElement::derivative(mnk(-1, 2, 3))] {
            for k in 1..=3 {
                let out = singular_apply(Generator::Diag(k), &b, &seed).unwrap();
                assert!(out.scalar_multiple_of(&b).is_some(), "Diag({k}) on {b:?} gave {out:?}");
            }
        }
    }

    #[test]
    fn plain_branch_laurent_bookkeeping() {
        // With f = c/(2t) + h(t), 2t f = c + 2t h, so D(2t f) = h(0) and its value at 0 is c.
        let c = q("3");
        let h0 = q("5");
        let f = &RationalFunction1V::new(Poly::constant(c.clone()), Poly::linear(Rational::zero(), q("2"))).unwrap()
            + &RationalFunction1V::constant(h0.clone());
        let g = f.mul_poly(&Poly::linear(Rational::zero(), q("2")));
        assert_eq!(rf_derivative_at_zero(&g).unwrap(), h0);
        assert_eq!(g.eval_at_zero().unwrap(), c);
    }

    #[test]
    fn swap_consistency_of_representatives() {
        let seed = critical_seed();
        let gens =
            [Generator::Raise(1), Generator::Raise(2), Generator::Lower(1), Generator::Lower(2), Generator::Diag(2)];
        for &(m, n, k) in &[(2, -1, 0), (0, 0, 1), (-1, 3, -2), (1, 0, 0)] {
            for &g in &gens {
                let z = mnk(m, n, k);
                let a = singular_apply(g, &BasisElement::plain(z.clone()), &seed).unwrap();
                let b = singular_apply(g, &BasisElement::plain(z.tau()), &seed).unwrap();
                assert_eq!(a, b);
                if m != n {
                    let d1 = singular_apply(g, &BasisElement::derivative(z.clone()), &seed).unwrap();
                    let d2 = singular_apply(g, &BasisElement::derivative(z.tau()), &seed).unwrap();
                    assert_eq!(d1, d2.scale(&-Rational::one()));
                }
            }
        }
    }

    #[test]
    fn tau_fixed_plain_produces_derivative_terms() {
        let seed = Tableau::from_top_down(3, &[q("1/5"), q("2/7"), q("3/11"), q("1/2"), q("1/2"), q("1/3")]).unwrap();
        let out = singular_apply(Generator::Raise(2), &BasisElement::plain(mnk(0, 0, 0)), &seed).unwrap();
        assert!(out.iter().any(|(b, _)| b.kind == Kind::Derivative));
        for (b, _) in out.iter() {
            assert_eq!(b.z.get(2, 1) + b.z.get(2, 2), 1);
        }
    }
}
