//! Tableau realizations of modules parabolically induced from sl_2 and sl_3
//! along the upper-left chain.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::admissibility::{
    gl_to_top_row, is_admissible_level, restricted_level, sl_to_gl_weight, AdmissibleLevel, SlWeight,
};
use crate::classification_sl3::{choose_free_parameters, FreeParam};
use crate::error::{Error, Result};
use crate::gt_action::{ModuleContext, Regime};
use crate::modules_generic::{BasisPredicate, ModuleSpec};
use crate::scalars::Rational;
use crate::tableaux::Tableau;

/// Inner `sl_{sub_rank}` seed, outer top-row entries and the assembled seed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InducedSpec {
    pub n: usize,
    pub sub_rank: usize,
    pub inner: Tableau,
    /// `v_{sub_rank+1}, ..., v_n`.
    pub outer: Vec<Rational>,
    pub seed: Tableau,
    /// Level of the inner subalgebra, when built from admissible data.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inner_level: Option<AdmissibleLevel>,
}

impl InducedSpec {
    /// Assembles `v_ij = v_j` for `i > sub_rank` and `v_ij = u_ij` below.
    pub fn new(inner: Tableau, outer: Vec<Rational>) -> Result<Self> {
        let sub_rank = inner.n();
        if !(2..=3).contains(&sub_rank) {
            return Err(Error::Invalid(format!("inner rank must be 2 or 3, got {sub_rank}")));
        }
        let n = sub_rank + outer.len();
        if n <= sub_rank {
            return Err(Error::Invalid("induction needs at least one outer parameter".into()));
        }
        let v: Vec<Rational> = inner.top_row().iter().cloned().chain(outer.iter().cloned()).collect();
        for i in 0..n {
            for j in i + 1..n {
                if (&v[i] - &v[j]).is_integer() {
                    return Err(Error::ParameterClash(format!(
                        "v{} - v{} = {} is an integer",
                        i + 1,
                        j + 1,
                        &v[i] - &v[j]
                    )));
                }
            }
        }
        let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(n);
        for i in 1..=n {
            if i <= sub_rank {
                rows.push(inner.row(i).to_vec());
            } else {
                rows.push(v[..i].to_vec());
            }
        }
        let seed = crate::tableaux::make_tableau(n, rows)?;
        if !seed.is_generic() {
            return Err(Error::Invalid(format!(
                "assembled seed is singular; singular sl_{sub_rank} inner seeds are not supported for n = {n}"
            )));
        }
        Ok(InducedSpec { n, sub_rank, inner, outer, seed, inner_level: None })
    }

    /// Generic context with the `Induced` basis predicate.
    pub fn module_spec(&self) -> Result<ModuleSpec> {
        let ctx = ModuleContext::new(self.seed.clone(), Regime::Generic)?;
        Ok(ModuleSpec::new(ctx, BasisPredicate::Induced { sub_rank: self.sub_rank })?
            .with_label(format!("induced-sl{}-n{}", self.sub_rank, self.n)))
    }
}

pub fn build_induced(inner: &Tableau, outer: &[Rational]) -> Result<ModuleSpec> {
    InducedSpec::new(inner.clone(), outer.to_vec())?.module_spec()
}

/// Integral differences `u_rs - u_{r-1,t}` in the inner seed; simple exactly when there are none.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplicityReport {
    pub simple: bool,
    /// Triples `(r, s, t)`.
    pub violations: Vec<(usize, usize, usize)>,
}

pub fn simplicity_flags(spec: &InducedSpec) -> SimplicityReport {
    let u = &spec.inner;
    let mut violations = Vec::new();
    for r in 2..=spec.sub_rank {
        for s in 1..=r {
            for t in 1..r {
                if (u.entry(r, s) - u.entry(r - 1, t)).is_integer() {
                    violations.push((r, s, t));
                }
            }
        }
    }
    SimplicityReport { simple: violations.is_empty(), violations }
}

/// Admissible principal-orbit data `v_i - v_{i+1} - 1 = lambda_i - (p/q)(mu_i + 1)`.
///
/// The inner rows below the top are chosen by [`choose_free_parameters`]
/// so that the inner module is cuspidal and the induced module simple.
pub fn admissible_induced_parameters(
    level: &AdmissibleLevel,
    sub_rank: usize,
    lambdas: &[i64],
    mus: &[i64],
) -> Result<InducedSpec> {
    let n = level.n;
    let (p, q) = (level.p, level.q);
    if !(2..=3).contains(&sub_rank) || sub_rank >= n {
        return Err(Error::ConstraintViolation(format!("need sub_rank in 2..=3 and below n = {n}, got {sub_rank}")));
    }
    if lambdas.len() != n - 1 || mus.len() != n - 1 {
        return Err(Error::ConstraintViolation(format!(
            "need {} lambdas and mus, got {} and {}",
            n - 1,
            lambdas.len(),
            mus.len()
        )));
    }
    let n_i = n as i64;
    if p < n_i || q < n_i {
        return Err(Error::ConstraintViolation(format!("need p, q >= n = {n}, got p = {p}, q = {q}")));
    }
    if lambdas.iter().chain(mus).any(|&x| x < 0) {
        return Err(Error::ConstraintViolation("lambdas and mus must be nonnegative".into()));
    }
    let (sl, sm): (i64, i64) = (lambdas.iter().sum(), mus.iter().sum());
    if sl > p - n_i {
        return Err(Error::ConstraintViolation(format!("sum of lambdas {sl} > p - n = {}", p - n_i)));
    }
    if sm > q - n_i {
        return Err(Error::ConstraintViolation(format!("sum of mus {sm} > q - n = {}", q - n_i)));
    }
    let pq = Rational::new(p, q);
    let weight =
        SlWeight(lambdas.iter().zip(mus).map(|(&l, &m)| Rational::from(l) - &pq * Rational::from(m + 1)).collect());
    let v = gl_to_top_row(&sl_to_gl_weight(&weight));
    let needed: &[FreeParam] =
        if sub_rank == 2 { &[FreeParam::Z] } else { &[FreeParam::Y, FreeParam::Z, FreeParam::C] };
    let free = choose_free_parameters(&v, &v[0], needed);
    let inner_rows = if sub_rank == 2 {
        vec![vec![free[&FreeParam::Z].clone()], v[..2].to_vec()]
    } else {
        vec![
            vec![free[&FreeParam::C].clone()],
            vec![free[&FreeParam::Y].clone(), free[&FreeParam::Z].clone()],
            v[..3].to_vec(),
        ]
    };
    let inner = crate::tableaux::make_tableau(sub_rank, inner_rows)?;
    let k_sub = restricted_level(level, sub_rank)?;
    let inner_level = is_admissible_level(sub_rank, &k_sub).ok_or_else(|| {
        Error::ConstraintViolation(format!("restricted level {k_sub} is not admissible for sl_{sub_rank}"))
    })?;
    let mut spec = InducedSpec::new(inner, v[sub_rank..].to_vec())?;
    spec.inner_level = Some(inner_level);
    Ok(spec)
}

/// Free inner parameters by name, for reports.
pub fn inner_parameters(spec: &InducedSpec) -> BTreeMap<String, Rational> {
    let mut out = BTreeMap::new();
    for r in 1..spec.sub_rank {
        for s in 1..=r {
            out.insert(format!("u{r}{s}"), spec.inner.entry(r, s).clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gt_action::BasisElement;
    use crate::modules_generic::{
        enumerate_basis, multiplicity_census, verify_closure, verify_relations, RelationOptions, Window,
    };
    use crate::tableaux::{make_tableau, ShiftVector};

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn sl2(u21: &str, u22: &str, u11: &str) -> Tableau {
        make_tableau(2, vec![vec![q(u11)], vec![q(u21), q(u22)]]).unwrap()
    }

    #[test]
    fn sl2_seed_assembly() {
        let spec = InducedSpec::new(sl2("1/5", "2/15", "-3/10"), vec![q("1/7")]).unwrap();
        assert_eq!(spec.seed.row(3), &[q("1/5"), q("2/15"), q("1/7")]);
        assert_eq!(spec.seed.row(2), &[q("1/5"), q("2/15")]);
        assert_eq!(spec.seed.row(1), &[q("-3/10")]);
        assert!(simplicity_flags(&spec).simple);
        let clash = InducedSpec::new(sl2("1/5", "2/15", "-3/10"), vec![q("6/5")]).unwrap_err();
        assert!(matches!(clash, Error::ParameterClash(_)));
    }

    #[test]
    fn sl2_simplicity_witness() {
        let spec = InducedSpec::new(sl2("1/5", "2/15", "6/5"), vec![q("1/7")]).unwrap();
        let flags = simplicity_flags(&spec);
        assert!(!flags.simple);
        assert_eq!(flags.violations, vec![(2, 1, 1)]);
    }

    #[test]
    fn n4_sl2_predicate() {
        let spec = InducedSpec::new(sl2("1/5", "2/15", "-3/10"), vec![q("1/7"), q("1/11")]).unwrap();
        let ms = spec.module_spec().unwrap();
        let m = ms.membership();
        let mut z = ShiftVector::zero(4);
        assert!(m.contains(&BasisElement::plain(z.clone())));
        // w_{3,1} - w_{2,1} = -1
        z.set(3, 1, -1);
        assert!(!m.contains(&BasisElement::plain(z.clone())));
        z.set(2, 1, -1);
        assert!(m.contains(&BasisElement::plain(z.clone())));
        // rows 1 and 2 are otherwise free
        z.set(1, 1, 5);
        assert!(m.contains(&BasisElement::plain(z)));
    }

    #[test]
    fn sl3_inner_rows_free() {
        let inner =
            make_tableau(3, vec![vec![q("1/13")], vec![q("1/7"), q("1/11")], vec![q("1/3"), q("2/5"), q("3/17")]])
                .unwrap();
        let spec = InducedSpec::new(inner, vec![q("1/19")]).unwrap();
        assert!(simplicity_flags(&spec).simple);
        let ms = spec.module_spec().unwrap();
        let m = ms.membership();
        let mut z = ShiftVector::zero(4);
        z.set(1, 1, 3);
        z.set(2, 2, -4);
        assert!(m.contains(&BasisElement::plain(z.clone())));
        z.set(3, 2, 1);
        assert!(!m.contains(&BasisElement::plain(z)));
    }

    #[test]
    fn sl3_singular_inner_rejected() {
        let inner =
            make_tableau(3, vec![vec![q("1/13")], vec![q("1/7"), q("8/7")], vec![q("1/3"), q("2/5"), q("3/17")]])
                .unwrap();
        assert!(matches!(InducedSpec::new(inner, vec![q("1/19")]), Err(Error::Invalid(_))));
    }

    #[test]
    fn admissible_parameters_examples() {
        let l32 = AdmissibleLevel::new(3, 3, 2).unwrap();
        assert!(matches!(admissible_induced_parameters(&l32, 2, &[0, 0], &[0, 0]), Err(Error::ConstraintViolation(_))));
        let l43 = AdmissibleLevel::new(3, 4, 3).unwrap();
        let spec = admissible_induced_parameters(&l43, 2, &[0, 0], &[0, 0]).unwrap();
        let v = spec.seed.top_row();
        assert_eq!(&v[1] - &v[2] - Rational::one(), q("-4/3"));
        assert_eq!(&v[0] - &v[1] - Rational::one(), q("-4/3"));
        let inner = spec.inner_level.clone().unwrap();
        assert_eq!(inner.k, q("-2/3"));
        assert_eq!((inner.p, inner.q), (4, 3));
        assert!(simplicity_flags(&spec).simple);
        assert!(spec.seed.is_strongly_generic());
    }

    #[test]
    fn admissible_spec_windows_close() {
        for (n, p, qq) in [(3usize, 4i64, 3i64), (4, 5, 4)] {
            let level = AdmissibleLevel::new(n, p, qq).unwrap();
            let zeros = vec![0; n - 1];
            let spec = admissible_induced_parameters(&level, 2, &zeros, &zeros).unwrap();
            let ms = spec.module_spec().unwrap();
            let w = Window::symmetric(n, 2);
            assert!(verify_closure(&ms, &w, 1).unwrap().pass);
            let opts = RelationOptions { max_probes: Some(4), ..RelationOptions::default() };
            assert!(verify_relations(&ms, &w, &opts).unwrap().pass);
        }
    }

    #[test]
    fn sl3_induced_multiplicities_grow() {
        let level = AdmissibleLevel::new(4, 5, 4).unwrap();
        let spec = admissible_induced_parameters(&level, 3, &[0, 0, 0], &[0, 0, 0]).unwrap();
        assert!(simplicity_flags(&spec).simple);
        let ms = spec.module_spec().unwrap();
        let counts: Vec<usize> =
            [1, 2].iter().map(|&r| multiplicity_census(&ms, &Window::symmetric(4, r)).max_count()).collect();
        assert!(counts[1] > counts[0], "{counts:?}");
        assert!(!enumerate_basis(&ms, &Window::symmetric(4, 1)).is_empty());
    }
}
