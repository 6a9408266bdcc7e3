//! Admissible levels and weight combinatorics for sl_n.
//!
//! Weights are stored in fundamental-weight coordinates `<lambda, alpha_i>`.
//! Positive roots are `alpha_ij = eps_i - eps_j` for `i < j`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalars::Rational;

/// `k + n = p/q` in lowest terms with `p >= n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibleLevel {
    pub n: usize,
    pub p: i64,
    pub q: i64,
    pub k: Rational,
}

impl AdmissibleLevel {
    pub fn new(n: usize, p: i64, q: i64) -> Result<Self> {
        if n < 2 {
            return Err(Error::ConstraintViolation(format!("rank n = {n} must be at least 2")));
        }
        if q < 1 {
            return Err(Error::ConstraintViolation(format!("denominator q = {q} must be positive")));
        }
        if p.gcd(&q) != 1 {
            return Err(Error::ConstraintViolation(format!("p = {p} and q = {q} are not coprime")));
        }
        if p < n as i64 {
            return Err(Error::ConstraintViolation(format!("p = {p} < n = {n}: level is not admissible")));
        }
        Ok(AdmissibleLevel { n, p, q, k: Rational::new(p, q) - Rational::from(n as i64) })
    }

    /// `k + n`.
    pub fn shifted(&self) -> Rational {
        Rational::new(self.p, self.q)
    }
}

/// `Some` exactly when `k + n = p/q` with `p >= n`.
pub fn is_admissible_level(n: usize, k: &Rational) -> Option<AdmissibleLevel> {
    let s = k + Rational::from(n as i64);
    let p = s.numer().to_i64()?;
    let q = s.denom().to_i64()?;
    AdmissibleLevel::new(n, p, q).ok()
}

/// Coordinates `<lambda, alpha_i>` for `i = 1..n-1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SlWeight(pub Vec<Rational>);

impl SlWeight {
    pub fn rank(&self) -> usize {
        self.0.len() + 1
    }

    /// `<lambda, alpha_ij>` for `i < j`.
    pub fn pairing(&self, i: usize, j: usize) -> Rational {
        self.0[i - 1..j - 1].iter().sum()
    }

    /// `eps` coordinates `a_j = sum_{i >= j} lambda_i`, `a_n = 0`.
    pub fn eps_coords(&self) -> Vec<Rational> {
        let n = self.rank();
        let mut out = vec![Rational::zero(); n];
        for j in (0..n - 1).rev() {
            out[j] = &out[j + 1] + &self.0[j];
        }
        out
    }

    pub fn rho(n: usize) -> SlWeight {
        SlWeight(vec![Rational::one(); n - 1])
    }

    pub fn add(&self, other: &SlWeight) -> SlWeight {
        SlWeight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &SlWeight) -> SlWeight {
        SlWeight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Debug for SlWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(Rational::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// gl_n weight `(a_1, .., a_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GlWeight(pub Vec<Rational>);

impl GlWeight {
    /// The sl weight `(a_i - a_{i+1})`.
    pub fn to_sl(&self) -> SlWeight {
        SlWeight(self.0.windows(2).map(|w| &w[0] - &w[1]).collect())
    }
}

/// A partition of `n`, parts in descending order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OrbitLabel(pub Vec<usize>);

impl fmt::Display for OrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orbit {
    Principal,
    Minimal,
    Zero,
}

impl Orbit {
    pub fn label(self, n: usize) -> OrbitLabel {
        match self {
            Orbit::Principal => OrbitLabel(vec![n]),
            Orbit::Minimal => {
                let mut parts = vec![2];
                parts.extend(std::iter::repeat_n(1, n - 2));
                OrbitLabel(parts)
            }
            Orbit::Zero => OrbitLabel(vec![1; n]),
        }
    }
}

impl FromStr for Orbit {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "prin" | "principal" => Ok(Orbit::Principal),
            "min" | "minimal" => Ok(Orbit::Minimal),
            "zero" => Ok(Orbit::Zero),
            other => Err(Error::Invalid(format!("unknown orbit {other:?}; expected prin, min or zero"))),
        }
    }
}

/// Dense orbit among nilpotents with all Jordan blocks of size at most `q`.
pub fn orbit_for_denominator(n: usize, q: usize) -> OrbitLabel {
    assert!(q >= 1, "denominator must be positive");
    let mut parts = vec![q.min(n); n / q.min(n)];
    let rest = n % q.min(n);
    if rest > 0 {
        parts.push(rest);
    }
    OrbitLabel(parts)
}

/// All permutations of `0..n` in lexicographic order.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
}

/// A permutation `w` with `mu = w . lambda` (dot action), if one exists.
///
/// `w[i]` is the source coordinate: `(w(x))_i = x_{w[i]}` in `eps` coordinates.
pub fn dot_equivalent(lambda: &SlWeight, mu: &SlWeight) -> Option<Vec<usize>> {
    assert_eq!(lambda.rank(), mu.rank(), "weights of different rank");
    let n = lambda.rank();
    let rho = SlWeight::rho(n);
    let a = lambda.add(&rho).eps_coords();
    let b = mu.add(&rho).eps_coords();
    permutations(n).into_iter().find(|w| {
        let shift = &b[0] - &a[w[0]];
        (1..n).all(|i| &b[i] - &a[w[i]] == shift)
    })
}

/// Positive roots `(i, j)` with integral pairing.
pub fn integral_roots(lambda: &SlWeight) -> Vec<(usize, usize)> {
    let n = lambda.rank();
    let mut out = Vec::new();
    for i in 1..n {
        for j in i + 1..=n {
            if lambda.pairing(i, j).is_integer() {
                out.push((i, j));
            }
        }
    }
    out
}

/// `|Delta| - |Delta(lambda)|`.
pub fn var_dimension(lambda: &SlWeight) -> usize {
    let n = lambda.rank();
    n * (n - 1) - 2 * integral_roots(lambda).len()
}

/// Nonnegative integer vectors of length `len` with sum at most `bound`.
pub fn bounded_compositions(len: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    if bound < 0 {
        return out;
    }
    let mut cur = vec![0i64; len];
    fn rec(pos: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if pos == cur.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..=left {
            cur[pos] = v;
            rec(pos + 1, left - v, cur, out);
        }
        cur[pos] = 0;
    }
    rec(0, bound, &mut cur, &mut out);
    out
}

/// Outcome of [`enumerate_pr_detailed`].
#[derive(Clone, Debug, Serialize)]
pub struct PrEnumeration {
    pub representatives: Vec<SlWeight>,
    pub candidates: usize,
    pub collisions: usize,
}

/// Explicit representatives of admissible weights attached to `orbit`,
/// deduplicated up to the dot action.
pub fn enumerate_pr(level: &AdmissibleLevel, orbit: Orbit) -> Result<Vec<SlWeight>> {
    Ok(enumerate_pr_detailed(level, orbit)?.representatives)
}

pub fn enumerate_pr_detailed(level: &AdmissibleLevel, orbit: Orbit) -> Result<PrEnumeration> {
    let n = level.n;
    let (p, q) = (level.p, level.q);
    let pq = Rational::new(p, q);
    let lambdas = bounded_compositions(n - 1, p - n as i64);
    let mut candidates: Vec<SlWeight> = Vec::new();
    match orbit {
        Orbit::Principal => {
            if q < n as i64 {
                return Err(Error::OrbitEmpty(format!("principal orbit needs q >= {n}, got q = {q}")));
            }
            for lam in &lambdas {
                for mu in bounded_compositions(n - 1, q - n as i64) {
                    candidates.push(SlWeight(
                        lam.iter().zip(&mu).map(|(&l, &m)| Rational::from(l) - &pq * Rational::from(m + 1)).collect(),
                    ));
                }
            }
        }
        Orbit::Minimal => {
            if q < 2 {
                return Err(Error::OrbitEmpty(format!("minimal orbit needs q >= 2, got q = {q}")));
            }
            for lam in &lambdas {
                for a in 1..q {
                    let mut w: Vec<Rational> = lam.iter().map(|&l| Rational::from(l)).collect();
                    w[0] -= &(Rational::from(a) * &pq);
                    candidates.push(SlWeight(w));
                }
            }
        }
        Orbit::Zero => {
            candidates = lambdas.iter().map(|lam| SlWeight(lam.iter().map(|&l| Rational::from(l)).collect())).collect();
        }
    }
    candidates.sort();
    let total = candidates.len();
    let representatives = dedup_by_dot(candidates);
    Ok(PrEnumeration { collisions: total - representatives.len(), candidates: total, representatives })
}

/// Keeps the first member of each dot-equivalence class, in input order.
pub fn dedup_by_dot(candidates: Vec<SlWeight>) -> Vec<SlWeight> {
    let mut out: Vec<SlWeight> = Vec::new();
    for c in candidates {
        if !out.iter().any(|r| dot_equivalent(r, &c).is_some()) {
            out.push(c);
        }
    }
    out
}

/// Centered gl weight with `b_i = sum_{k >= i} lambda_k`, `b_n = 0`.
pub fn sl_to_gl_weight(lambda: &SlWeight) -> GlWeight {
    let b = lambda.eps_coords();
    let n = b.len();
    let mean: Rational = b.iter().sum::<Rational>() / Rational::from(n as i64);
    GlWeight(b.iter().map(|x| x - &mean).collect())
}

/// Top row `a_i - i + 1`.
pub fn gl_to_top_row(a: &GlWeight) -> Vec<Rational> {
    a.0.iter().enumerate().map(|(i, x)| x - Rational::from(i as i64)).collect()
}

/// Level of the `sl_{n_sub}` subalgebra: `k_sub + n_sub = k + n`.
pub fn restricted_level(level: &AdmissibleLevel, n_sub: usize) -> Result<Rational> {
    if n_sub < 2 || n_sub >= level.n {
        return Err(Error::ConstraintViolation(format!("need 2 <= n_sub < {}, got {n_sub}", level.n)));
    }
    Ok(level.shifted() - Rational::from(n_sub as i64))
}
