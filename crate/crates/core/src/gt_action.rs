//! Gelfand-Tsetlin formulas for gl_n acting on tableau bases.
//!
//! Simple generators use the explicit formulas; the remaining `E_ij` are
//! expanded through commutators with a fixed pivot. Results are memoized per
//! `(i, j, basis element)` inside a [`GtAction`].

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};
use crate::modules_singular;
use crate::scalars::Rational;
use crate::tableaux::{shift_len, ShiftVector, Tableau};

/// Simple generators: `Raise(k) = E_{k,k+1}`, `Lower(k) = E_{k+1,k}`, `Diag(k) = E_{kk}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    Raise(usize),
    Lower(usize),
    Diag(usize),
}

impl Generator {
    /// The simple generator equal to `E_ij`, if there is one.
    pub fn from_ij(i: usize, j: usize) -> Option<Generator> {
        if i == j {
            Some(Generator::Diag(i))
        } else if j == i + 1 {
            Some(Generator::Raise(i))
        } else if i == j + 1 {
            Some(Generator::Lower(j))
        } else {
            None
        }
    }

    pub fn ij(self) -> (usize, usize) {
        match self {
            Generator::Raise(k) => (k, k + 1),
            Generator::Lower(k) => (k + 1, k),
            Generator::Diag(k) => (k, k),
        }
    }

    /// The off-diagonal simple generators of gl_n.
    pub fn off_diagonal(n: usize) -> Vec<Generator> {
        (1..n).flat_map(|k| [Generator::Raise(k), Generator::Lower(k)]).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    #[serde(rename = "plain")]
    Plain,
    #[serde(rename = "deriv")]
    Derivative,
}

/// A plain tableau `T(seed + z)` or a derivative tableau `DT(seed + z)`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BasisElement {
    pub kind: Kind,
    pub z: ShiftVector,
}

impl BasisElement {
    pub fn plain(z: ShiftVector) -> Self {
        BasisElement { kind: Kind::Plain, z }
    }

    pub fn derivative(z: ShiftVector) -> Self {
        BasisElement { kind: Kind::Derivative, z }
    }
}

impl Ord for BasisElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.z.cmp(&other.z).then(self.kind.cmp(&other.kind))
    }
}

impl PartialOrd for BasisElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            Kind::Plain => write!(f, "T{:?}", self.z),
            Kind::Derivative => write!(f, "DT{:?}", self.z),
        }
    }
}

/// Finite rational combination of basis elements; zero coefficients are never stored.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct TableauVector {
    terms: BTreeMap<BasisElement, Rational>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    basis: BasisElement,
    coeff: Rational,
}

impl TableauVector {
    pub fn zero() -> Self {
        TableauVector::default()
    }

    pub fn basis(b: BasisElement) -> Self {
        let mut v = TableauVector::zero();
        v.terms.insert(b, Rational::one());
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, b: &BasisElement) -> Rational {
        self.terms.get(b).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BasisElement, &Rational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, b: BasisElement, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(b) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &TableauVector, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (b, x) in &other.terms {
            self.add_term(b.clone(), &(x * c));
        }
    }

    pub fn scale(&self, c: &Rational) -> TableauVector {
        let mut out = TableauVector::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn sub(&self, other: &TableauVector) -> TableauVector {
        let mut out = self.clone();
        out.add_scaled(other, &-Rational::one());
        out
    }

    pub fn add(&self, other: &TableauVector) -> TableauVector {
        let mut out = self.clone();
        out.add_scaled(other, &Rational::one());
        out
    }

    pub fn retain(&mut self, keep: impl Fn(&BasisElement) -> bool) {
        self.terms.retain(|b, _| keep(b));
    }

    /// `Some(c)` when `self == c * b`.
    pub fn scalar_multiple_of(&self, b: &BasisElement) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(b).cloned(),
            _ => None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("vector serializes")
    }

    /// Parses `[{"basis": {"kind": "plain", "z": [..]}, "coeff": ".."}, ..]`.
    /// Repeated keys are summed.
    pub fn from_json(s: &str) -> Result<TableauVector> {
        serde_json::from_str(s).map_err(|e| ParseError::Json(e.to_string()).into())
    }
}

impl Serialize for TableauVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<TermJson> =
            self.terms.iter().map(|(b, c)| TermJson { basis: b.clone(), coeff: c.clone() }).collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TableauVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let terms = Vec::<TermJson>::deserialize(d)?;
        let mut v = TableauVector::zero();
        for t in terms {
            v.add_term(t.basis, &t.coeff);
        }
        Ok(v)
    }
}

impl fmt::Debug for TableauVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(b, c)| format!("({c}){b:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A letter `E_ij` (1-based).
pub type Letter = (usize, usize);

/// Formal rational combination of words in the `E_ij`.
///
/// Words are read left to right as products, so the rightmost letter acts first.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UEElement {
    terms: Vec<(Rational, Vec<Letter>)>,
}

impl UEElement {
    pub fn zero() -> Self {
        UEElement::default()
    }

    pub fn identity() -> Self {
        UEElement::word(Rational::one(), Vec::new())
    }

    pub fn generator(i: usize, j: usize) -> Self {
        UEElement::word(Rational::one(), vec![(i, j)])
    }

    pub fn word(c: Rational, w: Vec<Letter>) -> Self {
        let mut u = UEElement::zero();
        u.push(c, w);
        u
    }

    pub fn push(&mut self, c: Rational, w: Vec<Letter>) {
        if c.is_zero() {
            return;
        }
        if let Some(slot) = self.terms.iter_mut().find(|(_, x)| *x == w) {
            slot.0 += &c;
            if slot.0.is_zero() {
                self.terms.retain(|(c, _)| !c.is_zero());
            }
            return;
        }
        self.terms.push((c, w));
    }

    pub fn terms(&self) -> &[(Rational, Vec<Letter>)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &UEElement) -> UEElement {
        let mut out = self.clone();
        for (c, w) in &other.terms {
            out.push(c.clone(), w.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> UEElement {
        let mut out = UEElement::zero();
        for (x, w) in &self.terms {
            out.push(x * c, w.clone());
        }
        out
    }

    pub fn sub(&self, other: &UEElement) -> UEElement {
        self.add(&other.scale(&-Rational::one()))
    }

    /// Product by concatenation of words.
    pub fn mul(&self, other: &UEElement) -> UEElement {
        let mut out = UEElement::zero();
        for (a, u) in &self.terms {
            for (b, w) in &other.terms {
                let mut word = u.clone();
                word.extend_from_slice(w);
                out.push(a * b, word);
            }
        }
        out
    }

    /// `xy - yx`, without reduction.
    pub fn commutator(&self, other: &UEElement) -> UEElement {
        self.mul(other).sub(&other.mul(self))
    }

    /// True when every word has length one, i.e. the element lies in gl_n.
    pub fn is_linear(&self) -> bool {
        self.terms.iter().all(|(_, w)| w.len() == 1)
    }
}

/// `[E_ab, E_cd] = delta_bc E_ad - delta_da E_cb` as a linear element.
pub fn lie_bracket_letters(x: Letter, y: Letter) -> UEElement {
    let mut out = UEElement::zero();
    if x.1 == y.0 {
        out.push(Rational::one(), vec![(x.0, y.1)]);
    }
    if y.1 == x.0 {
        out.push(-Rational::one(), vec![(y.0, x.1)]);
    }
    out
}

/// Which family of formulas governs the action.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Regime {
    /// Rows `1..n-1` without integral differences.
    Generic,
    /// Rank 3 with `v21 == v22`; plain and derivative tableaux.
    Singular1,
    /// Integral seed; formulas are evaluated wherever denominators are nonzero.
    FiniteDimensional,
}

/// A seed tableau together with the regime used to act on its shifts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleContext {
    seed: Tableau,
    regime: Regime,
}

impl ModuleContext {
    pub fn new(seed: Tableau, regime: Regime) -> Result<Self> {
        match regime {
            Regime::Generic if !seed.is_generic() => {
                return Err(Error::Invalid("generic regime needs a generic seed".into()));
            }
            Regime::Singular1 if !seed.is_critical()? => {
                return Err(Error::Invalid("singular regime needs a critical seed".into()));
            }
            _ => {}
        }
        Ok(ModuleContext { seed, regime })
    }

    pub fn generic(seed: Tableau) -> Result<Self> {
        ModuleContext::new(seed, Regime::Generic)
    }

    pub fn seed(&self) -> &Tableau {
        &self.seed
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    pub fn n(&self) -> usize {
        self.seed.n()
    }

    /// The basis element attached to the lattice point `z`. In the singular
    /// regime the sector `z21 >= z22` is plain and `z21 < z22` is derivative.
    pub fn element_at(&self, z: ShiftVector) -> BasisElement {
        match self.regime {
            Regime::Singular1 if z.get(2, 1) < z.get(2, 2) => BasisElement::derivative(z),
            _ => BasisElement::plain(z),
        }
    }
}

/// `gamma_k = k - 1 + sum_i v_{ki} - sum_i v_{k-1,i}` at `seed + z`.
pub fn weight_of(b: &BasisElement, ctx: &ModuleContext) -> Vec<Rational> {
    let seed = ctx.seed();
    let n = seed.n();
    let row_sum = |k: usize| -> Rational { (1..=k).map(|i| seed.shifted_entry(&b.z, k, i)).sum() };
    let mut out = Vec::with_capacity(n);
    let mut below = Rational::zero();
    for k in 1..=n {
        let here = row_sum(k);
        out.push(Rational::from((k - 1) as i64) + &here - &below);
        below = here;
    }
    out
}

/// Terms `(coefficient, target shift)` of a simple generator on `T(seed + z)`
/// from the generic formulas.
pub fn generic_terms(seed: &Tableau, z: &ShiftVector, g: Generator) -> Result<Vec<(Rational, ShiftVector)>> {
    let n = seed.n();
    let v = |i: usize, j: usize| seed.shifted_entry(z, i, j);
    match g {
        Generator::Diag(k) => {
            assert!(1 <= k && k <= n, "Diag index out of range");
            Ok(vec![(weight_component(seed, z, k), z.clone())])
        }
        Generator::Raise(k) | Generator::Lower(k) => {
            assert!(1 <= k && k < n, "generator index out of range");
            let raise = matches!(g, Generator::Raise(_));
            let mut out = Vec::with_capacity(k);
            for i in 1..=k {
                let vki = v(k, i);
                let mut den = Rational::one();
                for j in (1..=k).filter(|&j| j != i) {
                    den *= &(&vki - v(k, j));
                }
                if den.is_zero() {
                    return Err(Error::DenominatorZero { row: k, z: z.as_slice().to_vec() });
                }
                let mut num = Rational::one();
                let (other, len) = if raise { (k + 1, k + 1) } else { (k - 1, k - 1) };
                for j in 1..=len {
                    num *= &(&vki - v(other, j));
                }
                let coeff = if raise { -(num / den) } else { num / den };
                if coeff.is_zero() {
                    continue;
                }
                let mut target = z.clone();
                target.bump(k, i, if raise { 1 } else { -1 });
                out.push((coeff, target));
            }
            Ok(out)
        }
    }
}

fn weight_component(seed: &Tableau, z: &ShiftVector, k: usize) -> Rational {
    let mut g = Rational::from((k - 1) as i64);
    for i in 1..=k {
        g += seed.shifted_entry(z, k, i);
    }
    for i in 1..k {
        g -= seed.shifted_entry(z, k - 1, i);
    }
    g
}

/// Projection applied after every simple-generator step.
pub type BasisFilter = Arc<dyn Fn(&BasisElement) -> bool + Send + Sync>;

/// Memoizing action of gl_n on a module context.
pub struct GtAction {
    ctx: ModuleContext,
    filter: Option<BasisFilter>,
    cache: RefCell<HashMap<(Letter, BasisElement), TableauVector>>,
}

impl GtAction {
    pub fn new(ctx: ModuleContext) -> Self {
        GtAction { ctx, filter: None, cache: RefCell::new(HashMap::new()) }
    }

    /// Action compressed onto the span of basis elements accepted by `filter`.
    pub fn with_filter(ctx: ModuleContext, filter: BasisFilter) -> Self {
        GtAction { ctx, filter: Some(filter), cache: RefCell::new(HashMap::new()) }
    }

    pub fn ctx(&self) -> &ModuleContext {
        &self.ctx
    }

    pub fn n(&self) -> usize {
        self.ctx.n()
    }

    pub fn cache_len(&self) -> usize {
        self.cache.borrow().len()
    }

    pub fn clear_cache(&self) {
        self.cache.borrow_mut().clear();
    }

    fn accept(&self, b: &BasisElement) -> bool {
        self.filter.as_ref().is_none_or(|f| f(b))
    }

    /// One simple generator on one basis element, before any projection.
    pub fn apply_simple_raw(&self, g: Generator, b: &BasisElement) -> Result<TableauVector> {
        match self.ctx.regime {
            Regime::Singular1 => modules_singular::singular_apply(g, b, self.ctx.seed()),
            _ => {
                if b.kind == Kind::Derivative {
                    return Err(Error::Invalid("derivative tableau outside the singular regime".into()));
                }
                let mut out = TableauVector::zero();
                for (c, target) in generic_terms(self.ctx.seed(), &b.z, g)? {
                    out.add_term(BasisElement::plain(target), &c);
                }
                Ok(out)
            }
        }
    }

    /// `E_ij` on a basis element (projected if a filter is set).
    pub fn apply_letter_basis(&self, e: Letter, b: &BasisElement) -> Result<TableauVector> {
        let key = (e, b.clone());
        if let Some(v) = self.cache.borrow().get(&key) {
            return Ok(v.clone());
        }
        let (i, j) = e;
        let n = self.n();
        assert!(1 <= i && i <= n && 1 <= j && j <= n, "E_{i}{j} out of range for rank {n}");
        let out = match Generator::from_ij(i, j) {
            Some(g) => {
                let mut v = self.apply_simple_raw(g, b)?;
                if self.filter.is_some() {
                    v.retain(|t| self.accept(t));
                }
                v
            }
            None => {
                // E_ij = [E_ip, E_pj] with p = j - 1 above the diagonal, p = j + 1 below.
                let p = if i < j { j - 1 } else { j + 1 };
                let a = self.apply_letter((p, j), &TableauVector::basis(b.clone()))?;
                let first = self.apply_letter((i, p), &a)?;
                let c = self.apply_letter((i, p), &TableauVector::basis(b.clone()))?;
                let second = self.apply_letter((p, j), &c)?;
                first.sub(&second)
            }
        };
        self.cache.borrow_mut().insert(key, out.clone());
        Ok(out)
    }

    /// Linear extension of `E_ij`.
    pub fn apply_letter(&self, e: Letter, vec: &TableauVector) -> Result<TableauVector> {
        let mut out = TableauVector::zero();
        for (b, c) in vec.iter() {
            let img = self.apply_letter_basis(e, b)?;
            out.add_scaled(&img, c);
        }
        Ok(out)
    }

    pub fn apply_simple(&self, g: Generator, vec: &TableauVector) -> Result<TableauVector> {
        self.apply_letter(g.ij(), vec)
    }

    /// Applies each word right to left and sums.
    pub fn apply_ue(&self, u: &UEElement, vec: &TableauVector) -> Result<TableauVector> {
        let mut out = TableauVector::zero();
        for (c, word) in u.terms() {
            let mut cur = vec.clone();
            for &e in word.iter().rev() {
                if cur.is_zero() {
                    break;
                }
                cur = self.apply_letter(e, &cur)?;
            }
            out.add_scaled(&cur, c);
        }
        Ok(out)
    }

    /// Eigenvalues of `c_{n,1}, .., c_{n,n}` on `probe`.
    pub fn central_character(&self, probe: &BasisElement) -> Result<Vec<Rational>> {
        let n = self.n();
        (1..=n).map(|k| self.gt_eigenvalue(n, k, probe)).collect()
    }

    /// Eigenvalue of `c_{mk}` on `probe`, or `NotEigenvector`.
    pub fn gt_eigenvalue(&self, m: usize, k: usize, probe: &BasisElement) -> Result<Rational> {
        let img = self.apply_ue(&casimir_generator(m, k), &TableauVector::basis(probe.clone()))?;
        img.scalar_multiple_of(probe).ok_or(Error::NotEigenvector { m, k })
    }
}

/// One simple generator applied to one basis element.
pub fn apply_simple_generator(g: Generator, b: &BasisElement, ctx: &ModuleContext) -> Result<TableauVector> {
    GtAction::new(ctx.clone()).apply_simple_raw(g, b)
}

/// `E_ij` applied to a vector.
pub fn apply_generator(i: usize, j: usize, vec: &TableauVector, ctx: &ModuleContext) -> Result<TableauVector> {
    GtAction::new(ctx.clone()).apply_letter((i, j), vec)
}

pub fn apply_ue_element(u: &UEElement, vec: &TableauVector, ctx: &ModuleContext) -> Result<TableauVector> {
    GtAction::new(ctx.clone()).apply_ue(u, vec)
}

/// `c_mk = sum over (i_1..i_k) in {1..m}^k of E_{i1 i2} E_{i2 i3} .. E_{ik i1}`.
pub fn casimir_generator(m: usize, k: usize) -> UEElement {
    assert!(1 <= k && k <= m, "need 1 <= k <= m");
    let mut out = UEElement::zero();
    let mut idx = vec![1usize; k];
    loop {
        let word: Vec<Letter> = (0..k).map(|p| (idx[p], idx[(p + 1) % k])).collect();
        out.push(Rational::one(), word);
        let mut p = k;
        loop {
            if p == 0 {
                return out;
            }
            p -= 1;
            if idx[p] < m {
                idx[p] += 1;
                break;
            }
            idx[p] = 1;
        }
    }
}

pub fn central_character(ctx: &ModuleContext, probe: &BasisElement) -> Result<Vec<Rational>> {
    GtAction::new(ctx.clone()).central_character(probe)
}

/// Checks that `z` has the rank implied by the context.
pub fn check_shift_len(ctx: &ModuleContext, z: &ShiftVector) -> Result<()> {
    if z.len() != shift_len(ctx.n()) {
        return Err(Error::Shape(format!("shift of length {} for rank {}", z.len(), ctx.n())));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tableaux::make_tableau;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn ctx2(v11: &str, v21: &str, v22: &str) -> ModuleContext {
        ModuleContext::generic(make_tableau(2, vec![vec![q(v11)], vec![q(v21), q(v22)]]).unwrap()).unwrap()
    }

    fn origin(n: usize) -> BasisElement {
        BasisElement::plain(ShiftVector::zero(n))
    }

    #[test]
    fn rank_two_simple_formulas() {
        let ctx = ctx2("1/3", "1/2", "-1/5");
        let (v11, v21, v22) = (q("1/3"), q("1/2"), q("-1/5"));
        let b = origin(2);
        let up = apply_simple_generator(Generator::Raise(1), &b, &ctx).unwrap();
        let expect = -((&v11 - &v21) * (&v11 - &v22));
        assert_eq!(up.coeff(&BasisElement::plain(ShiftVector::from_slice(&[1]))), expect);
        assert_eq!(up.len(), 1);
        let down = apply_simple_generator(Generator::Lower(1), &b, &ctx).unwrap();
        assert_eq!(down.coeff(&BasisElement::plain(ShiftVector::from_slice(&[-1]))), Rational::one());
        let d2 = apply_simple_generator(Generator::Diag(2), &b, &ctx).unwrap();
        assert_eq!(d2.coeff(&b), Rational::one() + &v21 + &v22 - &v11);
    }

    #[test]
    fn rank_two_commutator_matches_hand_expansion() {
        let ctx = ctx2("2/7", "1/2", "-1/5");
        let (v11, v21, v22) = (q("2/7"), q("1/2"), q("-1/5"));
        let act = GtAction::new(ctx);
        let b = TableauVector::basis(origin(2));
        let u = UEElement::generator(1, 2).commutator(&UEElement::generator(2, 1));
        let got = act.apply_ue(&u, &b).unwrap();
        let expect = Rational::from(2) * &v11 - &v21 - &v22 - Rational::one();
        assert_eq!(got.scalar_multiple_of(&origin(2)), Some(expect));
        let e12e21 = act.apply_ue(&UEElement::word(Rational::one(), vec![(1, 2), (2, 1)]), &b).unwrap();
        // E12 E21 T(v) = -(v11 - 1 - v21)(v11 - 1 - v22) T(v)
        let one = Rational::one();
        let hand = -((&v11 - &one - &v21) * (&v11 - &one - &v22));
        assert_eq!(e12e21.scalar_multiple_of(&origin(2)), Some(hand));
        assert!(act.apply_ue(&UEElement::word(Rational::zero(), vec![(1, 2)]), &b).unwrap().is_zero());
        assert_eq!(act.apply_ue(&UEElement::identity(), &b).unwrap(), b);
        assert!(act.apply_letter((1, 2), &TableauVector::zero()).unwrap().is_zero());
    }

    #[test]
    fn e11_is_v11() {
        let ctx = ctx2("2/7", "1/2", "-1/5");
        let out = apply_generator(1, 1, &TableauVector::basis(origin(2)), &ctx).unwrap();
        assert_eq!(out.scalar_multiple_of(&origin(2)), Some(q("2/7")));
    }

    #[test]
    fn casimir_words() {
        assert_eq!(casimir_generator(1, 1), UEElement::generator(1, 1));
        assert_eq!(casimir_generator(2, 1), UEElement::generator(1, 1).add(&UEElement::generator(2, 2)));
        let mut c22 = UEElement::zero();
        for w in [[(1, 1), (1, 1)], [(1, 2), (2, 1)], [(2, 1), (1, 2)], [(2, 2), (2, 2)]] {
            c22.push(Rational::one(), w.to_vec());
        }
        assert_eq!(casimir_generator(2, 2), c22);
        assert_eq!(casimir_generator(3, 3).terms().len(), 27);
    }

    #[test]
    fn rank_two_central_character() {
        // Hand expansion with v11 = w: w^2 + (1+s-w)^2 - (w-1-v21)(w-1-v22) - (w-v21)(w-v22)
        // simplifies to v21^2 + v22^2 + v21 + v22 for s = v21 + v22.
        let (v21, v22) = (q("1/2"), q("-1/5"));
        let expect2 = &v21 * &v21 + &v22 * &v22 + &v21 + &v22;
        let ctx = ctx2("2/7", "1/2", "-1/5");
        let act = GtAction::new(ctx);
        for k in [-3, 0, 4] {
            let probe = BasisElement::plain(ShiftVector::from_slice(&[k]));
            let cc = act.central_character(&probe).unwrap();
            assert_eq!(cc[0], &v21 + &v22 + Rational::one());
            assert_eq!(cc[1], expect2);
        }
    }

    #[test]
    fn weights() {
        let ctx = ModuleContext::new(
            make_tableau(2, vec![vec![q("0")], vec![q("1"), q("0")]]).unwrap(),
            Regime::FiniteDimensional,
        )
        .unwrap();
        assert_eq!(weight_of(&origin(2), &ctx), vec![q("0"), q("2")]);
        let b = BasisElement::plain(ShiftVector::from_slice(&[1]));
        assert_eq!(weight_of(&b, &ctx), vec![q("1"), q("1")]);
    }

    #[test]
    fn rank_three_off_simple_letter_support() {
        let seed = Tableau::from_top_down(3, &[q("1/7"), q("2/11"), q("3/13"), q("1/3"), q("1/5"), q("1/2")]).unwrap();
        let act = GtAction::new(ModuleContext::generic(seed).unwrap());
        let img = act.apply_letter_basis((1, 3), &origin(3)).unwrap();
        // E13 raises row 2 once and row 1 once
        for (b, _) in img.iter() {
            let z = b.z.as_slice();
            assert_eq!(z[0], 1);
            assert_eq!(z[1] + z[2], 1);
        }
        assert!(act.cache_len() > 0);
    }

    #[test]
    fn vector_json_roundtrip() {
        let mut v = TableauVector::zero();
        v.add_term(BasisElement::plain(ShiftVector::from_slice(&[0, 0, 0])), &q("-3/2"));
        v.add_term(BasisElement::derivative(ShiftVector::from_slice(&[1, 0, 2])), &q("5"));
        let s = v.to_json();
        assert!(s.contains(r#"{"basis":{"kind":"plain","z":[0,0,0]},"coeff":"-3/2"}"#));
        assert!(s.contains(r#""kind":"deriv""#));
        assert_eq!(TableauVector::from_json(&s).unwrap(), v);
        assert!(TableauVector::from_json("[{}]").is_err());
    }

    #[test]
    fn regime_preconditions() {
        let integral = make_tableau(2, vec![vec![q("0")], vec![q("1"), q("0")]]).unwrap();
        assert!(ModuleContext::generic(integral.clone()).is_ok());
        let t3 = Tableau::from_top_down(3, &[q("0"), q("1"), q("2"), q("1"), q("0"), q("0")]).unwrap();
        assert!(ModuleContext::generic(t3.clone()).is_err());
        assert!(ModuleContext::new(t3, Regime::Singular1).is_err());
        assert!(ModuleContext::new(integral, Regime::Singular1).is_err());
    }
}
