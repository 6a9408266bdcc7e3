//! Twisted localization with respect to a lowering root vector `f = E_ij`, `i > j`.
//!
//! Elements of the localized module are kept in Ore form `f^{-L} x` with `x`
//! a tableau vector, so no inverse of `f` on the tableau basis is ever needed.
//! A twisted element `y^a` carries its marker `a`; markers are reduced to
//! `[0, 1)` with the isomorphism `y^{a0 + N} = (f^{-N} y)^{a0}`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gt_action::{
    casimir_generator, lie_bracket_letters, BasisElement, GtAction, Letter, ModuleContext, TableauVector, UEElement,
};
use crate::modules_generic::Window;
use crate::scalars::{binom_rational, Rational};

/// Upper bound on the length of an `ad f` chain before giving up.
const MAX_AD_STEPS: usize = 64;

/// A lowering root `alpha = (i, j)` with `f_alpha = E_ij`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Root {
    pub i: usize,
    pub j: usize,
}

impl Root {
    pub fn new(i: usize, j: usize, n: usize) -> Result<Self> {
        if !(j < i && i <= n && j >= 1) {
            return Err(Error::Invalid(format!("({i},{j}) is not a negative root of gl_{n}")));
        }
        Ok(Root { i, j })
    }

    /// Parses `"21"` or `"2,1"`.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let digits: Vec<usize> = s.chars().filter(|c| c.is_ascii_digit()).map(|c| c as usize - '0' as usize).collect();
        if digits.len() != 2 || s.chars().any(|c| !(c.is_ascii_digit() || c == ',' || c.is_whitespace())) {
            return Err(Error::Invalid(format!("root must look like 21 or 2,1, got {s:?}")));
        }
        Root::new(digits[0], digits[1], n)
    }

    pub fn letter(self) -> Letter {
        (self.i, self.j)
    }
}

/// `(ad f)^i (u)`. Linear inputs stay linear; words are expanded by concatenation.
pub fn ad_power(f: Letter, u: &UEElement, i: usize) -> UEElement {
    let mut cur = u.clone();
    for _ in 0..i {
        if cur.is_zero() {
            break;
        }
        cur = ad_once(f, &cur);
    }
    cur
}

fn ad_once(f: Letter, u: &UEElement) -> UEElement {
    if u.is_linear() {
        let mut out = UEElement::zero();
        for (c, w) in u.terms() {
            out = out.add(&lie_bracket_letters(f, w[0]).scale(c));
        }
        out
    } else {
        UEElement::generator(f.0, f.1).commutator(u)
    }
}

/// `sum c * word * f^e` with `e <= 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalizedElement {
    pub f: Letter,
    pub terms: Vec<(Rational, Vec<Letter>, i64)>,
}

impl LocalizedElement {
    pub fn from_ue(f: Letter, u: &UEElement) -> Self {
        LocalizedElement { f, terms: u.terms().iter().map(|(c, w)| (c.clone(), w.clone(), 0)).collect() }
    }

    /// Cancels trailing `f` letters against negative exponents and merges equal terms.
    pub fn normalize(&mut self) {
        let mut merged: BTreeMap<(Vec<Letter>, i64), Rational> = BTreeMap::new();
        for (c, mut w, mut e) in std::mem::take(&mut self.terms) {
            while e < 0 && w.last() == Some(&self.f) {
                w.pop();
                e += 1;
            }
            *merged.entry((w, e)).or_insert_with(Rational::zero) += &c;
        }
        self.terms = merged.into_iter().filter(|(_, c)| !c.is_zero()).map(|((w, e), c)| (c, w, e)).collect();
    }
}

/// `Theta_a(u) = sum_i binom(a, i) (ad f)^i(u) f^{-i}`.
pub fn theta(u: &UEElement, root: Root, a: &Rational) -> Result<LocalizedElement> {
    let f = root.letter();
    let mut out = LocalizedElement { f, terms: Vec::new() };
    let mut cur = u.clone();
    let mut i = 0usize;
    while !cur.is_zero() {
        if i > MAX_AD_STEPS {
            return Err(Error::Invalid("ad f did not terminate".into()));
        }
        let b = binom_rational(a, i as u32);
        if !b.is_zero() {
            for (c, w) in cur.terms() {
                out.terms.push((c * &b, w.clone(), -(i as i64)));
            }
        }
        cur = ad_once(f, &cur);
        i += 1;
    }
    out.normalize();
    Ok(out)
}

/// `f^{-depth} x` in the localized module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalVector {
    pub depth: u32,
    pub x: TableauVector,
}

impl LocalVector {
    pub fn from_vector(x: TableauVector) -> Self {
        LocalVector { depth: 0, x }
    }

    pub fn basis(b: BasisElement) -> Self {
        LocalVector::from_vector(TableauVector::basis(b))
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero()
    }
}

/// Exact arithmetic in the `f`-localization of a tableau module.
pub struct Localizer {
    action: GtAction,
    root: Root,
    ad_cache: std::cell::RefCell<BTreeMap<Letter, Vec<UEElement>>>,
}

impl Localizer {
    pub fn new(ctx: ModuleContext, root: Root) -> Result<Self> {
        if root.i > ctx.n() {
            return Err(Error::Invalid(format!("root ({},{}) outside gl_{}", root.i, root.j, ctx.n())));
        }
        Ok(Localizer { action: GtAction::new(ctx), root, ad_cache: Default::default() })
    }

    pub fn root(&self) -> Root {
        self.root
    }

    pub fn action(&self) -> &GtAction {
        &self.action
    }

    fn f(&self) -> Letter {
        self.root.letter()
    }

    fn f_power(&self, k: u32, x: &TableauVector) -> Result<TableauVector> {
        let mut cur = x.clone();
        for _ in 0..k {
            if cur.is_zero() {
                break;
            }
            cur = self.action.apply_letter(self.f(), &cur)?;
        }
        Ok(cur)
    }

    /// The same element written with denominator `f^depth`, `depth >= y.depth`.
    pub fn deepen(&self, y: &LocalVector, depth: u32) -> Result<LocalVector> {
        assert!(depth >= y.depth);
        Ok(LocalVector { depth, x: self.f_power(depth - y.depth, &y.x)? })
    }

    pub fn add(&self, a: &LocalVector, b: &LocalVector) -> Result<LocalVector> {
        let d = a.depth.max(b.depth);
        let (a, b) = (self.deepen(a, d)?, self.deepen(b, d)?);
        Ok(LocalVector { depth: d, x: a.x.add(&b.x) })
    }

    pub fn scale(&self, y: &LocalVector, c: &Rational) -> LocalVector {
        LocalVector { depth: y.depth, x: y.x.scale(c) }
    }

    pub fn sub(&self, a: &LocalVector, b: &LocalVector) -> Result<LocalVector> {
        self.add(a, &self.scale(b, &-Rational::one()))
    }

    /// Exact equality in the localization (both sides written over a common denominator).
    pub fn equal(&self, a: &LocalVector, b: &LocalVector) -> Result<bool> {
        Ok(self.sub(a, b)?.is_zero())
    }

    /// `f^k y` for any integer `k`.
    pub fn mul_f(&self, k: i64, y: &LocalVector) -> Result<LocalVector> {
        if k <= 0 {
            return Ok(LocalVector { depth: y.depth + (-k) as u32, x: y.x.clone() });
        }
        let k = k as u32;
        if k <= y.depth {
            Ok(LocalVector { depth: y.depth - k, x: y.x.clone() })
        } else {
            Ok(LocalVector { depth: 0, x: self.f_power(k - y.depth, &y.x)? })
        }
    }

    fn ad_chain(&self, e: Letter) -> Vec<UEElement> {
        if let Some(v) = self.ad_cache.borrow().get(&e) {
            return v.clone();
        }
        let mut chain = Vec::new();
        let mut cur = UEElement::generator(e.0, e.1);
        while !cur.is_zero() && chain.len() <= MAX_AD_STEPS {
            chain.push(cur.clone());
            cur = ad_once(self.f(), &cur);
        }
        self.ad_cache.borrow_mut().insert(e, chain.clone());
        chain
    }

    /// `E f^{-L} x = sum_j binom(L + j - 1, j) f^{-L-j} (ad f)^j(E) x`.
    pub fn act_letter(&self, e: Letter, y: &LocalVector) -> Result<LocalVector> {
        if y.depth == 0 || e == self.f() {
            let x = self.action.apply_letter(e, &y.x)?;
            return Ok(LocalVector { depth: y.depth, x });
        }
        let chain = self.ad_chain(e);
        let top = y.depth + chain.len() as u32 - 1;
        let mut acc = TableauVector::zero();
        for (j, adj) in chain.iter().enumerate() {
            let coeff = binom_rational(&Rational::from(y.depth as i64 + j as i64 - 1), j as u32);
            let img = self.action.apply_ue(adj, &y.x)?;
            let lifted = self.f_power(top - y.depth - j as u32, &img)?;
            acc.add_scaled(&lifted, &coeff);
        }
        Ok(LocalVector { depth: top, x: acc })
    }

    /// A word, rightmost letter first.
    pub fn act_word(&self, word: &[Letter], y: &LocalVector) -> Result<LocalVector> {
        let mut cur = y.clone();
        for &e in word.iter().rev() {
            if cur.is_zero() {
                break;
            }
            cur = self.act_letter(e, &cur)?;
        }
        Ok(cur)
    }

    pub fn act_ue(&self, u: &UEElement, y: &LocalVector) -> Result<LocalVector> {
        let mut acc = LocalVector::from_vector(TableauVector::zero());
        for (c, w) in u.terms() {
            let img = self.act_word(w, y)?;
            acc = self.add(&acc, &self.scale(&img, c))?;
        }
        Ok(acc)
    }

    pub fn act_localized(&self, u: &LocalizedElement, y: &LocalVector) -> Result<LocalVector> {
        let mut acc = LocalVector::from_vector(TableauVector::zero());
        for (c, w, e) in &u.terms {
            let shifted = self.mul_f(*e, y)?;
            let img = self.act_word(w, &shifted)?;
            acc = self.add(&acc, &self.scale(&img, c))?;
        }
        Ok(acc)
    }

    /// `u . y^a = (Theta_a(u) y)^a` for a word-linear `u`, applying `Theta_a` letter by letter.
    pub fn twisted_ue(&self, u: &UEElement, a: &Rational, y: &LocalVector) -> Result<LocalVector> {
        let mut acc = LocalVector::from_vector(TableauVector::zero());
        for (c, w) in u.terms() {
            let mut cur = y.clone();
            for &e in w.iter().rev() {
                if cur.is_zero() {
                    break;
                }
                let th = theta(&UEElement::generator(e.0, e.1), self.root, a)?;
                cur = self.act_localized(&th, &cur)?;
            }
            acc = self.add(&acc, &self.scale(&cur, c))?;
        }
        Ok(acc)
    }
}

/// `y^marker` in a twisted localized module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistedVector {
    pub marker: Rational,
    pub y: LocalVector,
}

impl Localizer {
    /// Reduces the marker to `[0, 1)`: `y^{a0 + N} = (f^{-N} y)^{a0}`.
    pub fn canonicalize(&self, t: &TwistedVector) -> Result<TwistedVector> {
        let n = t.marker.floor().to_i64().ok_or_else(|| Error::Invalid("marker out of range".into()))?;
        Ok(TwistedVector { marker: t.marker.fract_part(), y: self.mul_f(-n, &t.y)? })
    }

    /// `f^c . y^b = y^{b - c}`, canonicalized.
    pub fn f_twist(&self, c: &Rational, t: &TwistedVector) -> Result<TwistedVector> {
        self.canonicalize(&TwistedVector { marker: &t.marker - c, y: t.y.clone() })
    }

    /// `u . y^a = (Theta_a(u) y)^a` after canonicalization.
    pub fn twisted_act(&self, u: &UEElement, t: &TwistedVector) -> Result<TwistedVector> {
        let t = self.canonicalize(t)?;
        let y = self.twisted_ue(u, &t.marker, &t.y)?;
        Ok(TwistedVector { marker: t.marker, y })
    }

    pub fn twisted_equal(&self, a: &TwistedVector, b: &TwistedVector) -> Result<bool> {
        let (a, b) = (self.canonicalize(a)?, self.canonicalize(b)?);
        Ok(a.marker == b.marker && self.equal(&a.y, &b.y)?)
    }
}

/// Exact preimage of `b` under `f`, when `f` acts on the preimage by a single nonzero term.
///
/// Only `E_21` acts monomially on tableaux; other roots touch a row with
/// several entries and raise `NotInvertible`.
pub fn inverse_f_action(root: Root, b: &BasisElement, ctx: &ModuleContext) -> Result<TableauVector> {
    let action = GtAction::new(ctx.clone());
    let not_invertible = |reason: String| Error::NotInvertible { z: b.z.as_slice().to_vec(), reason };
    if root.letter() != (2, 1) {
        return Err(not_invertible(format!("E_{}{} changes a row with several entries", root.i, root.j)));
    }
    let mut z = b.z.clone();
    z.bump(1, 1, 1);
    let pre = BasisElement { kind: b.kind, z };
    let img = action.apply_letter(root.letter(), &TableauVector::basis(pre.clone()))?;
    match img.scalar_multiple_of(b) {
        Some(c) if !c.is_zero() && img.len() == 1 => Ok(TableauVector::basis(pre).scale(&c.recip())),
        _ => Err(not_invertible(format!("image of {pre:?} is {} term(s), not a nonzero multiple", img.len()))),
    }
}

/// `Theta_a(u) v` in Ore form.
pub fn twisted_action(
    u: &UEElement,
    root: Root,
    a: &Rational,
    vec: &TableauVector,
    ctx: &ModuleContext,
) -> Result<LocalVector> {
    Localizer::new(ctx.clone(), root)?.twisted_ue(u, a, &LocalVector::from_vector(vec.clone()))
}

/// Outcome of one identity family.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub checks: usize,
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
    pub pass: bool,
}

impl IdentityCheck {
    fn new(name: &'static str) -> Self {
        IdentityCheck { name, checks: 0, failures: 0, first_failure: None, pass: true }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            self.pass = false;
            if self.first_failure.is_none() {
                self.first_failure = Some(what());
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaReport {
    pub root: Root,
    pub a: Rational,
    pub b: Rational,
    pub probes: Vec<BasisElement>,
    pub checks: Vec<IdentityCheck>,
    pub pass: bool,
}

/// Options for [`verify_localization_lemma`].
#[derive(Clone, Debug)]
pub struct LemmaOptions {
    /// Interior margin of probe elements.
    pub margin: i64,
    /// Probes taken evenly from the interior, in lexicographic order.
    pub max_probes: usize,
}

impl Default for LemmaOptions {
    fn default() -> Self {
        LemmaOptions { margin: 1, max_probes: 3 }
    }
}

fn letters(n: usize) -> Vec<Letter> {
    (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))).collect()
}

/// Canonical elements of `w` with slack at least `margin`, thinned to `max` evenly spaced probes.
pub fn interior_probes(ctx: &ModuleContext, w: &Window, margin: i64, max: usize) -> Vec<BasisElement> {
    let all: Vec<BasisElement> = w.points().filter(|z| w.slack(z) >= margin).map(|z| ctx.element_at(z)).collect();
    if all.len() <= max || max == 0 {
        return all;
    }
    (0..max).map(|i| all[i * (all.len() - 1) / (max - 1).max(1)].clone()).collect()
}

/// Identities of twisted localization on interior probes of `w`:
/// `Theta_0 = id`, `f^a (f^b v) = f^{a+b} v`, `f^a (u (f^{-a} v)) = Theta_a(u) v`,
/// `Theta_a Theta_b = Theta_{a+b}`, bracket preservation and the central character.
pub fn verify_localization_lemma(
    root: Root,
    a: &Rational,
    b: &Rational,
    ctx: &ModuleContext,
    w: &Window,
    opts: &LemmaOptions,
) -> Result<LemmaReport> {
    let n = ctx.n();
    let loc = Localizer::new(ctx.clone(), root)?;
    let probes = interior_probes(ctx, w, opts.margin, opts.max_probes);
    if probes.is_empty() {
        return Err(Error::Invalid(format!("no probes with margin {} in {w}", opts.margin)));
    }
    let gens = letters(n);
    let zero = Rational::zero();
    let mut theta0 = IdentityCheck::new("theta_zero_identity");
    let mut iii = IdentityCheck::new("lemma_iii");
    let mut iv = IdentityCheck::new("lemma_iv");
    let mut comp = IdentityCheck::new("theta_composition");
    let mut brackets = IdentityCheck::new("bracket_preservation");
    let mut central = IdentityCheck::new("central_character");
    let ab = a + b;
    for p in &probes {
        let v = LocalVector::basis(p.clone());
        let tv = TwistedVector { marker: zero.clone(), y: v.clone() };
        for &e in &gens {
            let u = UEElement::generator(e.0, e.1);
            let plain = loc.act_ue(&u, &v)?;
            let twisted0 = loc.twisted_ue(&u, &zero, &v)?;
            theta0.record(loc.equal(&plain, &twisted0)?, || format!("E_{}{} on {p:?}", e.0, e.1));

            // f^a . (u . (f^{-a} . v)) against Theta_a(u) v
            let lhs = loc.f_twist(a, &loc.twisted_act(&u, &loc.f_twist(&-a, &tv)?)?)?;
            let rhs = TwistedVector { marker: zero.clone(), y: loc.act_localized(&theta(&u, root, a)?, &v)? };
            iv.record(loc.twisted_equal(&lhs, &rhs)?, || format!("E_{}{} on {p:?}", e.0, e.1));

            // Theta_b(Theta_a(u)) against Theta_{a+b}(u)
            let th_a = theta(&u, root, a)?;
            let mut nested = LocalVector::from_vector(TableauVector::zero());
            for (c, word, ex) in &th_a.terms {
                let shifted = loc.mul_f(*ex, &v)?;
                let img = loc.twisted_ue(&UEElement::word(Rational::one(), word.clone()), b, &shifted)?;
                nested = loc.add(&nested, &loc.scale(&img, c))?;
            }
            let direct = loc.act_localized(&theta(&u, root, &ab)?, &v)?;
            comp.record(loc.equal(&nested, &direct)?, || format!("E_{}{} on {p:?}", e.0, e.1));
        }
        let lhs = loc.f_twist(a, &loc.f_twist(b, &tv)?)?;
        let rhs = loc.f_twist(&ab, &tv)?;
        iii.record(loc.twisted_equal(&lhs, &rhs)?, || format!("on {p:?}"));

        for &x in &gens {
            for &y in &gens {
                let ux = UEElement::generator(x.0, x.1);
                let uy = UEElement::generator(y.0, y.1);
                let xy = loc.twisted_ue(&ux, a, &loc.twisted_ue(&uy, a, &v)?)?;
                let yx = loc.twisted_ue(&uy, a, &loc.twisted_ue(&ux, a, &v)?)?;
                let br = loc.twisted_ue(&lie_bracket_letters(x, y), a, &v)?;
                brackets.record(loc.equal(&loc.sub(&xy, &yx)?, &br)?, || {
                    format!("[E_{}{}, E_{}{}] on {p:?}", x.0, x.1, y.0, y.1)
                });
            }
        }

        let chars = loc.action().central_character(p)?;
        for k in 1..=n {
            let img = loc.twisted_ue(&casimir_generator(n, k), a, &v)?;
            let expected = loc.scale(&v, &chars[k - 1]);
            central.record(loc.equal(&img, &expected)?, || format!("c_{n}{k} on {p:?}"));
        }
    }
    let checks = vec![theta0, iii, iv, comp, brackets, central];
    let pass = checks.iter().all(|c| c.pass);
    Ok(LemmaReport { root, a: a.clone(), b: b.clone(), probes, checks, pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tableaux::{make_tableau, ShiftVector, Tableau};

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn gen(i: usize, j: usize) -> UEElement {
        UEElement::generator(i, j)
    }

    fn h() -> UEElement {
        gen(1, 1).sub(&gen(2, 2))
    }

    fn sl2_ctx() -> ModuleContext {
        ModuleContext::generic(make_tableau(2, vec![vec![q("1/3")], vec![q("1/2"), q("-1/5")]]).unwrap()).unwrap()
    }

    fn sl3_ctx() -> ModuleContext {
        let seed = Tableau::from_top_down(3, &[q("1/2"), q("1/3"), q("-1/5"), q("1/7"), q("2/11"), q("3/13")]).unwrap();
        ModuleContext::generic(seed).unwrap()
    }

    #[test]
    fn sl2_ad_powers() {
        let f = (2, 1);
        assert!(ad_power(f, &gen(2, 1), 1).is_zero());
        let same = |x: UEElement, y: UEElement| x.sub(&y).is_zero();
        assert!(same(ad_power(f, &gen(1, 2), 1), h().scale(&-Rational::one())));
        assert!(same(ad_power(f, &gen(1, 2), 2), gen(2, 1).scale(&Rational::from(-2))));
        assert!(ad_power(f, &gen(1, 2), 3).is_zero());
        assert!(same(ad_power(f, &h(), 1), gen(2, 1).scale(&Rational::from(2))));
    }

    #[test]
    fn theta_sl2_examples() {
        let root = Root::new(2, 1, 2).unwrap();
        let a = q("1/2");
        let tf = theta(&gen(2, 1), root, &a).unwrap();
        assert_eq!(tf.terms, vec![(Rational::one(), vec![(2, 1)], 0)]);
        // Theta_a(h) = h + 2a
        let th = theta(&h(), root, &a).unwrap();
        let mut expected = LocalizedElement { f: (2, 1), terms: vec![(Rational::from(2) * &a, vec![], 0)] };
        expected.terms.extend(h().terms().iter().map(|(c, w)| (c.clone(), w.clone(), 0)));
        expected.normalize();
        assert_eq!(th, expected);
        // Theta_a(e) = e - a h f^{-1} - a(a-1) f^{-1}
        let te = theta(&gen(1, 2), root, &a).unwrap();
        let mut expected = LocalizedElement { f: (2, 1), terms: vec![(Rational::one(), vec![(1, 2)], 0)] };
        for (c, w) in h().terms() {
            expected.terms.push((-(c * &a), w.clone(), -1));
        }
        expected.terms.push((-(&a * (&a - Rational::one())), vec![], -1));
        expected.normalize();
        assert_eq!(te, expected);
    }

    #[test]
    fn sl2_twisted_h_shifts_by_2a() {
        let ctx = sl2_ctx();
        let root = Root::new(2, 1, 2).unwrap();
        let a = q("1/2");
        let b = ctx.element_at(ShiftVector::zero(2));
        let loc = Localizer::new(ctx.clone(), root).unwrap();
        let v = LocalVector::basis(b.clone());
        let plain = loc.act_ue(&h(), &v).unwrap();
        let twisted = twisted_action(&h(), root, &a, &TableauVector::basis(b), &ctx).unwrap();
        let shifted = loc.add(&plain, &loc.scale(&v, &(Rational::from(2) * &a))).unwrap();
        assert!(loc.equal(&twisted, &shifted).unwrap());
    }

    #[test]
    fn e21_inverse() {
        let ctx = sl2_ctx();
        let root = Root::new(2, 1, 2).unwrap();
        let b = ctx.element_at(ShiftVector::zero(2));
        let pre = inverse_f_action(root, &b, &ctx).unwrap();
        let back = GtAction::new(ctx.clone()).apply_letter((2, 1), &pre).unwrap();
        assert_eq!(back, TableauVector::basis(b.clone()));
        let mut z = ShiftVector::zero(2);
        z.bump(1, 1, 1);
        assert_eq!(pre, TableauVector::basis(BasisElement::plain(z)));
    }

    #[test]
    fn e31_not_invertible() {
        let ctx = sl3_ctx();
        let root = Root::new(3, 1, 3).unwrap();
        let b = ctx.element_at(ShiftVector::zero(3));
        assert!(matches!(inverse_f_action(root, &b, &ctx), Err(Error::NotInvertible { .. })));
    }

    #[test]
    fn ore_form_inverts_f() {
        let ctx = sl3_ctx();
        for (i, j) in [(2, 1), (3, 2), (3, 1)] {
            let loc = Localizer::new(ctx.clone(), Root::new(i, j, 3).unwrap()).unwrap();
            let v = LocalVector::basis(ctx.element_at(ShiftVector::zero(3)));
            let there = loc.mul_f(-2, &v).unwrap();
            let back = loc.act_letter((i, j), &loc.act_letter((i, j), &there).unwrap()).unwrap();
            assert!(loc.equal(&back, &v).unwrap());
        }
    }

    #[test]
    fn integral_twist_is_conjugation() {
        let ctx = sl3_ctx();
        let root = Root::new(3, 2, 3).unwrap();
        let loc = Localizer::new(ctx.clone(), root).unwrap();
        let v = LocalVector::basis(ctx.element_at(ShiftVector::zero(3)));
        for e in [(1, 2), (2, 3), (1, 3), (2, 2)] {
            let u = gen(e.0, e.1);
            // f^2 u f^{-2} v
            let conj = loc.mul_f(2, &loc.act_ue(&u, &loc.mul_f(-2, &v).unwrap()).unwrap()).unwrap();
            let th = loc.twisted_ue(&u, &Rational::from(2), &v).unwrap();
            assert!(loc.equal(&conj, &th).unwrap(), "E_{}{}", e.0, e.1);
            if matches!(e, (2, 3) | (1, 3)) {
                let wrong = loc.twisted_ue(&u, &Rational::one(), &v).unwrap();
                assert!(!loc.equal(&conj, &wrong).unwrap(), "E_{}{}", e.0, e.1);
            }
        }
    }

    #[test]
    fn lemma_on_singular_context() {
        let flat: Vec<Rational> = ["-1", "-1/2", "-3/2", "-1/2", "-1/2", "-1/2"].iter().map(|s| q(s)).collect();
        let ctx =
            ModuleContext::new(Tableau::from_top_down(3, &flat).unwrap(), crate::gt_action::Regime::Singular1).unwrap();
        let w = Window::symmetric(3, 3);
        let opts = LemmaOptions { margin: 2, max_probes: 2 };
        for (i, j) in [(2, 1), (3, 1)] {
            let report =
                verify_localization_lemma(Root::new(i, j, 3).unwrap(), &q("1/2"), &q("2"), &ctx, &w, &opts).unwrap();
            assert!(report.pass, "{report:?}");
        }
    }

    #[test]
    fn lemma_sl2_half() {
        let ctx = sl2_ctx();
        let root = Root::new(2, 1, 2).unwrap();
        let w = Window::symmetric(2, 2);
        let report =
            verify_localization_lemma(root, &q("1/2"), &q("-4/3"), &ctx, &w, &LemmaOptions::default()).unwrap();
        assert!(report.pass, "{report:?}");
    }

    #[test]
    fn lemma_sl3_e32() {
        let ctx = sl3_ctx();
        let root = Root::new(3, 2, 3).unwrap();
        let w = Window::symmetric(3, 2);
        let opts = LemmaOptions { margin: 1, max_probes: 1 };
        let report = verify_localization_lemma(root, &q("-4/3"), &q("1/2"), &ctx, &w, &opts).unwrap();
        assert!(report.pass, "{report:?}");
    }

    #[test]
    fn root_parsing() {
        assert_eq!(Root::parse("21", 3).unwrap(), Root { i: 2, j: 1 });
        assert_eq!(Root::parse("3,1", 3).unwrap(), Root { i: 3, j: 1 });
        assert!(Root::parse("12", 3).is_err());
        assert!(Root::parse("41", 3).is_err());
        assert!(Root::parse("2x1", 3).is_err());
    }
}
