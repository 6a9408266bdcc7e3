//! Finite windows of tableau modules: basis enumeration by predicate,
//! closure and relation checks, and weight-multiplicity censuses.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::classification_sl3::RegionPredicate;
use crate::error::{Error, ParseError, Result};
use crate::gt_action::{
    weight_of, BasisElement, BasisFilter, Generator, GtAction, Kind, Letter, ModuleContext, Regime, TableauVector,
};
use crate::scalars::Rational;
use crate::tableaux::{shift_len, OmegaSet, ShiftVector, Tableau};

/// Per-coordinate bounds `lo <= z <= hi` in canonical shift order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawWindow", into = "RawWindow")]
pub struct Window {
    lo: Vec<i64>,
    hi: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct RawWindow {
    lo: Vec<i64>,
    hi: Vec<i64>,
}

impl TryFrom<RawWindow> for Window {
    type Error = Error;
    fn try_from(raw: RawWindow) -> Result<Self> {
        Window::new(raw.lo, raw.hi)
    }
}

impl From<Window> for RawWindow {
    fn from(w: Window) -> Self {
        RawWindow { lo: w.lo, hi: w.hi }
    }
}

impl Window {
    pub fn new(lo: Vec<i64>, hi: Vec<i64>) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::Shape(format!("window bounds of lengths {} and {}", lo.len(), hi.len())));
        }
        if let Some(i) = (0..lo.len()).find(|&i| lo[i] > hi[i]) {
            return Err(Error::Shape(format!("window coordinate {i} has lo {} > hi {}", lo[i], hi[i])));
        }
        Ok(Window { lo, hi })
    }

    /// `[-r, r]` on every coordinate of a rank-`n` shift.
    pub fn symmetric(n: usize, r: i64) -> Window {
        let len = shift_len(n);
        Window { lo: vec![-r.abs(); len], hi: vec![r.abs(); len] }
    }

    /// `[c - r, c + r]` around `center`.
    pub fn around(center: &ShiftVector, r: i64) -> Window {
        let c = center.as_slice();
        Window { lo: c.iter().map(|x| x - r.abs()).collect(), hi: c.iter().map(|x| x + r.abs()).collect() }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self) -> &[i64] {
        &self.lo
    }

    pub fn hi(&self) -> &[i64] {
        &self.hi
    }

    pub fn contains(&self, z: &ShiftVector) -> bool {
        z.len() == self.dim()
            && z.as_slice().iter().zip(self.lo.iter().zip(&self.hi)).all(|(x, (l, h))| l <= x && x <= h)
    }

    /// Distance to the nearest face; negative outside.
    pub fn slack(&self, z: &ShiftVector) -> i64 {
        z.as_slice()
            .iter()
            .zip(self.lo.iter().zip(&self.hi))
            .map(|(x, (l, h))| (x - l).min(h - x))
            .min()
            .unwrap_or(i64::MAX)
    }

    pub fn num_points(&self) -> u128 {
        self.lo.iter().zip(&self.hi).map(|(l, h)| (h - l + 1) as u128).product()
    }

    /// All lattice points, first coordinate most significant.
    pub fn points(&self) -> WindowPoints<'_> {
        WindowPoints { w: self, cur: Some(self.lo.clone()) }
    }

    pub fn is_subset(&self, other: &Window) -> bool {
        self.dim() == other.dim() && (0..self.dim()).all(|i| other.lo[i] <= self.lo[i] && self.hi[i] <= other.hi[i])
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.lo.iter().zip(&self.hi).map(|(l, h)| format!("[{l},{h}]")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

pub struct WindowPoints<'a> {
    w: &'a Window,
    cur: Option<Vec<i64>>,
}

impl Iterator for WindowPoints<'_> {
    type Item = ShiftVector;
    fn next(&mut self) -> Option<ShiftVector> {
        let cur = self.cur.as_mut()?;
        let out = ShiftVector::from_slice(cur);
        let mut i = cur.len();
        loop {
            if i == 0 {
                self.cur = None;
                break;
            }
            i -= 1;
            if cur[i] < self.w.hi[i] {
                cur[i] += 1;
                break;
            }
            cur[i] = self.w.lo[i];
        }
        Some(out)
    }
}

/// How a region predicate sees a singular-regime basis element.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RegionReading {
    /// The region point of a canonical element is `tau(z)`: `T(w)` for `w21 <= w22`, `DT(w)` otherwise.
    #[default]
    Tab,
    /// The region point is the canonical shift itself.
    Canonical,
}

/// Which lattice points of the window belong to the module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum BasisPredicate {
    FullLattice,
    /// Shifts with the same `Omega+` as `reference`.
    OmegaClass {
        reference: ShiftVector,
    },
    /// `Omega+ = {(r, s, s)}`.
    Verma,
    Region {
        region: RegionPredicate,
        #[serde(default)]
        reading: RegionReading,
    },
    /// `w_rs - w_{r-1,s}` nonnegative integral for rows above `sub_rank`.
    Induced {
        sub_rank: usize,
    },
    /// Integral patterns `v_{k+1,i} - v_{ki} >= 0` and `v_{ki} - v_{k+1,i+1} >= 1`.
    Interlacing,
}

/// A seed together with a basis predicate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleSpec {
    pub ctx: ModuleContext,
    pub predicate: BasisPredicate,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Deserialize)]
struct RawSpec {
    seed: Option<Tableau>,
    regime: Option<Regime>,
    ctx: Option<RawCtx>,
    predicate: BasisPredicate,
    label: Option<String>,
}

#[derive(Deserialize)]
struct RawCtx {
    seed: Tableau,
    regime: Regime,
}

impl ModuleSpec {
    pub fn new(ctx: ModuleContext, predicate: BasisPredicate) -> Result<Self> {
        let n = ctx.n();
        match &predicate {
            BasisPredicate::OmegaClass { reference } => {
                if ctx.regime() != Regime::Generic {
                    return Err(Error::Invalid("Omega+ classes need the generic regime".into()));
                }
                if reference.len() != shift_len(n) {
                    return Err(Error::Shape(format!("reference shift of length {} for rank {n}", reference.len())));
                }
            }
            BasisPredicate::Region { .. } if n != 3 => return Err(Error::Rank { expected: 3, got: n }),
            BasisPredicate::Induced { sub_rank } if !(2..=3).contains(sub_rank) || *sub_rank >= n => {
                return Err(Error::Invalid(format!("induced sub-rank {sub_rank} invalid for rank {n}")));
            }
            BasisPredicate::Interlacing if ctx.regime() != Regime::FiniteDimensional => {
                return Err(Error::Invalid("interlacing patterns need the finite-dimensional regime".into()));
            }
            _ => {}
        }
        Ok(ModuleSpec { ctx, predicate, label: None })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn n(&self) -> usize {
        self.ctx.n()
    }

    /// Accepts `{"ctx": {"seed", "regime"}, "predicate"}` or a flat `{"seed", "regime", "predicate"}`.
    pub fn from_json(s: &str) -> Result<Self> {
        let raw: RawSpec = serde_json::from_str(s).map_err(|e| ParseError::Json(e.to_string()))?;
        let (seed, regime) = match (raw.ctx, raw.seed) {
            (Some(ctx), _) => (ctx.seed, ctx.regime),
            (None, Some(seed)) => (seed, raw.regime.unwrap_or(Regime::Generic)),
            (None, None) => return Err(ParseError::Json("module spec needs a seed".into()).into()),
        };
        let spec = ModuleSpec::new(ModuleContext::new(seed, regime)?, raw.predicate)?;
        Ok(ModuleSpec { label: raw.label, ..spec })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("module spec serializes")
    }

    /// Precomputed membership test.
    pub fn membership(&self) -> Membership {
        let seed = self.ctx.seed().clone();
        let kind = match &self.predicate {
            BasisPredicate::FullLattice => MemberKind::All,
            BasisPredicate::OmegaClass { reference } => MemberKind::Omega(seed.shift(reference).omega_plus()),
            BasisPredicate::Verma => {
                let n = seed.n();
                let target = (2..=n).flat_map(|r| (1..r).map(move |s| (r, s, s))).collect();
                MemberKind::Omega(OmegaSet(target))
            }
            BasisPredicate::Region { region, reading } => {
                let tau = self.ctx.regime() == Regime::Singular1 && *reading == RegionReading::Tab;
                MemberKind::Region(region.clone(), tau)
            }
            BasisPredicate::Induced { sub_rank } => MemberKind::Induced(*sub_rank),
            BasisPredicate::Interlacing => MemberKind::Interlacing,
        };
        Membership { seed, kind }
    }

    pub fn filter(&self) -> BasisFilter {
        let m = self.membership();
        Arc::new(move |b: &BasisElement| m.contains(b))
    }

    pub fn contains(&self, b: &BasisElement) -> bool {
        self.membership().contains(b)
    }
}

#[derive(Clone, Debug)]
enum MemberKind {
    All,
    Omega(OmegaSet),
    Region(RegionPredicate, bool),
    Induced(usize),
    Interlacing,
}

/// Membership test built by [`ModuleSpec::membership`].
#[derive(Clone, Debug)]
pub struct Membership {
    seed: Tableau,
    kind: MemberKind,
}

impl Membership {
    pub fn contains(&self, b: &BasisElement) -> bool {
        let n = self.seed.n();
        match &self.kind {
            MemberKind::All => true,
            MemberKind::Omega(target) => &self.seed.shift(&b.z).omega_plus() == target,
            MemberKind::Region(region, tau) => {
                if *tau {
                    region.contains_point(&b.z.tau())
                } else {
                    region.contains_point(&b.z)
                }
            }
            MemberKind::Induced(sub) => (sub + 1..=n).all(|r| {
                (1..r).all(|s| {
                    (self.seed.shifted_entry(&b.z, r, s) - self.seed.shifted_entry(&b.z, r - 1, s)).is_nonneg_integer()
                })
            }),
            MemberKind::Interlacing => (1..n).all(|k| {
                (1..=k).all(|i| {
                    let here = self.seed.shifted_entry(&b.z, k, i);
                    let left = self.seed.shifted_entry(&b.z, k + 1, i) - &here;
                    let right = &here - self.seed.shifted_entry(&b.z, k + 1, i + 1);
                    left.is_nonneg_integer() && right.is_integer() && right.is_positive()
                })
            }),
        }
    }
}

/// Basis elements of `spec` inside `w`, in lexicographic order of shifts.
pub fn enumerate_basis(spec: &ModuleSpec, w: &Window) -> Vec<BasisElement> {
    let m = spec.membership();
    w.points().map(|z| spec.ctx.element_at(z)).filter(|b| m.contains(b)).collect()
}

fn simple_generators(n: usize) -> Vec<Generator> {
    (1..n).flat_map(|k| [Generator::Raise(k), Generator::Lower(k)]).collect()
}

fn generator_name(g: Generator) -> String {
    let (i, j) = g.ij();
    format!("E{i}{j}")
}

/// A nonzero matrix coefficient of a simple generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub from: BasisElement,
    pub generator: String,
    pub to: BasisElement,
    pub coeff: Rational,
}

/// Records kept per list in reports; counts are always exact.
pub const MAX_RECORDS: usize = 25;

/// Result of [`verify_closure`].
///
/// The basis `S` spans a subquotient exactly when no chain of nonzero
/// simple-generator coefficients leaves `S` and comes back. `escapes` are
/// edges from `S` to in-window non-members; they are allowed.
/// `violations` are edges from a non-member reachable from `S` back into `S`.
#[derive(Clone, Debug, Serialize)]
pub struct ClosureReport {
    pub members: usize,
    pub sources: usize,
    pub margin: i64,
    pub escape_count: usize,
    pub escapes: Vec<Edge>,
    pub outside_reached: usize,
    pub violation_count: usize,
    pub violations: Vec<Edge>,
    pub pass: bool,
}

impl ClosureReport {
    /// `S` is closed under the action inside the window (a submodule reading).
    pub fn is_submodule(&self) -> bool {
        self.escape_count == 0
    }
}

/// Checks that the basis spans a subquotient, as seen inside `w`.
///
/// Sources are members with slack at least `margin`; chains are followed
/// while they stay inside `w`.
pub fn verify_closure(spec: &ModuleSpec, w: &Window, margin: i64) -> Result<ClosureReport> {
    let margin = margin.max(1);
    let basis = enumerate_basis(spec, w);
    let members: HashSet<BasisElement> = basis.iter().cloned().collect();
    let action = GtAction::new(spec.ctx.clone());
    let gens = simple_generators(spec.n());
    let mut report = ClosureReport {
        members: basis.len(),
        sources: 0,
        margin,
        escape_count: 0,
        escapes: Vec::new(),
        outside_reached: 0,
        violation_count: 0,
        violations: Vec::new(),
        pass: true,
    };
    let mut seen: HashSet<BasisElement> = HashSet::new();
    let mut queue: VecDeque<BasisElement> = VecDeque::new();
    for b in basis.iter().filter(|b| w.slack(&b.z) >= margin) {
        report.sources += 1;
        for &g in &gens {
            for (t, c) in action.apply_simple_raw(g, b)?.iter() {
                if !w.contains(&t.z) || members.contains(t) {
                    continue;
                }
                report.escape_count += 1;
                if report.escapes.len() < MAX_RECORDS {
                    report.escapes.push(Edge {
                        from: b.clone(),
                        generator: generator_name(g),
                        to: t.clone(),
                        coeff: c.clone(),
                    });
                }
                if seen.insert(t.clone()) {
                    queue.push_back(t.clone());
                }
            }
        }
    }
    while let Some(x) = queue.pop_front() {
        report.outside_reached += 1;
        for &g in &gens {
            for (t, c) in action.apply_simple_raw(g, &x)?.iter() {
                if !w.contains(&t.z) {
                    continue;
                }
                if members.contains(t) {
                    report.violation_count += 1;
                    if report.violations.len() < MAX_RECORDS {
                        report.violations.push(Edge {
                            from: x.clone(),
                            generator: generator_name(g),
                            to: t.clone(),
                            coeff: c.clone(),
                        });
                    }
                } else if seen.insert(t.clone()) {
                    queue.push_back(t.clone());
                }
            }
        }
    }
    report.pass = report.violation_count == 0;
    Ok(report)
}

/// Which commutator pairs [`verify_relations`] checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairSelection {
    All,
    Sample { count: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationOptions {
    pub pairs: PairSelection,
    /// Minimum slack of probes; `None` means `n - 1`.
    pub margin: Option<i64>,
    /// Upper bound on probes, sampled with `probe_seed`.
    pub max_probes: Option<usize>,
    pub probe_seed: u64,
}

impl Default for RelationOptions {
    fn default() -> Self {
        RelationOptions { pairs: PairSelection::All, margin: None, max_probes: None, probe_seed: 0 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationFailure {
    pub probe: BasisElement,
    pub pair: (Letter, Letter),
    pub residual: Vec<(BasisElement, Rational)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationsReport {
    pub probes: usize,
    pub pairs: usize,
    pub checks: usize,
    pub failure_count: usize,
    pub failures: Vec<RelationFailure>,
    pub pass: bool,
}

fn all_letters(n: usize) -> Vec<Letter> {
    (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))).collect()
}

/// Checks `[E_ab, E_cd] = d_bc E_ad - d_da E_cb` exactly on interior members,
/// with the action projected onto the span of the basis.
pub fn verify_relations(spec: &ModuleSpec, w: &Window, opts: &RelationOptions) -> Result<RelationsReport> {
    let n = spec.n();
    let margin = opts.margin.unwrap_or(n as i64 - 1);
    let mut probes: Vec<BasisElement> =
        enumerate_basis(spec, w).into_iter().filter(|b| w.slack(&b.z) >= margin).collect();
    if let Some(cap) = opts.max_probes {
        if probes.len() > cap {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.probe_seed);
            probes.shuffle(&mut rng);
            probes.truncate(cap);
            probes.sort();
        }
    }
    let letters = all_letters(n);
    let mut pairs: Vec<(Letter, Letter)> = letters.iter().flat_map(|&x| letters.iter().map(move |&y| (x, y))).collect();
    if let PairSelection::Sample { count, seed } = opts.pairs {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        pairs.shuffle(&mut rng);
        pairs.truncate(count);
        pairs.sort();
    }
    let action = GtAction::with_filter(spec.ctx.clone(), spec.filter());
    let mut report = RelationsReport {
        probes: probes.len(),
        pairs: pairs.len(),
        checks: 0,
        failure_count: 0,
        failures: Vec::new(),
        pass: true,
    };
    for probe in &probes {
        let v = TableauVector::basis(probe.clone());
        for &((a, b), (c, d)) in &pairs {
            let xy = action.apply_letter((a, b), &action.apply_letter((c, d), &v)?)?;
            let yx = action.apply_letter((c, d), &action.apply_letter((a, b), &v)?)?;
            let mut residual = xy.sub(&yx);
            if b == c {
                residual = residual.sub(&action.apply_letter((a, d), &v)?);
            }
            if d == a {
                residual = residual.add(&action.apply_letter((c, b), &v)?);
            }
            report.checks += 1;
            if !residual.is_zero() {
                report.failure_count += 1;
                if report.failures.len() < MAX_RECORDS {
                    report.failures.push(RelationFailure {
                        probe: probe.clone(),
                        pair: ((a, b), (c, d)),
                        residual: residual.iter().map(|(b, c)| (b.clone(), c.clone())).collect(),
                    });
                }
            }
        }
    }
    report.pass = report.failure_count == 0;
    Ok(report)
}

/// Weight multiplicities of a window, keyed by gl weight `(gamma_1, .., gamma_n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub counts: BTreeMap<Vec<Rational>, usize>,
    /// Weights with a member of slack at least `interior_margin`.
    pub interior: BTreeSet<Vec<Rational>>,
    pub interior_margin: i64,
}

impl Census {
    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn max_count(&self) -> usize {
        self.counts.values().copied().max().unwrap_or(0)
    }

    pub fn interior_counts(&self) -> impl Iterator<Item = (&Vec<Rational>, usize)> {
        self.interior.iter().map(move |w| (w, self.counts[w]))
    }

    pub fn max_interior(&self) -> usize {
        self.interior_counts().map(|(_, c)| c).max().unwrap_or(0)
    }

    pub fn min_interior(&self) -> usize {
        self.interior_counts().map(|(_, c)| c).min().unwrap_or(0)
    }

    /// Counts keyed by sl weights `gamma_i - gamma_{i+1}`.
    pub fn sl_counts(&self, interior_only: bool) -> BTreeMap<Vec<Rational>, usize> {
        let mut out = BTreeMap::new();
        for (w, &c) in &self.counts {
            if interior_only && !self.interior.contains(w) {
                continue;
            }
            let sl: Vec<Rational> = w.windows(2).map(|p| &p[0] - &p[1]).collect();
            *out.entry(sl).or_insert(0) += c;
        }
        out
    }

    /// JSON-friendly map from a printed weight to its count.
    pub fn to_printable(&self) -> BTreeMap<String, CensusEntry> {
        self.counts
            .iter()
            .map(|(w, &c)| (format_weight(w), CensusEntry { count: c, interior: self.interior.contains(w) }))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    pub count: usize,
    pub interior: bool,
}

pub fn format_weight(w: &[Rational]) -> String {
    let parts: Vec<String> = w.iter().map(Rational::to_string).collect();
    format!("({})", parts.join(", "))
}

/// Census with interior margin 1.
pub fn multiplicity_census(spec: &ModuleSpec, w: &Window) -> Census {
    multiplicity_census_with_margin(spec, w, 1)
}

pub fn multiplicity_census_with_margin(spec: &ModuleSpec, w: &Window, interior_margin: i64) -> Census {
    let mut counts = BTreeMap::new();
    let mut interior = BTreeSet::new();
    for b in enumerate_basis(spec, w) {
        let wt = weight_of(&b, &spec.ctx);
        if w.slack(&b.z) >= interior_margin {
            interior.insert(wt.clone());
        }
        *counts.entry(wt).or_insert(0) += 1;
    }
    Census { counts, interior, interior_margin }
}

/// The report shape shared by the command-line tools.
#[derive(Clone, Debug, Serialize)]
pub struct ModuleReport {
    pub spec: ModuleSpec,
    pub window: Window,
    pub closure: ClosureReport,
    pub relations: RelationsReport,
    pub violations: Vec<Edge>,
    pub census: BTreeMap<String, CensusEntry>,
    pub pass: bool,
}

/// Closure, relations and census for one window.
pub fn verify_module(spec: &ModuleSpec, w: &Window, margin: i64, opts: &RelationOptions) -> Result<ModuleReport> {
    let closure = verify_closure(spec, w, margin)?;
    let relations = verify_relations(spec, w, opts)?;
    let census = multiplicity_census(spec, w);
    Ok(ModuleReport {
        spec: spec.clone(),
        window: w.clone(),
        violations: closure.violations.clone(),
        pass: closure.pass && relations.pass,
        closure,
        relations,
        census: census.to_printable(),
    })
}

/// Kind of a basis element as a short tag.
pub fn kind_tag(b: &BasisElement) -> &'static str {
    match b.kind {
        Kind::Plain => "plain",
        Kind::Derivative => "deriv",
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tableaux::make_tableau;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn seed(n: usize, flat: &[&str]) -> Tableau {
        Tableau::from_top_down(n, &flat.iter().map(|s| q(s)).collect::<Vec<_>>()).unwrap()
    }

    fn generic2() -> ModuleContext {
        ModuleContext::generic(seed(2, &["1/3", "-1/5", "2/7"])).unwrap()
    }

    /// Rows `v_ij = c_j` with `c = (1/2, 1/3, 1/5)`.
    fn verma3() -> ModuleContext {
        ModuleContext::generic(seed(3, &["1/2", "1/3", "1/5", "1/2", "1/3", "1/2"])).unwrap()
    }

    #[test]
    fn window_points_are_lexicographic() {
        let w = Window::new(vec![0, -1], vec![1, 0]).unwrap();
        let pts: Vec<Vec<i64>> = w.points().map(|z| z.as_slice().to_vec()).collect();
        assert_eq!(pts, vec![vec![0, -1], vec![0, 0], vec![1, -1], vec![1, 0]]);
        assert_eq!(w.num_points(), 4);
        assert!(Window::new(vec![1], vec![0]).is_err());
        let s = Window::symmetric(3, 2);
        assert_eq!(s.slack(&ShiftVector::from_slice(&[0, 1, -1])), 1);
        assert_eq!(s.slack(&ShiftVector::from_slice(&[0, 3, 0])), -1);
    }

    #[test]
    fn full_lattice_rank_two() {
        let spec = ModuleSpec::new(generic2(), BasisPredicate::FullLattice).unwrap();
        assert_eq!(enumerate_basis(&spec, &Window::symmetric(2, 2)).len(), 5);
        let closure = verify_closure(&spec, &Window::symmetric(2, 2), 1).unwrap();
        assert!(closure.pass && closure.is_submodule());
    }

    #[test]
    fn verma_rank_two_has_multiplicity_one() {
        let ctx = ModuleContext::generic(seed(2, &["1/2", "1/3", "1/2"])).unwrap();
        let spec = ModuleSpec::new(ctx, BasisPredicate::Verma).unwrap();
        let w = Window::symmetric(2, 4);
        let basis = enumerate_basis(&spec, &w);
        assert_eq!(basis.len(), 5);
        assert!(basis.iter().all(|b| b.z.get(1, 1) <= 0));
        let census = multiplicity_census(&spec, &w);
        assert!(census.counts.values().all(|&c| c == 1));
    }

    #[test]
    fn verma_rank_three_contains_seed_and_is_closed() {
        let spec = ModuleSpec::new(verma3(), BasisPredicate::Verma).unwrap();
        let w = Window::symmetric(3, 3);
        let basis = enumerate_basis(&spec, &w);
        assert!(basis.contains(&BasisElement::plain(ShiftVector::zero(3))));
        let closure = verify_closure(&spec, &w, 1).unwrap();
        assert!(closure.pass, "{closure:?}");
        let rel = verify_relations(&spec, &w, &RelationOptions::default()).unwrap();
        assert!(rel.pass && rel.checks > 0, "{rel:?}");
    }

    #[test]
    fn omega_class_of_example_seed() {
        // rows: top (1/2, 1/3, 1/5), (1/2 + 1, 1/3), (1/2)
        let t = make_tableau(3, vec![vec![q("1/2")], vec![q("3/2"), q("1/3")], vec![q("1/2"), q("1/3"), q("1/5")]])
            .unwrap();
        let ctx = ModuleContext::generic(t.clone()).unwrap();
        let spec = ModuleSpec::new(ctx, BasisPredicate::OmegaClass { reference: ShiftVector::zero(3) }).unwrap();
        let reference = t.omega_plus();
        let w = Window::symmetric(3, 2);
        let basis = enumerate_basis(&spec, &w);
        let brute: Vec<BasisElement> =
            w.points().filter(|z| t.shift(z).omega_plus() == reference).map(BasisElement::plain).collect();
        assert_eq!(basis, brute);
        assert!(verify_closure(&spec, &w, 1).unwrap().pass);
    }

    #[test]
    fn relations_hold_on_generic_rank_three() {
        let ctx = ModuleContext::generic(seed(3, &["1/2", "1/3", "1/5", "1/7", "2/11", "3/13"])).unwrap();
        let spec = ModuleSpec::new(ctx, BasisPredicate::FullLattice).unwrap();
        let opts = RelationOptions { max_probes: Some(3), ..RelationOptions::default() };
        let rel = verify_relations(&spec, &Window::symmetric(3, 3), &opts).unwrap();
        assert_eq!(rel.pairs, 81);
        assert!(rel.pass, "{rel:?}");
    }

    #[test]
    fn bad_projection_breaks_relations() {
        // An upward-closed but not downward-closed half of a generic module is a submodule;
        // a slab is neither and its projected action is not a representation.
        let ctx = ModuleContext::generic(seed(2, &["1/3", "-1/5", "2/7"])).unwrap();
        let slab = RegionPredicate::new("k <= 0", 0).unwrap();
        let ok = ModuleSpec::new(ctx.clone(), BasisPredicate::FullLattice).unwrap();
        assert!(verify_relations(&ok, &Window::symmetric(2, 3), &RelationOptions::default()).unwrap().pass);
        let three = ModuleContext::generic(seed(3, &["1/2", "1/3", "1/5", "1/7", "2/11", "3/13"])).unwrap();
        let thin =
            ModuleSpec::new(three, BasisPredicate::Region { region: slab, reading: RegionReading::Tab }).unwrap();
        let closure = verify_closure(&thin, &Window::symmetric(3, 2), 1).unwrap();
        assert!(!closure.is_submodule());
    }

    #[test]
    fn spec_json_roundtrip() {
        let spec = ModuleSpec::new(verma3(), BasisPredicate::Verma).unwrap().with_label("verma");
        let back = ModuleSpec::from_json(&spec.to_json()).unwrap();
        assert_eq!(back, spec);
        let flat = r#"{"seed":{"n":2,"rows":[["1/2"],["1/3","1/5"]]},"predicate":{"type":"full_lattice"}}"#;
        let s = ModuleSpec::from_json(flat).unwrap();
        assert_eq!(s.ctx.regime(), Regime::Generic);
        let bad =
            r#"{"seed":{"n":3,"rows":[["1/2"],["1/3","4/3"],["0","1","2"]]},"predicate":{"type":"full_lattice"}}"#;
        assert!(ModuleSpec::from_json(bad).is_err());
        let omega_sing = r#"{"ctx":{"seed":{"n":3,"rows":[["-1/2"],["-1/2","-1/2"],["-1","-1/2","-3/2"]]},"regime":"Singular1"},"predicate":{"type":"omega_class","reference":[0,0,0]}}"#;
        assert!(ModuleSpec::from_json(omega_sing).is_err());
    }

    #[test]
    fn induced_predicate_rank_three() {
        let ctx = ModuleContext::generic(seed(3, &["1/2", "1/3", "1/5", "1/2", "1/3", "1/7"])).unwrap();
        let spec = ModuleSpec::new(ctx, BasisPredicate::Induced { sub_rank: 2 }).unwrap();
        let w = Window::symmetric(3, 2);
        for b in enumerate_basis(&spec, &w) {
            assert!(b.z.get(2, 1) <= 0 && b.z.get(2, 2) <= 0);
        }
        assert!(verify_closure(&spec, &w, 1).unwrap().pass);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        /// Integral top row; denominators 7, 11, 13 keep the lower rows generic.
        fn generic_seed3() -> impl Strategy<Value = Tableau> {
            (-5i64..5, -5i64..5, -5i64..5, -5i64..5, -5i64..5, -5i64..5).prop_map(|(a, b, c, d, e, f)| {
                let top = vec![Rational::from(a), Rational::from(b), Rational::from(c)];
                let mid = vec![Rational::new(7 * d + 1, 7), Rational::new(11 * e + 2, 11)];
                let low = vec![Rational::new(13 * f + 3, 13)];
                make_tableau(3, vec![low, mid, top]).unwrap()
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(24))]

            #[test]
            fn enumeration_is_monotone(s in generic_seed3(), r in 0i64..2) {
                let spec = ModuleSpec::new(ModuleContext::generic(s).unwrap(), BasisPredicate::OmegaClass { reference: ShiftVector::zero(3) }).unwrap();
                let small: HashSet<BasisElement> = enumerate_basis(&spec, &Window::symmetric(3, r)).into_iter().collect();
                let big: HashSet<BasisElement> = enumerate_basis(&spec, &Window::symmetric(3, r + 1)).into_iter().collect();
                prop_assert!(small.is_subset(&big));
            }

            #[test]
            fn full_lattice_always_closed(s in generic_seed3()) {
                let spec = ModuleSpec::new(ModuleContext::generic(s).unwrap(), BasisPredicate::FullLattice).unwrap();
                prop_assert!(verify_closure(&spec, &Window::symmetric(3, 1), 1).unwrap().pass);
            }

            #[test]
            fn omega_classes_partition_window(s in generic_seed3()) {
                let w = Window::symmetric(3, 1);
                let mut classes: BTreeMap<Vec<(usize, usize, usize)>, usize> = BTreeMap::new();
                for z in w.points() {
                    let key: Vec<_> = s.shift(&z).omega_plus().0.into_iter().collect();
                    *classes.entry(key).or_insert(0) += 1;
                }
                let ctx = ModuleContext::generic(s.clone()).unwrap();
                let mut covered = 0;
                let mut seen_refs: HashSet<Vec<(usize, usize, usize)>> = HashSet::new();
                for z in w.points() {
                    let key: Vec<_> = s.shift(&z).omega_plus().0.into_iter().collect();
                    if !seen_refs.insert(key.clone()) {
                        continue;
                    }
                    let spec = ModuleSpec::new(ctx.clone(), BasisPredicate::OmegaClass { reference: z }).unwrap();
                    let members = enumerate_basis(&spec, &w).len();
                    prop_assert_eq!(members, classes[&key]);
                    covered += members;
                }
                prop_assert_eq!(covered as u128, w.num_points());
            }

            #[test]
            fn omega_classes_are_subquotients(s in generic_seed3(), z in proptest::collection::vec(-1i64..=1, 3)) {
                let spec = ModuleSpec::new(ModuleContext::generic(s).unwrap(), BasisPredicate::OmegaClass { reference: ShiftVector::from_slice(&z) }).unwrap();
                prop_assert!(verify_closure(&spec, &Window::symmetric(3, 2), 1).unwrap().pass);
            }
        }
    }
}
