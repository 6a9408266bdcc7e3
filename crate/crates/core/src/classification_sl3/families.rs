//! Family tables for the minimal and principal orbits of sl_3, seed
//! construction and verification drivers.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::RegionPredicate;
use crate::admissibility::{gl_to_top_row, sl_to_gl_weight, AdmissibleLevel, SlWeight};
use crate::error::{Error, Result};
use crate::gt_action::{BasisElement, GtAction, ModuleContext, Regime};
use crate::modules_generic::{
    enumerate_basis, multiplicity_census_with_margin, verify_closure, verify_relations, BasisPredicate, Census,
    ClosureReport, ModuleSpec, RegionReading, RelationOptions, RelationsReport, Window,
};
use crate::scalars::Rational;
use crate::tableaux::Tableau;

/// Free parameters that must avoid integral differences with the seed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FreeParam {
    Y,
    Z,
    A,
    C,
}

impl FromStr for FreeParam {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "y" => Ok(FreeParam::Y),
            "z" => Ok(FreeParam::Z),
            "a" => Ok(FreeParam::A),
            "c" => Ok(FreeParam::C),
            other => Err(Error::Invalid(format!("unknown free parameter {other:?}"))),
        }
    }
}

impl fmt::Display for FreeParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FreeParam::Y => "y",
            FreeParam::Z => "z",
            FreeParam::A => "a",
            FreeParam::C => "c",
        };
        f.write_str(s)
    }
}

/// An entry of rows 2 and 1 of a seed: a top-row entry or a free parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Sym {
    Top(usize),
    Free(FreeParam),
}

use FreeParam::{A, C, Y, Z};
use Sym::{Free, Top};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyOrbit {
    Minimal,
    Principal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MultiplicityProfile {
    /// Every weight space has dimension at most `t`.
    BoundedByT,
    /// Every weight space has dimension exactly `t`.
    EqualT,
    /// Finite but unbounded; reported, not asserted.
    Unbounded,
    /// Infinite; checked as strict growth across nested windows.
    Infinite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModuleClass {
    HighestWeight,
    Sl2Induced,
    Cuspidal,
}

/// One row of a family table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyDescriptor {
    pub id: &'static str,
    pub orbit: FamilyOrbit,
    /// Name of the seed in the tables (`v`, `v1`, `u`, `vbar`, ...).
    pub seed_name: &'static str,
    /// `(v21, v22, v11)`.
    pub lower: [Sym; 3],
    pub regime: Regime,
    pub free: &'static [FreeParam],
    pub region: &'static str,
    pub profile: MultiplicityProfile,
    pub class: ModuleClass,
}

// Minimal-orbit top row is (c, x, x - t): Top(0) = c, Top(1) = x.
const V: [Sym; 3] = [Top(0), Top(1), Top(0)];
const V1: [Sym; 3] = [Top(0), Top(1), Free(Z)];
const V2: [Sym; 3] = [Free(Y), Top(1), Free(Z)];
const V3: [Sym; 3] = [Free(Z), Top(1), Free(Z)];
const U: [Sym; 3] = [Top(1), Top(0), Top(1)];
const U1: [Sym; 3] = [Top(1), Free(Y), Top(1)];
const VBAR: [Sym; 3] = [Top(1), Top(1), Top(1)];
const VBAR1: [Sym; 3] = [Top(1), Top(1), Free(Z)];
// Principal-orbit top row is (x, y, z): Top(0) = x.
const PBAR: [Sym; 3] = [Top(0), Top(0), Top(0)];
const PBAR1: [Sym; 3] = [Top(0), Top(0), Free(A)];
const PBAR2: [Sym; 3] = [Free(A), Free(A), Free(A)];
const PBAR3: [Sym; 3] = [Free(A), Free(A), Free(C)];

macro_rules! family {
    ($id:expr, $orbit:ident, $name:expr, $lower:expr, $regime:ident, [$($free:ident),*], $region:expr, $profile:ident, $class:ident) => {
        FamilyDescriptor {
            id: $id,
            orbit: FamilyOrbit::$orbit,
            seed_name: $name,
            lower: $lower,
            regime: Regime::$regime,
            free: &[$($free),*],
            region: $region,
            profile: MultiplicityProfile::$profile,
            class: ModuleClass::$class,
        }
    };
}

/// All families, minimal orbit first.
pub static FAMILIES: &[FamilyDescriptor] = &[
    family!("L1", Minimal, "v", V, Generic, [], "-t<n<=0; m<=0; k<=m", BoundedByT, HighestWeight),
    family!("L2", Minimal, "v", V, Generic, [], "-t<n<=0; m<=0; m<k", BoundedByT, HighestWeight),
    family!("L3", Minimal, "v", V, Generic, [], "-t<n<=0; 0<m; k<=m", BoundedByT, HighestWeight),
    family!("L4", Minimal, "v", V, Generic, [], "-t<n<=0; 0<m; m<k", BoundedByT, HighestWeight),
    family!("L5", Minimal, "v1", V1, Generic, [Z], "-t<n<=0; m<=0", BoundedByT, Sl2Induced),
    family!("L6", Minimal, "v1", V1, Generic, [Z], "-t<n<=0; 0<m", BoundedByT, Sl2Induced),
    family!("L7", Minimal, "v2", V2, Generic, [Z, Y], "-t<n<=0", EqualT, Cuspidal),
    family!("L8", Minimal, "v3", V3, Generic, [Z], "-t<n<=0; m<k", BoundedByT, Sl2Induced),
    family!("L9", Minimal, "v3", V3, Generic, [Z], "-t<n<=0; k<=m", BoundedByT, Sl2Induced),
    family!("L10", Minimal, "u", U, Generic, [], "-t<m<=0; n<=0; k<=m", BoundedByT, HighestWeight),
    family!("L11", Minimal, "u", U, Generic, [], "-t<m<=0; n<=0; m<k", BoundedByT, HighestWeight),
    family!("L12", Minimal, "u", U, Generic, [], "-t<m<=0; 0<n; k<=m", BoundedByT, HighestWeight),
    family!("L13", Minimal, "u", U, Generic, [], "-t<m<=0; 0<n; m<k", BoundedByT, HighestWeight),
    family!("L14", Minimal, "u1", U1, Generic, [Y], "-t<m<=0; k<=m", BoundedByT, Sl2Induced),
    family!("L15", Minimal, "u1", U1, Generic, [Y], "-t<m<=0; m<k", BoundedByT, Sl2Induced),
    family!("L16", Minimal, "vbar", VBAR, Singular1, [], "-t<n<=0; m<=-t; m<k<=n", BoundedByT, HighestWeight),
    family!("L17", Minimal, "vbar", VBAR, Singular1, [], "-t<m<=0; 0<n; m<k<=n", BoundedByT, HighestWeight),
    family!(
        "L18",
        Minimal,
        "vbar",
        VBAR,
        Singular1,
        [],
        "m<=n; -t<m<=0; 0<n; k<=m | m<=n; -t<m<=0; n<=0; k<=n | n<m; -t<m<=0; k<=n",
        BoundedByT,
        HighestWeight
    ),
    family!(
        "L19",
        Minimal,
        "vbar",
        VBAR,
        Singular1,
        [],
        "m<=n; -t<m<=0; n<k | n<m; -t<m<=0; n<=-t; m<k | n<m; -t<m<=0; -t<n<=0; n<k",
        BoundedByT,
        HighestWeight
    ),
    family!("L20", Minimal, "vbar1", VBAR1, Singular1, [Z], "m<=n; -t<m<=0 | n<m; -t<m<=0", EqualT, Cuspidal),
    family!(
        "S-L1",
        Principal,
        "vbar",
        PBAR,
        Singular1,
        [],
        "m<=0; 0<n; k<=m | m<=0; n<=0; k<=n",
        Unbounded,
        Sl2Induced
    ),
    family!("S-L2", Principal, "vbar", PBAR, Singular1, [], "0<m; 0<n; n<k | 0<m; n<=0; m<k", Unbounded, Sl2Induced),
    family!("S-L3", Principal, "vbar", PBAR, Singular1, [], "m<=0; n<k", Unbounded, Sl2Induced),
    family!("S-L4", Principal, "vbar", PBAR, Singular1, [], "0<m; k<=n", Unbounded, Sl2Induced),
    family!("S-L5", Principal, "vbar", PBAR, Singular1, [], "m<=0<n; m<k<=n", Infinite, Cuspidal),
    family!("S-L6", Principal, "vbar1", PBAR1, Singular1, [A], "m<=n; m<=0 | n<m; m<=0", Infinite, Cuspidal),
    family!("S-L7", Principal, "vbar1", PBAR1, Singular1, [A], "m<=n; 0<m | n<m; 0<m", Infinite, Cuspidal),
    family!("S-L8", Principal, "vbar2", PBAR2, Singular1, [A], "m<=n; k<=n | n<m; k<=n", Infinite, Cuspidal),
    family!("S-L9", Principal, "vbar2", PBAR2, Singular1, [A], "m<=n; n<k | n<m; n<k", Infinite, Cuspidal),
    family!("S-L10", Principal, "vbar3", PBAR3, Singular1, [A, C], "full", Infinite, Cuspidal),
];

/// The L20 region as printed in the source table. Its second clause bounds `n`
/// instead of `m`; the result is not closed and has weight multiplicity `2t`
/// away from the diagonal. [`FAMILIES`] uses the `-t<m<=0` reading.
pub const L20_PRINTED_REGION: &str = "m<=n; -t<m<=0 | n<m; -t<n<=0";

pub fn family(id: &str) -> Result<&'static FamilyDescriptor> {
    FAMILIES
        .iter()
        .find(|f| f.id.eq_ignore_ascii_case(id))
        .ok_or_else(|| Error::Invalid(format!("unknown family {id:?}")))
}

pub fn families_of(orbit: FamilyOrbit) -> impl Iterator<Item = &'static FamilyDescriptor> {
    FAMILIES.iter().filter(move |f| f.orbit == orbit)
}

/// Level data of a family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyData {
    /// Highest weight `(lambda1 - a p/q, lambda2)`.
    Minimal { lambda1: i64, lambda2: i64, a: i64 },
    /// Highest weight `lambda - (p/q)(mu + rho)`.
    Principal { lambda: [i64; 2], mu: [i64; 2] },
}

/// Top row, `t` (zero for the principal orbit) and the base point for free parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeedConstants {
    pub top: [Rational; 3],
    pub t: i64,
    pub base: Rational,
}

fn require_rank3(level: &AdmissibleLevel) -> Result<()> {
    if level.n != 3 {
        return Err(Error::Rank { expected: 3, got: level.n });
    }
    Ok(())
}

/// `c`, `x`, `t` for the minimal orbit; `(x, y, z)` for the principal orbit.
pub fn seed_constants(level: &AdmissibleLevel, data: &FamilyData) -> Result<SeedConstants> {
    require_rank3(level)?;
    let (p, q) = (level.p, level.q);
    let pq = Rational::new(p, q);
    match *data {
        FamilyData::Minimal { lambda1, lambda2, a } => {
            if q < 2 {
                return Err(Error::OrbitEmpty(format!("minimal orbit needs q >= 2, got q = {q}")));
            }
            if lambda1 < 0 || lambda2 < 0 || lambda1 + lambda2 > p - 3 {
                return Err(Error::ConstraintViolation(format!(
                    "need lambda1, lambda2 >= 0 and lambda1 + lambda2 <= p - 3 = {}, got ({lambda1}, {lambda2})",
                    p - 3
                )));
            }
            if !(1..q).contains(&a) {
                return Err(Error::ConstraintViolation(format!("need 1 <= a <= q - 1 = {}, got a = {a}", q - 1)));
            }
            let apq = Rational::from(a) * &pq;
            let three = Rational::from(3);
            let c = (Rational::from(lambda2 + 2 * lambda1) - Rational::from(2) * &apq) / &three;
            let x = (Rational::from(lambda2 - lambda1) + &apq) / &three - Rational::one();
            let t = lambda2 + 1;
            let xt = &x - Rational::from(t);
            Ok(SeedConstants { top: [c, x.clone(), xt], t, base: x })
        }
        FamilyData::Principal { lambda, mu } => {
            if q < 3 {
                return Err(Error::OrbitEmpty(format!("principal orbit needs q >= 3, got q = {q}")));
            }
            if lambda.iter().chain(&mu).any(|&v| v < 0) || lambda[0] + lambda[1] > p - 3 || mu[0] + mu[1] > q - 3 {
                return Err(Error::ConstraintViolation(format!(
                    "need lambda1 + lambda2 <= {} and mu1 + mu2 <= {} with nonnegative entries, got {lambda:?}, {mu:?}",
                    p - 3,
                    q - 3
                )));
            }
            let weight = SlWeight(
                lambda.iter().zip(&mu).map(|(&l, &m)| Rational::from(l) - &pq * Rational::from(m + 1)).collect(),
            );
            let top = gl_to_top_row(&sl_to_gl_weight(&weight));
            let base = top[0].clone();
            Ok(SeedConstants { top: [top[0].clone(), top[1].clone(), top[2].clone()], t: 0, base })
        }
    }
}

const PARAMETER_PRIMES: [i64; 22] =
    [7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97];

fn clashes(value: &Rational, avoid: &[Rational]) -> Option<Rational> {
    avoid.iter().find(|a| (value - *a).is_integer()).cloned()
}

/// Deterministic choice of `needed` parameters: the first candidates
/// `base + i/p_i` (`p_i` = 7, 11, 13, ...) whose differences with `avoid`
/// and with earlier choices are all non-integral.
pub fn choose_free_parameters(
    avoid: &[Rational],
    base: &Rational,
    needed: &[FreeParam],
) -> BTreeMap<FreeParam, Rational> {
    let mut taken: Vec<Rational> = avoid.to_vec();
    let mut out = BTreeMap::new();
    let mut next = 0usize;
    for &p in needed {
        loop {
            let i = next;
            next += 1;
            let den = PARAMETER_PRIMES[i % PARAMETER_PRIMES.len()] * (1 + (i / PARAMETER_PRIMES.len()) as i64);
            let cand = base + Rational::new(i as i64 + 1, den);
            if clashes(&cand, &taken).is_none() {
                taken.push(cand.clone());
                out.insert(p, cand);
                break;
            }
        }
    }
    out
}

/// Options for [`build_family_with`].
#[derive(Clone, Debug, Default)]
pub struct BuildOptions {
    /// Supplied free parameters; missing ones are chosen automatically.
    pub params: BTreeMap<FreeParam, Rational>,
    pub reading: RegionReading,
}

/// A family instantiated at concrete level data.
#[derive(Clone, Debug, Serialize)]
pub struct FamilyModule {
    pub descriptor: &'static FamilyDescriptor,
    pub data: FamilyData,
    pub level: AdmissibleLevel,
    pub constants: SeedConstants,
    pub params: BTreeMap<FreeParam, Rational>,
    pub spec: ModuleSpec,
}

impl FamilyModule {
    pub fn id(&self) -> &'static str {
        self.descriptor.id
    }

    pub fn t(&self) -> i64 {
        self.constants.t
    }

    pub fn seed(&self) -> &Tableau {
        self.spec.ctx.seed()
    }
}

pub fn build_family(
    id: &str,
    level: &AdmissibleLevel,
    data: &FamilyData,
    params: &BTreeMap<FreeParam, Rational>,
) -> Result<FamilyModule> {
    build_family_with(id, level, data, &BuildOptions { params: params.clone(), reading: RegionReading::default() })
}

pub fn build_family_with(
    id: &str,
    level: &AdmissibleLevel,
    data: &FamilyData,
    opts: &BuildOptions,
) -> Result<FamilyModule> {
    let desc = family(id)?;
    let matches = matches!(
        (desc.orbit, data),
        (FamilyOrbit::Minimal, FamilyData::Minimal { .. }) | (FamilyOrbit::Principal, FamilyData::Principal { .. })
    );
    if !matches {
        return Err(Error::Invalid(format!("family {} needs {:?}-orbit level data", desc.id, desc.orbit)));
    }
    let constants = seed_constants(level, data)?;
    if let Some(extra) = opts.params.keys().find(|p| !desc.free.contains(p)) {
        return Err(Error::Invalid(format!("family {} has no free parameter {extra}", desc.id)));
    }
    let mut avoid: Vec<Rational> = constants.top.to_vec();
    for (p, v) in &opts.params {
        if let Some(hit) = clashes(v, &avoid) {
            return Err(Error::ParameterClash(format!("{p} = {v} differs from {hit} by an integer")));
        }
        avoid.push(v.clone());
    }
    let missing: Vec<FreeParam> = desc.free.iter().copied().filter(|p| !opts.params.contains_key(p)).collect();
    let mut params = opts.params.clone();
    params.extend(choose_free_parameters(&avoid, &constants.base, &missing));
    let value = |s: Sym| -> Rational {
        match s {
            Sym::Top(i) => constants.top[i].clone(),
            Sym::Free(p) => params[&p].clone(),
        }
    };
    let [v21, v22, v11] = desc.lower;
    let mut flat: Vec<Rational> = constants.top.to_vec();
    flat.extend([value(v21), value(v22), value(v11)]);
    let seed = Tableau::from_top_down(3, &flat)?;
    let ctx = ModuleContext::new(seed, desc.regime)?;
    let region = RegionPredicate::new(desc.region, constants.t)?;
    let spec = ModuleSpec::new(ctx, BasisPredicate::Region { region, reading: opts.reading })?.with_label(desc.id);
    Ok(FamilyModule { descriptor: desc, data: data.clone(), level: level.clone(), constants, params, spec })
}

/// Settings for [`verify_family`].
#[derive(Clone, Debug)]
pub struct FamilyCheck {
    /// Radius of the closure, relation and census window.
    pub radius: i64,
    pub relations: RelationOptions,
    /// Radii compared for infinite and unbounded families.
    pub growth_radii: Vec<i64>,
}

impl Default for FamilyCheck {
    fn default() -> Self {
        FamilyCheck {
            radius: 6,
            relations: RelationOptions { max_probes: Some(12), ..RelationOptions::default() },
            growth_radii: vec![4, 6, 8],
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusSummary {
    pub members: usize,
    pub weights: usize,
    pub interior_weights: usize,
    pub interior_margin: i64,
    pub min_interior: usize,
    pub max_interior: usize,
    pub max_count: usize,
    pub plain: usize,
    pub derivative: usize,
}

impl CensusSummary {
    fn new(census: &Census, basis: &[BasisElement]) -> Self {
        let derivative = basis.iter().filter(|b| b.kind == crate::gt_action::Kind::Derivative).count();
        CensusSummary {
            members: census.total(),
            weights: census.counts.len(),
            interior_weights: census.interior.len(),
            interior_margin: census.interior_margin,
            min_interior: census.min_interior(),
            max_interior: census.max_interior(),
            max_count: census.max_count(),
            plain: basis.len() - derivative,
            derivative,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyReport {
    pub family: &'static str,
    pub t: i64,
    pub seed: Tableau,
    pub params: BTreeMap<FreeParam, Rational>,
    pub window: Window,
    pub closure: ClosureReport,
    pub relations: RelationsReport,
    pub census: CensusSummary,
    pub profile: MultiplicityProfile,
    /// `(radius, largest weight multiplicity)` for growth checks.
    pub growth: Vec<(i64, usize)>,
    pub multiplicity_pass: bool,
    pub pass: bool,
}

/// Interior margin used for multiplicity claims: `t + 1`.
pub fn interior_margin(fm: &FamilyModule) -> i64 {
    fm.t() + 1
}

/// Closure, relations and the claimed multiplicity profile on symmetric windows.
pub fn verify_family(fm: &FamilyModule, check: &FamilyCheck) -> Result<FamilyReport> {
    let t = fm.t();
    if check.radius < 2 * t + 2 {
        return Err(Error::ConstraintViolation(format!("radius {} < 2t + 2 = {}", check.radius, 2 * t + 2)));
    }
    let w = Window::symmetric(3, check.radius);
    let closure = verify_closure(&fm.spec, &w, 1)?;
    let relations = verify_relations(&fm.spec, &w, &check.relations)?;
    let basis = enumerate_basis(&fm.spec, &w);
    let census = multiplicity_census_with_margin(&fm.spec, &w, interior_margin(fm));
    let summary = CensusSummary::new(&census, &basis);
    let profile = fm.descriptor.profile;
    let mut growth = Vec::new();
    if matches!(profile, MultiplicityProfile::Infinite | MultiplicityProfile::Unbounded) {
        for &r in &check.growth_radii {
            let c = multiplicity_census_with_margin(&fm.spec, &Window::symmetric(3, r), interior_margin(fm));
            growth.push((r, c.max_count()));
        }
    }
    let t_usize = t.max(0) as usize;
    let multiplicity_pass = match profile {
        MultiplicityProfile::BoundedByT => census.max_count() <= t_usize,
        MultiplicityProfile::EqualT => {
            !census.interior.is_empty() && census.interior_counts().all(|(_, c)| c == t_usize)
        }
        MultiplicityProfile::Unbounded => true,
        MultiplicityProfile::Infinite => growth.len() >= 2 && growth.windows(2).all(|p| p[1].1 > p[0].1),
    };
    let nonempty = summary.members > 0;
    Ok(FamilyReport {
        family: fm.id(),
        t,
        seed: fm.seed().clone(),
        params: fm.params.clone(),
        window: w,
        pass: closure.pass && relations.pass && multiplicity_pass && nonempty,
        closure,
        relations,
        census: summary,
        profile,
        growth,
        multiplicity_pass,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CharacterEntry {
    pub family: String,
    pub probe: BasisElement,
    pub character: Vec<Rational>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossCharacterReport {
    pub entries: Vec<CharacterEntry>,
    pub pass: bool,
}

/// The member of `spec` in `w` with the largest slack, first in order on ties.
pub fn interior_probe(spec: &ModuleSpec, w: &Window) -> Option<BasisElement> {
    let mut best: Option<(i64, BasisElement)> = None;
    for b in enumerate_basis(spec, w) {
        let s = w.slack(&b.z);
        if best.as_ref().is_none_or(|(bs, _)| s > *bs) {
            best = Some((s, b));
        }
    }
    best.map(|(_, b)| b)
}

/// Eigenvalues of `c_31, c_32, c_33` on an interior member of every module.
pub fn cross_character_check(modules: &[FamilyModule]) -> Result<CrossCharacterReport> {
    let mut entries = Vec::new();
    for fm in modules {
        let w = Window::symmetric(3, 2 * fm.t() + 2);
        let probe = interior_probe(&fm.spec, &w)
            .ok_or_else(|| Error::Invalid(format!("family {} has no member in {w}", fm.id())))?;
        let character = GtAction::new(fm.spec.ctx.clone()).central_character(&probe)?;
        entries.push(CharacterEntry { family: fm.id().to_string(), probe, character });
    }
    let pass = entries.windows(2).all(|p| p[0].character == p[1].character);
    Ok(CrossCharacterReport { entries, pass })
}
