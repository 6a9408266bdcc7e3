use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use gtx_core::admissibility::{
    enumerate_pr_detailed, integral_roots, orbit_for_denominator, var_dimension, AdmissibleLevel, Orbit,
};
use gtx_core::classification_sl3::{
    build_family_with, cross_character_check, families_of, family, verify_family, BuildOptions, FamilyCheck,
    FamilyData, FamilyModule, FamilyOrbit, FamilyReport, FreeParam,
};
use gtx_core::gt_action::UEElement;
use gtx_core::induced::{admissible_induced_parameters, inner_parameters, simplicity_flags};
use gtx_core::localization::{theta, verify_localization_lemma, LemmaOptions, Root};
use gtx_core::modules_generic::{verify_module, ModuleSpec, RegionReading, RelationOptions, Window};
use gtx_core::scalars::Rational;

#[derive(Parser)]
#[command(name = "gtx", version, about = "Gelfand-Tsetlin realizations of admissible sl_n-modules")]
struct Cli {
    /// Print compact JSON on one line
    #[arg(long, global = true)]
    compact: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Admissible weights of an orbit, up to dot equivalence
    Admissible {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: i64,
        #[arg(long)]
        q: i64,
        /// prin | min | zero
        #[arg(long, default_value = "prin")]
        orbit: String,
    },

    /// Build (and optionally verify) sl_3 classification families
    Classify {
        #[arg(long)]
        p: i64,
        #[arg(long)]
        q: i64,
        #[arg(long, default_value_t = 0)]
        lambda1: i64,
        #[arg(long, default_value_t = 0)]
        lambda2: i64,
        /// Minimal-orbit parameter; selects the minimal families
        #[arg(long)]
        a: Option<i64>,
        /// Principal-orbit parameters; select the S-families
        #[arg(long)]
        mu1: Option<i64>,
        #[arg(long)]
        mu2: Option<i64>,
        /// Family id (L1..L20, S-L1..S-L10) or `all`
        #[arg(long, default_value = "all")]
        family: String,
        #[arg(long, default_value_t = 6)]
        radius: i64,
        #[arg(long)]
        verify: bool,
        /// Free parameters, e.g. `z=1/5,y=2/7`
        #[arg(long, value_delimiter = ',')]
        params: Vec<String>,
        #[arg(long, value_enum, default_value_t = Reading::Tab)]
        reading: Reading,
        /// Probes per relation check
        #[arg(long, default_value_t = 12)]
        max_probes: usize,
        /// Include full closure and relation records
        #[arg(long)]
        full: bool,
    },

    /// Admissible modules induced from sl_2 or sl_3
    Induce {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        sub: usize,
        #[arg(long)]
        p: i64,
        #[arg(long)]
        q: i64,
        #[arg(long, value_delimiter = ',')]
        lambdas: Vec<i64>,
        #[arg(long, value_delimiter = ',')]
        mus: Vec<i64>,
        #[arg(long, default_value_t = 3)]
        radius: i64,
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value_t = 12)]
        max_probes: usize,
    },

    /// Twisted localization of a module spec
    Twist {
        /// Lowering root, e.g. 21 or 3,1
        #[arg(long)]
        alpha: String,
        #[arg(long, value_parser = parse_rational)]
        a: Rational,
        /// Second twist parameter used by the composition identities
        #[arg(long, value_parser = parse_rational, default_value = "1/3")]
        b: Rational,
        /// ModuleSpec JSON file
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 4)]
        radius: i64,
        #[arg(long)]
        verify_lemma: bool,
        #[arg(long, default_value_t = 3)]
        max_probes: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Reading {
    Tab,
    Canonical,
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.parse::<Rational>().map_err(|e| e.to_string())
}

fn parse_params(items: &[String]) -> Result<BTreeMap<FreeParam, Rational>> {
    let mut out = BTreeMap::new();
    for item in items.iter().filter(|s| !s.is_empty()) {
        let (k, v) = item.split_once('=').with_context(|| format!("parameter {item:?} is not name=value"))?;
        let key: FreeParam = k.trim().parse()?;
        let value: Rational = v.trim().parse()?;
        out.insert(key, value);
    }
    Ok(out)
}

fn family_summary(r: &FamilyReport, full: bool) -> Result<Value> {
    if full {
        return Ok(serde_json::to_value(r)?);
    }
    Ok(json!({
        "family": r.family,
        "t": r.t,
        "seed": r.seed,
        "params": r.params,
        "window": r.window.to_string(),
        "profile": r.profile,
        "closure": {
            "members": r.closure.members,
            "escapes": r.closure.escape_count,
            "violations": r.closure.violation_count,
            "first_violation": r.closure.violations.first(),
            "pass": r.closure.pass,
        },
        "relations": {
            "probes": r.relations.probes,
            "checks": r.relations.checks,
            "failures": r.relations.failure_count,
            "first_failure": r.relations.failures.first(),
            "pass": r.relations.pass,
        },
        "census": r.census,
        "growth": r.growth,
        "multiplicity_pass": r.multiplicity_pass,
        "pass": r.pass,
    }))
}

fn admissible(n: usize, p: i64, q: i64, orbit: &str) -> Result<(Value, bool)> {
    let level = AdmissibleLevel::new(n, p, q)?;
    let orbit: Orbit = orbit.parse()?;
    let e = enumerate_pr_detailed(&level, orbit)?;
    let reps: Vec<Value> = e
        .representatives
        .iter()
        .map(|w| json!({ "weight": w, "var_dimension": var_dimension(w), "integral_roots": integral_roots(w) }))
        .collect();
    let out = json!({
        "level": level,
        "orbit": orbit.label(n).to_string(),
        "denominator_orbit": orbit_for_denominator(n, q as usize).to_string(),
        "classes": reps.len(),
        "candidates": e.candidates,
        "collisions": e.collisions,
        "representatives": reps,
    });
    Ok((out, true))
}

#[allow(clippy::too_many_arguments)]
fn classify(
    p: i64,
    q: i64,
    lambda: [i64; 2],
    a: Option<i64>,
    mu: [Option<i64>; 2],
    family_id: &str,
    radius: i64,
    verify: bool,
    params: &[String],
    reading: Reading,
    max_probes: usize,
    full: bool,
) -> Result<(Value, bool)> {
    let level = AdmissibleLevel::new(3, p, q)?;
    let all = family_id.eq_ignore_ascii_case("all");
    let orbit = if all {
        if mu.iter().any(Option::is_some) {
            FamilyOrbit::Principal
        } else {
            FamilyOrbit::Minimal
        }
    } else {
        family(family_id)?.orbit
    };
    let data = match orbit {
        FamilyOrbit::Principal => {
            if a.is_some() {
                bail!("--a belongs to the minimal orbit; principal families take --mu1/--mu2");
            }
            FamilyData::Principal { lambda, mu: [mu[0].unwrap_or(0), mu[1].unwrap_or(0)] }
        }
        FamilyOrbit::Minimal => {
            if mu.iter().any(Option::is_some) {
                bail!("--mu1/--mu2 belong to the principal orbit; minimal families take --a");
            }
            FamilyData::Minimal { lambda1: lambda[0], lambda2: lambda[1], a: a.unwrap_or(1) }
        }
    };
    let ids: Vec<&'static str> =
        if all { families_of(orbit).map(|f| f.id).collect() } else { vec![family(family_id)?.id] };
    let opts = BuildOptions {
        params: parse_params(params)?,
        reading: match reading {
            Reading::Tab => RegionReading::Tab,
            Reading::Canonical => RegionReading::Canonical,
        },
    };
    let modules: Vec<FamilyModule> = ids
        .iter()
        .map(|id| build_family_with(id, &level, &data, &opts).with_context(|| format!("building {id}")))
        .collect::<Result<_>>()?;
    let constants = &modules[0].constants;
    let mut out = json!({ "level": level, "data": data, "top_row": constants.top, "t": constants.t });
    if !verify {
        out["families"] = modules
            .iter()
            .map(|m| {
                json!({
                    "family": m.id(),
                    "seed": m.seed(),
                    "regime": m.spec.ctx.regime(),
                    "region": m.descriptor.region,
                    "params": m.params,
                    "profile": m.descriptor.profile,
                    "class": m.descriptor.class,
                })
            })
            .collect();
        return Ok((out, true));
    }
    let check = FamilyCheck {
        radius,
        relations: RelationOptions { max_probes: Some(max_probes), ..RelationOptions::default() },
        ..FamilyCheck::default()
    };
    let mut pass = true;
    let mut reports = Vec::new();
    for m in &modules {
        let r = verify_family(m, &check)?;
        pass &= r.pass;
        reports.push(family_summary(&r, full)?);
    }
    let cross = cross_character_check(&modules)?;
    pass &= cross.pass;
    out["families"] = Value::Array(reports);
    out["cross_character"] = serde_json::to_value(&cross)?;
    out["pass"] = json!(pass);
    Ok((out, pass))
}

#[allow(clippy::too_many_arguments)]
fn induce(
    n: usize,
    sub: usize,
    p: i64,
    q: i64,
    lambdas: &[i64],
    mus: &[i64],
    radius: i64,
    verify: bool,
    max_probes: usize,
) -> Result<(Value, bool)> {
    let level = AdmissibleLevel::new(n, p, q)?;
    let spec = admissible_induced_parameters(&level, sub, lambdas, mus)?;
    let simplicity = simplicity_flags(&spec);
    let mut out = json!({
        "level": level,
        "sub_rank": sub,
        "inner_level": spec.inner_level,
        "top_row": spec.seed.top_row(),
        "inner": inner_parameters(&spec),
        "seed": spec.seed,
        "simplicity": simplicity,
    });
    let mut pass = simplicity.simple;
    if verify {
        let ms = spec.module_spec()?;
        let w = Window::symmetric(n, radius);
        let opts = RelationOptions { max_probes: Some(max_probes), ..RelationOptions::default() };
        let report = verify_module(&ms, &w, 1, &opts)?;
        pass &= report.pass;
        out["closure"] = json!({
            "members": report.closure.members,
            "escapes": report.closure.escape_count,
            "violations": report.closure.violation_count,
            "pass": report.closure.pass,
        });
        out["relations"] = json!({
            "probes": report.relations.probes,
            "checks": report.relations.checks,
            "failures": report.relations.failure_count,
            "pass": report.relations.pass,
        });
        out["max_multiplicity"] = json!(report.census.values().map(|e| e.count).max().unwrap_or(0));
        out["weights"] = json!(report.census.len());
    }
    out["pass"] = json!(pass);
    Ok((out, pass))
}

fn twist(
    alpha: &str,
    a: &Rational,
    b: &Rational,
    path: &PathBuf,
    radius: i64,
    verify: bool,
    max_probes: usize,
) -> Result<(Value, bool)> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let spec = ModuleSpec::from_json(&text)?;
    let n = spec.n();
    let root = Root::parse(alpha, n)?;
    let mut thetas = serde_json::Map::new();
    for i in 1..=n {
        for j in 1..=n {
            let th = theta(&UEElement::generator(i, j), root, a)?;
            let terms: Vec<Value> =
                th.terms.iter().map(|(c, w, e)| json!({ "coeff": c, "word": w, "f_power": e })).collect();
            thetas.insert(format!("E{i}{j}"), Value::Array(terms));
        }
    }
    let mut out = json!({ "root": root, "a": a, "theta": thetas });
    let mut pass = true;
    if verify {
        let w = Window::symmetric(n, radius);
        let opts = LemmaOptions { margin: 1.max(radius / 2), max_probes };
        let report = verify_localization_lemma(root, a, b, &spec.ctx, &w, &opts)?;
        pass = report.pass;
        out["lemma"] = serde_json::to_value(&report)?;
    }
    out["pass"] = json!(pass);
    Ok((out, pass))
}

fn run(cli: &Cli) -> Result<(Value, bool)> {
    match &cli.command {
        Command::Admissible { n, p, q, orbit } => admissible(*n, *p, *q, orbit),
        Command::Classify {
            p,
            q,
            lambda1,
            lambda2,
            a,
            mu1,
            mu2,
            family,
            radius,
            verify,
            params,
            reading,
            max_probes,
            full,
        } => classify(
            *p,
            *q,
            [*lambda1, *lambda2],
            *a,
            [*mu1, *mu2],
            family,
            *radius,
            *verify,
            params,
            *reading,
            *max_probes,
            *full,
        ),
        Command::Induce { n, sub, p, q, lambdas, mus, radius, verify, max_probes } => {
            induce(*n, *sub, *p, *q, lambdas, mus, *radius, *verify, *max_probes)
        }
        Command::Twist { alpha, a, b, spec, radius, verify_lemma, max_probes } => {
            twist(alpha, a, b, spec, *radius, *verify_lemma, *max_probes)
        }
    }
}

fn main() -> Result<ExitCode> {
    let cli = Cli::parse();
    let (value, pass) = run(&cli)?;
    let text = if cli.compact { serde_json::to_string(&value)? } else { serde_json::to_string_pretty(&value)? };
    println!("{text}");
    Ok(if pass { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}
