//! Command-line front end: expression evaluation for the calculus
//! operations and JSON verification reports for the axiom suites.
//!
//! Exit codes: 0 = success / all checks pass, 1 = a suite reported a
//! failure (the report carries witnesses), 2 = input error.

use algebroid::chiral::{
    check_condition_lin, check_ideal_invariance, ideal_membership, u_exactness_check,
    u_normal_form, unique_flat_connection_dg, TildeUSection, Truncation,
};
use algebroid::courant::{check_courant_axioms, Connection, CourantModel};
use algebroid::parse::{
    parse_value, value_as_courant_section, value_as_field, value_as_form, value_as_polynomial,
    value_as_super, value_as_tilde_u, value_as_vertex_section,
};
use algebroid::report::SuiteConfig;
use algebroid::supercalc::SuperElement;
use algebroid::symcalc::{Form, Monomial, Rational};
use algebroid::vertex::{
    check_truncated_axioms, sign_search_report, torsor_add, torsor_diff, SignVector, VertexModel,
};
use std::collections::BTreeMap;
use std::process::ExitCode;

struct CliError(String);

impl<E: std::fmt::Display> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError(e.to_string())
    }
}

type Cli<T> = Result<T, CliError>;

#[derive(Default, Clone)]
struct Flags(BTreeMap<String, String>);

impl Flags {
    fn get(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(|s| s.as_str())
    }

    fn req(&self, key: &str) -> Cli<&str> {
        self.get(key)
            .ok_or_else(|| CliError(format!("missing required flag --{key}")))
    }

    fn u64_or(&self, key: &str, default: u64) -> Cli<u64> {
        match self.get(key) {
            None => Ok(default),
            Some(v) => v
                .parse()
                .map_err(|_| CliError(format!("flag --{key} expects an integer, got `{v}`"))),
        }
    }

    fn u32_or(&self, key: &str, default: u32) -> Cli<u32> {
        match self.get(key) {
            None => Ok(default),
            Some(v) => v
                .parse()
                .map_err(|_| CliError(format!("flag --{key} expects an integer, got `{v}`"))),
        }
    }

    fn n(&self) -> Cli<usize> {
        let n = self
            .get("n")
            .ok_or_else(|| CliError("missing required flag --n".into()))?;
        let n: usize = n
            .parse()
            .map_err(|_| CliError(format!("flag --n expects a positive integer, got `{n}`")))?;
        if n == 0 || n > 26 {
            return Err(CliError("--n must be between 1 and 26".into()));
        }
        Ok(n)
    }

    fn suite(&self, n: usize) -> Cli<SuiteConfig> {
        Ok(SuiteConfig::new(
            n,
            self.u32_or("maxdeg", 3)?,
            self.u64_or("trials", 100)?,
            self.u64_or("seed", algebroid::DEFAULT_SEED)?,
        ))
    }

    fn signs(&self) -> Cli<SignVector> {
        let mut signs = SignVector::shipped();
        for name in SignVector::field_names() {
            if let Some(v) = self.get(&format!("sign-{name}")) {
                let s: i8 = match v {
                    "1" | "+1" | "+" => 1,
                    "-1" | "-" => -1,
                    other => {
                        return Err(CliError(format!(
                            "flag --sign-{name} expects +1 or -1, got `{other}`"
                        )))
                    }
                };
                signs.set(name, s);
            }
        }
        Ok(signs)
    }

    fn twist(&self, n: usize) -> Cli<Form> {
        match self.get("twist") {
            None => Ok(Form::zero(n, 3)),
            Some(src) => {
                let v = parse_value(src, n)?;
                Ok(value_as_form(&v, n, Some(3))?)
            }
        }
    }
}

fn parse_flags(args: &[String]) -> Cli<Flags> {
    let mut map = BTreeMap::new();
    let mut i = 0;
    while i < args.len() {
        let a = &args[i];
        let Some(stripped) = a.strip_prefix("--") else {
            return Err(CliError(format!("unexpected argument `{a}`")));
        };
        let (key, value) = match stripped.split_once('=') {
            Some((k, v)) => (k.to_string(), v.to_string()),
            None => {
                let v = args
                    .get(i + 1)
                    .ok_or_else(|| CliError(format!("flag --{stripped} needs a value")))?;
                i += 1;
                (stripped.to_string(), v.clone())
            }
        };
        map.insert(key, value);
        i += 1;
    }
    // config file values are overridden by explicit flags
    if let Some(path) = map.get("config").cloned() {
        let text = std::fs::read_to_string(&path)
            .map_err(|e| CliError(format!("cannot read config `{path}`: {e}")))?;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CliError(format!("{path}:{}: expected key=value", lineno + 1)))?;
            map.entry(k.trim().to_string())
                .or_insert_with(|| v.trim().to_string());
        }
    }
    Ok(Flags(map))
}

fn emit(flags: &Flags, text: &str) -> Cli<()> {
    println!("{text}");
    if let Some(path) = flags.get("out") {
        std::fs::write(path, format!("{text}\n"))
            .map_err(|e| CliError(format!("cannot write `{path}`: {e}")))?;
    }
    Ok(())
}

fn calc(cmd: &str, flags: &Flags) -> Cli<bool> {
    let n = flags.n()?;
    let left = flags.req("left")?;
    let lval = parse_value(left, n)?;
    let out = match cmd {
        "d" => value_as_form(&lval, n, None)?.d().to_string(),
        "wedge" => {
            let rval = parse_value(flags.req("right")?, n)?;
            value_as_form(&lval, n, None)?
                .wedge(&value_as_form(&rval, n, None)?)
                .to_string()
        }
        "iota" => {
            let rval = parse_value(flags.req("right")?, n)?;
            value_as_form(&rval, n, None)?
                .contract(&value_as_field(&lval, n)?)
                .to_string()
        }
        "lie" => {
            let rval = parse_value(flags.req("right")?, n)?;
            value_as_form(&rval, n, None)?
                .lie_derivative(&value_as_field(&lval, n)?)
                .to_string()
        }
        "kappa" => value_as_form(&lval, n, None)?
            .poincare_homotopy()?
            .to_string(),
        other => return Err(CliError(format!("unknown calc subcommand `{other}`"))),
    };
    emit(flags, &out)?;
    Ok(true)
}

fn courant(cmd: &str, flags: &Flags) -> Cli<bool> {
    let n = flags.n()?;
    match cmd {
        "bracket" | "pairing" => {
            let model = CourantModel::new(n, flags.twist(n)?)?;
            let q1 = value_as_courant_section(&parse_value(flags.req("left")?, n)?, n)?;
            let q2 = value_as_courant_section(&parse_value(flags.req("right")?, n)?, n)?;
            let out = if cmd == "bracket" {
                model.bracket(&q1, &q2).to_string()
            } else {
                model.pairing(&q1, &q2).to_string()
            };
            emit(flags, &out)?;
            Ok(true)
        }
        "curvature" => {
            let model = CourantModel::new(n, flags.twist(n)?)?;
            let beta = value_as_form(&parse_value(flags.req("beta")?, n)?, n, Some(2))?;
            emit(flags, &model.curvature(&Connection::new(beta)).to_string())?;
            Ok(true)
        }
        "flat" => {
            let model = CourantModel::new(n, flags.twist(n)?)?;
            let conn = model.flat_connection();
            let curv = model.curvature(&conn);
            let doc = serde_json::json!({
                "tool_version": algebroid::report::TOOL_VERSION,
                "n": n,
                "twist": model.twist().to_string(),
                "connection": conn.b.to_string(),
                "curvature": curv.to_string(),
                "flat": curv.is_zero(),
            });
            emit(flags, &serde_json::to_string_pretty(&doc).unwrap())?;
            Ok(curv.is_zero())
        }
        "add" => {
            let h1 = value_as_form(&parse_value(flags.req("left")?, n)?, n, Some(3))?;
            let h2 = value_as_form(&parse_value(flags.req("right")?, n)?, n, Some(3))?;
            let sum = CourantModel::new(n, h1)?.add_model(&CourantModel::new(n, h2)?)?;
            emit(flags, &sum.twist().to_string())?;
            Ok(true)
        }
        "scale" => {
            let lambda = Rational::parse(flags.req("lambda")?)
                .ok_or_else(|| CliError("bad --lambda".into()))?;
            let model = CourantModel::new(n, flags.twist(n)?)?;
            emit(flags, &model.scale_model(&lambda).twist().to_string())?;
            Ok(true)
        }
        "check" => {
            let model = CourantModel::new(n, flags.twist(n)?)?;
            let cfg = flags.suite(n)?;
            let rep = check_courant_axioms(&model, &cfg);
            emit(flags, &rep.to_json())?;
            Ok(rep.passed())
        }
        other => Err(CliError(format!("unknown courant subcommand `{other}`"))),
    }
}

fn vertex(cmd: &str, flags: &Flags) -> Cli<bool> {
    let n = flags.n()?;
    let signs = flags.signs()?;
    let model = || -> Cli<_> {
        let twist = flags.twist(n)?;
        if !twist.d().is_zero() {
            return Err(CliError("twist 3-form is not closed".into()));
        }
        Ok(VertexModel::new(n, signs).twisted(twist))
    };
    match cmd {
        "bracket" | "pairing" => {
            let m = model()?;
            let v = value_as_vertex_section(&parse_value(flags.req("left")?, n)?, n)?;
            let w = value_as_vertex_section(&parse_value(flags.req("right")?, n)?, n)?;
            let out = if cmd == "bracket" {
                m.bracket(&v, &w).to_string()
            } else {
                m.pairing(&v, &w).to_string()
            };
            emit(flags, &out)?;
            Ok(true)
        }
        "star" => {
            let m = model()?;
            let f = value_as_polynomial(&parse_value(flags.req("left")?, n)?)?;
            let v = value_as_vertex_section(&parse_value(flags.req("right")?, n)?, n)?;
            emit(flags, &m.star(&f, &v).to_string())?;
            Ok(true)
        }
        "check" => {
            let m = model()?;
            let cfg = flags.suite(n)?;
            let rep = check_truncated_axioms(&m, &cfg);
            emit(flags, &rep.to_json())?;
            Ok(rep.passed())
        }
        "signsearch" => {
            let cfg = flags.suite(n)?;
            let rep = sign_search_report(n, cfg.seed, cfg.trials.max(50), cfg.maxdeg);
            let pass = !rep.survivors.is_empty();
            emit(flags, &serde_json::to_string_pretty(&rep).unwrap())?;
            Ok(pass)
        }
        "torsor-add" => {
            let q = CourantModel::new(n, flags.twist(n)?)?;
            let tv = torsor_add(&q, &VertexModel::new(n, signs));
            let doc = serde_json::json!({
                "tool_version": algebroid::report::TOOL_VERSION,
                "n": n,
                "signs": signs.to_string(),
                "twist": tv.twist().to_string(),
            });
            emit(flags, &serde_json::to_string_pretty(&doc).unwrap())?;
            Ok(true)
        }
        "torsor-diff" => {
            let base = VertexModel::new(n, signs);
            let h2 = value_as_form(&parse_value(flags.req("left")?, n)?, n, Some(3))?;
            let h1 = value_as_form(&parse_value(flags.req("right")?, n)?, n, Some(3))?;
            if !h2.d().is_zero() || !h1.d().is_zero() {
                return Err(CliError("twists must be closed".into()));
            }
            let q = torsor_diff(&base.twisted(h2), &base.twisted(h1));
            emit(flags, &q.twist().to_string())?;
            Ok(true)
        }
        other => Err(CliError(format!("unknown vertex subcommand `{other}`"))),
    }
}

/// Assemble a section from --left / --kform / --term flags.
fn chiral_section(flags: &Flags, n: usize) -> Cli<TildeUSection> {
    let mut out = TildeUSection::zero(n);
    let mut any = false;
    if let Some(src) = flags.get("left") {
        out = out.add(&value_as_tilde_u(&parse_value(src, n)?, n)?);
        any = true;
    }
    if let Some(src) = flags.get("kform") {
        let v = parse_value(src, n)?;
        out = out.add(&value_as_tilde_u(&v, n)?);
        any = true;
    }
    if let Some(items) = flags.get("term") {
        // level:coeff:field, ';'-separated list
        for part in items.split(';') {
            let bits: Vec<&str> = part.splitn(3, ':').collect();
            if bits.len() != 3 {
                return Err(CliError(format!(
                    "--term expects level:coeff:field, got `{part}`"
                )));
            }
            let level: i8 = bits[0]
                .trim()
                .parse()
                .map_err(|_| CliError(format!("bad level `{}` in --term", bits[0])))?;
            if level != -1 && level != 0 {
                return Err(CliError("term level must be -1 or 0".into()));
            }
            let coeff = value_as_super(&parse_value(bits[1], n)?, n)?;
            let field = value_as_field(&parse_value(bits[2], n)?, n)?;
            for dir in 1..=n {
                for (mono, c) in field.component(dir).terms() {
                    let mut t = TildeUSection::zero(n);
                    t.add_tensor(
                        algebroid::chiral::TensKey {
                            level,
                            field: Monomial(mono.0.clone()),
                            dir: dir as u8,
                        },
                        coeff.scale(c),
                    );
                    out = out.add(&t);
                }
            }
            any = true;
        }
    }
    if !any {
        return Err(CliError(
            "provide a section via --left, --kform and/or --term".into(),
        ));
    }
    Ok(out)
}

fn chiral(cmd: &str, flags: &Flags) -> Cli<bool> {
    let n = flags.n()?;
    let d = flags.u32_or("truncate", 3)?;
    let trunc = Truncation::new(n, d);
    let signs = flags.signs()?;
    match cmd {
        "build" => {
            let rep = u_exactness_check(&signs, trunc);
            emit(flags, &rep.to_json())?;
            Ok(rep.passed())
        }
        "member" => {
            let u = chiral_section(flags, n)?;
            let member = ideal_membership(&signs, &u, trunc)?;
            let doc = serde_json::json!({
                "tool_version": algebroid::report::TOOL_VERSION,
                "n": n,
                "truncate": d,
                "section": u.to_string(),
                "member": member,
            });
            emit(flags, &serde_json::to_string_pretty(&doc).unwrap())?;
            Ok(true)
        }
        "normal" => {
            let u = chiral_section(flags, n)?;
            let nf = u_normal_form(&signs, &u, trunc)?;
            emit(flags, &nf.to_string())?;
            Ok(true)
        }
        "check" => {
            let seed = flags.u64_or("seed", algebroid::DEFAULT_SEED)?;
            let trials = flags.u64_or("trials", 100)?;
            let invariance = check_ideal_invariance(&signs, trunc, seed, trials);
            let lin = check_condition_lin(&signs, trunc)?;
            let exact = u_exactness_check(&signs, trunc);
            let pass = invariance.passed() && lin && exact.passed();
            let doc = serde_json::json!({
                "tool_version": algebroid::report::TOOL_VERSION,
                "n": n,
                "truncate": d,
                "status": if pass { "pass" } else { "fail" },
                "condition_lin": lin,
                "invariance": serde_json::from_str::<serde_json::Value>(&invariance.to_json()).unwrap(),
                "exactness": serde_json::from_str::<serde_json::Value>(&exact.to_json()).unwrap(),
            });
            emit(flags, &serde_json::to_string_pretty(&doc).unwrap())?;
            Ok(pass)
        }
        "flat" => {
            let twist = match flags.get("twist") {
                None => SuperElement::zero(n),
                Some(src) => value_as_super(&parse_value(src, n)?, n)?,
            };
            let rep = unique_flat_connection_dg(&twist, trunc)?;
            let pass = rep.passed();
            emit(flags, &rep.to_json())?;
            Ok(pass)
        }
        other => Err(CliError(format!("unknown chiral subcommand `{other}`"))),
    }
}

const USAGE: &str = "usage: algebroid <group> <command> [--flag value ...]

groups and commands:
  calc    d | wedge | iota | lie | kappa
  courant bracket | pairing | curvature | flat | add | scale | check
  vertex  bracket | pairing | star | check | signsearch | torsor-add | torsor-diff
  chiral  build | member | normal | check | flat

common flags: --n, --maxdeg, --trials, --seed, --truncate, --twist,
  --left, --right, --beta, --lambda, --sign-<name>, --out, --config
JSON goes to stdout, diagnostics to stderr.
Exit codes: 0 pass, 1 suite failure, 2 input error.";

fn dispatch(args: &[String]) -> Cli<bool> {
    if args.len() < 2 {
        return Err(CliError(USAGE.into()));
    }
    let flags = parse_flags(&args[2..])?;
    match args[0].as_str() {
        "calc" => calc(&args[1], &flags),
        "courant" => courant(&args[1], &flags),
        "vertex" => vertex(&args[1], &flags),
        "chiral" => chiral(&args[1], &flags),
        other => Err(CliError(format!("unknown group `{other}`\n\n{USAGE}"))),
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match dispatch(&args) {
        Ok(true) => ExitCode::from(0),
        Ok(false) => ExitCode::from(1),
        Err(CliError(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(2)
        }
    }
}
