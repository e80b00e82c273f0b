use std::fs;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use ans_core::automata::{random_dfa, Alphabet, Dfa};
use ans_core::counting::{find_recurrence, CountTable};
use ans_core::growth::{
    analyze, classify, empirical_fit, feasibility, geometric_grid, signature, GrowthClass, GrowthError, LanguageClass,
    Target,
};
use ans_core::morphic::{verify_lemma_equiv, verify_lemma_l, GfAutomaton, MorphicWord, Morphism};
use ans_core::numeration::{families, NumerationError, RecognizableSet};
use num_bigint::{BigInt, BigUint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::spec::{Expectation, SpecError, SystemSpec};
use crate::{CliError, Command};

impl From<SpecError> for CliError {
    fn from(e: SpecError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<NumerationError> for CliError {
    fn from(e: NumerationError) -> Self {
        match e {
            NumerationError::InvalidParameter(m) => CliError::Usage(m),
            e => CliError::Invalid(e.to_string()),
        }
    }
}

fn load(path: &Path) -> Result<SystemSpec, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
    Ok(SystemSpec::parse(&text)?)
}

fn load_set(path: &Path) -> Result<RecognizableSet, CliError> {
    load(path)?.recognizable_set()?.ok_or_else(|| CliError::Invalid("spec has no set: block".to_string()))
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

/// Number of values recorded in generated `expect` lines.
const EXPECT_TERMS: usize = 12;

/// `expect` lines pinning `v_L`, `F`, `t_X`, the language signature and the
/// class of `x`, as currently computed.
pub fn expectations(x: &RecognizableSet) -> Vec<Expectation> {
    let language = x.system().counts();
    let mut expect = vec![
        Expectation::V((0..EXPECT_TERMS).map(|n| language.v(n)).collect()),
        Expectation::F((0..EXPECT_TERMS).map(|n| x.v_rep(n)).collect()),
        Expectation::T(x.elements().take(EXPECT_TERMS).collect()),
    ];
    if let Ok(sig) = signature(x.system().dfa()) {
        expect.push(Expectation::Signature(sig.to_string()));
    }
    if let Ok(Ok(class)) = analyze(x).map(|a| a.class) {
        expect.push(Expectation::Class(class.to_string()));
    }
    expect
}

fn emit(spec: &SystemSpec, out_path: Option<&Path>, out: &mut dyn Write) -> Result<(), CliError> {
    match out_path {
        Some(p) => fs::write(p, spec.to_string())?,
        None => write!(out, "{spec}")?,
    }
    Ok(())
}

pub(crate) fn dispatch(command: Command, out: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Rep { spec, n } => {
            let system = load(&spec)?.system()?;
            let n = BigUint::from_str(&n).map_err(|_| CliError::Usage(format!("not a nonnegative integer: {n:?}")))?;
            writeln!(out, "{}", system.rep(&n))?;
        }
        Command::Val { spec, word } => {
            let system = load(&spec)?.system()?;
            let word = if word == "eps" { "" } else { word.as_str() };
            writeln!(out, "{}", system.val(word)?)?;
        }
        Command::Enum { spec, from, to, csv } => {
            let x = load_set(&spec)?;
            if csv {
                x.write_csv(out, from, to)?;
            } else {
                let count = to.saturating_sub(from).saturating_add(1) as usize;
                let values: Vec<BigUint> = x.elements_from(&BigUint::from(from)).take(count).collect();
                writeln!(out, "{}", join(&values))?;
            }
        }
        Command::Counts { spec, set, nmax, csv } => {
            let spec = load(&spec)?;
            let dfa = if set {
                spec.recognizable_set()?
                    .ok_or_else(|| CliError::Invalid("spec has no set: block".to_string()))?
                    .rep_dfa()
                    .clone()
            } else {
                spec.system()?.dfa().clone()
            };
            counts(&dfa, nmax, csv, out)?;
        }
        Command::Growth { spec, set } => {
            let spec = load(&spec)?;
            let dfa = if set {
                spec.recognizable_set()?
                    .ok_or_else(|| CliError::Invalid("spec has no set: block".to_string()))?
                    .rep_dfa()
                    .clone()
            } else {
                spec.system()?.dfa().clone()
            };
            match signature(&dfa) {
                Ok(sig) => writeln!(out, "{sig}")?,
                Err(GrowthError::FiniteLanguage) => writeln!(out, "sig finite")?,
                Err(GrowthError::EmptyLanguage) => writeln!(out, "sig empty")?,
                Err(e) => return Err(CliError::Invalid(e.to_string())),
            }
        }
        Command::Predict { spec } => {
            let x = load_set(&spec)?;
            writeln!(out, "{}", predict(&x)?)?;
        }
        Command::Verify { spec, nmax, fit } => verify(&load(&spec)?, nmax, fit, out)?,
        Command::Construct { family, params, out: path } => {
            let x = construct(&family, &params)?;
            let name = std::iter::once(family.clone()).chain(params.iter().map(usize::to_string)).collect::<Vec<_>>();
            let mut spec = SystemSpec::from_set(&name.join("-"), &x);
            spec.expect = expectations(&x);
            emit(&spec, path.as_deref(), out)?;
        }
        Command::Fixture { name, list, out: path } => {
            if list {
                for f in families::fixtures() {
                    writeln!(out, "{}", f.name)?;
                }
                return Ok(());
            }
            let name = name.ok_or_else(|| CliError::Usage("fixture name or --list required".to_string()))?;
            let f = families::fixture(&name).ok_or_else(|| CliError::Usage(format!("unknown fixture {name:?}")))?;
            let mut spec = SystemSpec::from_set(f.name, &f.set);
            spec.expect = expectations(&f.set);
            emit(&spec, path.as_deref(), out)?;
        }
        Command::Associated { spec, prefix } => {
            let x = load_set(&spec)?;
            let gf = GfAutomaton::new(&x).map_err(|e| CliError::Invalid(e.to_string()))?;
            write!(out, "{}", gf.morphism)?;
            writeln!(out, "alpha={}", gf.morphism.name(gf.alpha))?;
            let word = gf.characteristic_word().map_err(|e| CliError::Invalid(e.to_string()))?;
            writeln!(out, "prefix={}", word.prefix_string(prefix))?;
        }
        Command::FixedPoint { morphism, seed, prefix } => {
            let text =
                fs::read_to_string(&morphism).map_err(|e| CliError::Invalid(format!("{}: {e}", morphism.display())))?;
            let m = Morphism::parse(&text).map_err(|e| CliError::Invalid(e.to_string()))?;
            let a = m.index_of(&seed).ok_or_else(|| CliError::Usage(format!("unknown letter {seed:?}")))?;
            let word = MorphicWord::fixed_point(m, a).map_err(|e| CliError::Invalid(e.to_string()))?;
            writeln!(out, "{}", word.prefix_string(prefix))?;
        }
        Command::Feasibility { logexp, power } => {
            match feasibility(&Target::LogPower { log_exponent: logexp, power }) {
                Ok(c) => {
                    writeln!(out, "construction={c:?}")?;
                    writeln!(out, "{}", predict(&c.build()?)?)?;
                }
                Err(trace) => {
                    write!(out, "{trace}")?;
                    return Err(CliError::Infeasible(format!("no recognizable set has this growth (k={})", trace.k)));
                }
            }
        }
        Command::Selfcheck { seed } => selfcheck(seed, out)?,
    }
    Ok(())
}

fn counts(dfa: &Dfa, nmax: usize, csv: bool, out: &mut dyn Write) -> Result<(), CliError> {
    let table = CountTable::new(dfa.clone());
    if csv {
        table.write_csv(out, nmax)?;
        return Ok(());
    }
    writeln!(out, "u={}", join(&table.u_prefix(nmax + 1)))?;
    writeln!(out, "v={}", join(&table.v_prefix(nmax + 1)))?;
    let order = dfa.num_states() + 1;
    let terms = (3 * order).max(nmax + 1);
    for (key, seq) in [("u", table.u_prefix(terms)), ("v", table.v_prefix(terms))] {
        let seq: Vec<BigInt> = seq.into_iter().map(BigInt::from).collect();
        match find_recurrence(&seq, order) {
            Ok(rec) => writeln!(out, "recurrence_{key}={rec}")?,
            Err(e) => writeln!(out, "recurrence_{key}=none ({e})")?,
        }
    }
    Ok(())
}

fn predict(x: &RecognizableSet) -> Result<GrowthClass, CliError> {
    if !x.is_infinite() {
        return Err(CliError::Invalid("set is finite".to_string()));
    }
    let a = analyze(x).map_err(|e| CliError::Invalid(e.to_string()))?;
    a.class.map_err(|v| CliError::Infeasible(format!("{v} (language {}, set {})", a.language, a.set)))
}

fn construct(family: &str, params: &[usize]) -> Result<RecognizableSet, CliError> {
    let want = |k: usize| {
        if params.len() == k {
            Ok(())
        } else {
            Err(CliError::Usage(format!("{family} takes {k} parameter(s), got {}", params.len())))
        }
    };
    let natural = |s| RecognizableSet::natural(s);
    Ok(match family {
        "base" => {
            want(1)?;
            natural(families::base(params[0] as u32)?)
        }
        "unary" => {
            want(0)?;
            natural(families::unary())
        }
        "bounded" => {
            want(1)?;
            natural(families::bounded(params[0])?)
        }
        "fibonacci" => {
            want(0)?;
            natural(families::fibonacci())
        }
        "squares" => {
            want(0)?;
            families::squares_set()
        }
        "rational_power" => {
            want(2)?;
            families::rational_power(params[0], params[1])?
        }
        "logpoly" => {
            want(2)?;
            families::logpoly(params[0], params[1])?
        }
        "inverse_logpoly" => {
            want(2)?;
            families::inverse_logpoly(params[0], params[1])?
        }
        _ => return Err(CliError::Usage(format!("unknown family {family:?}"))),
    })
}

/// Collects `key=value` report lines and remembers whether any failed.
struct Report<'a> {
    out: &'a mut dyn Write,
    failed: bool,
}

impl Report<'_> {
    fn line(&mut self, key: &str, pass: bool, detail: &str) -> std::io::Result<()> {
        self.failed |= !pass;
        let verdict = if pass { "PASS" } else { "FAIL" };
        if detail.is_empty() {
            writeln!(self.out, "{key}={verdict}")
        } else {
            writeln!(self.out, "{key}={verdict} {detail}")
        }
    }

    fn finish(self) -> Result<(), CliError> {
        writeln!(self.out, "result={}", if self.failed { "FAIL" } else { "PASS" })?;
        if self.failed {
            Err(CliError::Failed)
        } else {
            Ok(())
        }
    }
}

fn first_mismatch(expected: &[BigUint], found: &[BigUint]) -> Option<usize> {
    (0..expected.len()).find(|&n| found.get(n) != Some(&expected[n]))
}

fn check_sequence(report: &mut Report, key: &str, expected: &[BigUint], found: &[BigUint]) -> std::io::Result<()> {
    match first_mismatch(expected, found) {
        None => report.line(key, true, &format!("terms={}", expected.len())),
        Some(n) => {
            let got = found.get(n).map_or("none".to_string(), ToString::to_string);
            report.line(key, false, &format!("n={n} expected={} found={got}", expected[n]))
        }
    }
}

/// Grid exponents and tolerances of the empirical fit.
const FIT_GRID: (u32, u32, u32) = (10, 16, 4);
const FIT_SPREAD: f64 = 8.0;
const STRETCHED_AT: u64 = 100_000;
const STRETCHED_BAND: (f64, f64) = (0.85, 1.15);

fn verify(spec: &SystemSpec, nmax: usize, fit: bool, out: &mut dyn Write) -> Result<(), CliError> {
    let system = spec.system()?;
    let x = match spec.recognizable_set()? {
        Some(x) => x,
        None => RecognizableSet::natural(system.clone()),
    };
    writeln!(out, "name={}", spec.name)?;
    let mut report = Report { out, failed: false };
    for e in &spec.expect {
        let key = format!("expect_{}", e.key());
        match e {
            Expectation::V(xs) => {
                let found: Vec<BigUint> = (0..xs.len()).map(|n| system.counts().v(n)).collect();
                check_sequence(&mut report, &key, xs, &found)?;
            }
            Expectation::F(xs) => {
                let found: Vec<BigUint> = (0..xs.len()).map(|n| x.v_rep(n)).collect();
                check_sequence(&mut report, &key, xs, &found)?;
            }
            Expectation::T(xs) => {
                let found: Vec<BigUint> = x.elements().take(xs.len()).collect();
                check_sequence(&mut report, &key, xs, &found)?;
            }
            Expectation::Signature(s) => {
                let found = signature(system.dfa()).map(|g| g.to_string()).unwrap_or_else(|e| e.to_string());
                report.line(&key, found == *s, &format!("found={found:?}"))?;
            }
            Expectation::Class(s) => {
                let found = match analyze(&x) {
                    Ok(a) => a.class.map(|c| c.to_string()).unwrap_or_else(|v| v.to_string()),
                    Err(e) => e.to_string(),
                };
                report.line(&key, found == *s, &format!("found={found:?}"))?;
            }
        }
    }
    if x.is_infinite() {
        match verify_lemma_l(&x, nmax) {
            Ok(r) => report.line("lemma_l", true, &format!("nmax={}", r.n_max))?,
            Err(e) => report.line("lemma_l", false, &e.to_string())?,
        }
        match verify_lemma_equiv(&x, nmax.max(1000)) {
            Ok(r) => report.line("lemma_equiv", true, &format!("nmax={}", r.n_max))?,
            Err(e) => report.line("lemma_equiv", false, &e.to_string())?,
        }
    } else {
        writeln!(report.out, "lemma_l=SKIP finite set")?;
    }
    if fit {
        match predict(&x) {
            Err(e) => report.line("fit", false, &e.to_string())?,
            Ok(class) if class.is_stretched() => {
                let r = empirical_fit(&x, &class, &[STRETCHED_AT])?;
                let ratio = r.points[0].1;
                let pass = r.within_band(STRETCHED_BAND.0, STRETCHED_BAND.1);
                report.line("fit", pass, &format!("n={STRETCHED_AT} log_ratio={ratio:.4}"))?;
            }
            Ok(class) => {
                let (from, to, per) = FIT_GRID;
                let r = empirical_fit(&x, &class, &geometric_grid(from, to, per))?;
                let detail =
                    format!("grid=2^{from}..2^{to} min={:.4} max={:.4} spread={:.4}", r.min(), r.max(), r.spread());
                report.line("fit", r.within_spread(FIT_SPREAD), &detail)?;
            }
        }
    }
    report.finish()
}

/// Empirical class from `v(n)` at two lengths: constant means finite,
/// `ln v(2000) > 120` exponential (any exponential rate of a small
/// automaton exceeds `2^(1/6)`), polynomial otherwise.
fn empirical_class(dfa: &Dfa) -> LanguageClass {
    let table = CountTable::new(dfa.clone());
    let (a, b) = (table.v(1000), table.v(2000));
    if a == b {
        LanguageClass::Finite
    } else if b.bits() as f64 * std::f64::consts::LN_2 > 120.0 {
        LanguageClass::Exponential
    } else {
        LanguageClass::Polynomial
    }
}

fn selfcheck(seed: u64, out: &mut dyn Write) -> Result<(), CliError> {
    writeln!(out, "seed={seed}")?;
    let mut report = Report { out, failed: false };
    let fixtures = families::fixtures();

    let mut bad = None;
    for f in &fixtures {
        let s = f.system();
        for (n, w) in s.words().take(2000).enumerate() {
            if s.val_indices(&w).ok() != Some(BigUint::from(n)) {
                bad.get_or_insert(format!("{} n={n}", f.name));
            }
        }
    }
    report.line("roundtrip", bad.is_none(), bad.as_deref().unwrap_or("n<2000"))?;

    let mut bad = None;
    for f in &fixtures {
        if let Err(e) = verify_lemma_l(&f.set, 40).and_then(|_| verify_lemma_equiv(&f.set, 500)) {
            bad.get_or_insert(format!("{}: {e}", f.name));
        }
    }
    report.line("lemmas", bad.is_none(), bad.as_deref().unwrap_or(&format!("fixtures={}", fixtures.len())))?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sigma = Alphabet::parse("abc").expect("static alphabet");
    let mut bad = None;
    for i in 0..20 {
        let q = rng.gen_range(1..=6);
        let dfa = random_dfa(&mut rng, &sigma, q, 0.6);
        let table = CountTable::new(dfa);
        let seq: Vec<BigInt> = table.u_prefix(4 * q).into_iter().map(BigInt::from).collect();
        let ok = find_recurrence(&seq[..3 * q], q).is_ok_and(|rec| rec.predict(&seq[..3 * q], q) == seq[3 * q..]);
        if !ok {
            bad.get_or_insert(format!("dfa={i}"));
        }
    }
    report.line("recurrence", bad.is_none(), bad.as_deref().unwrap_or("dfas=20"))?;

    let mut bad = None;
    for i in 0..50 {
        let q = rng.gen_range(1..=6);
        let dfa = random_dfa(&mut rng, &sigma, q, 0.5).trim();
        if dfa.is_empty_language() {
            continue;
        }
        if classify(&dfa) != empirical_class(&dfa) {
            bad.get_or_insert(format!("dfa={i}"));
        }
    }
    report.line("classify", bad.is_none(), bad.as_deref().unwrap_or("dfas=50"))?;
    report.finish()
}
