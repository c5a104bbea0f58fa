//! Command dispatch: each command builds the algebra, runs the core
//! computation and assembles a report.

use std::time::Instant;

use koszul_core::acceptance::{run_core, CriterionResult, SuiteOptions};
use koszul_core::calculus::{higher_hk, hk, Direction};
use koszul_core::duality::{
    poincare_duality_on_classes, strong_kc_verify, verify_duality_identities, CheckResult, SymmetricDuality, Verdict,
};
use koszul_core::koszul::{check_koszulness, KoszulAlgebra, KoszulComplex};
use koszul_core::random::rng;
use koszul_core::{build_algebra, Error, GradedBimodule};
use sha2::{Digest, Sha256};

use crate::report::{emit, Cell, Format, Outcome, Report, Table};
use crate::spec::{AlgebraSpec, Preset};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Wspaces,
    Koszulness,
    Hk,
    HkHigher,
    DualityVerify,
    StrongKc,
    Selftest,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Wspaces => "wspaces",
            Command::Koszulness => "koszulness",
            Command::Hk => "hk",
            Command::HkHigher => "hk-higher",
            Command::DualityVerify => "duality-verify",
            Command::StrongKc => "strong-kc",
            Command::Selftest => "selftest",
        }
    }
}

/// Coefficient bimodule for `hk` and `hk-higher`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModuleChoice {
    Algebra,
    Enveloping,
    /// `A / A_{>s}`.
    Quotient(usize),
}

impl ModuleChoice {
    pub fn parse(text: &str) -> Result<ModuleChoice, String> {
        match text {
            "A" => Ok(ModuleChoice::Algebra),
            "Ae" | "A^e" => Ok(ModuleChoice::Enveloping),
            _ => text
                .strip_prefix("quotient:")
                .and_then(|s| s.parse().ok())
                .map(ModuleChoice::Quotient)
                .ok_or_else(|| format!("module '{text}' is not A, Ae or quotient:<s>")),
        }
    }

    fn build(self, ka: &KoszulAlgebra) -> koszul_core::Result<GradedBimodule> {
        match self {
            ModuleChoice::Algebra => Ok(GradedBimodule::algebra(ka.algebra())),
            ModuleChoice::Enveloping => Ok(GradedBimodule::enveloping(ka.algebra())),
            ModuleChoice::Quotient(s) => GradedBimodule::quotient(ka.algebra(), s),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub seed: u64,
    pub trials: usize,
    pub direction: Direction,
    pub module: ModuleChoice,
    pub timing: bool,
    /// Negates the duality map in positive degrees; a negative control.
    pub inject_fault: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            seed: 0,
            trials: 20,
            direction: Direction::Cohomology,
            module: ModuleChoice::Algebra,
            timing: false,
            inject_fault: false,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{command}: {source}")]
    Compute { command: &'static str, source: Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

pub fn digest(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

fn context(command: Command) -> impl Fn(Error) -> CliError {
    move |source| CliError::Compute { command: command.name(), source }
}

fn checks_table(checks: &[CheckResult]) -> Table {
    let mut t = Table::new("checks", &["name", "cases", "nonzero", "passed", "failure"]);
    for c in checks {
        t.push(vec![
            c.name.as_str().into(),
            c.cases.into(),
            c.nonzero.into(),
            c.passed.into(),
            c.failure.clone().unwrap_or_default().into(),
        ]);
    }
    t
}

fn verdict_outcome(v: Verdict) -> Outcome {
    match v {
        Verdict::Verified => Outcome::Computed,
        Verdict::NotVerified => Outcome::Failed,
    }
}

struct Body {
    verdict: Option<String>,
    summary: Vec<(String, Cell)>,
    tables: Vec<Table>,
    outcome: Outcome,
}

impl Body {
    fn computed(tables: Vec<Table>) -> Body {
        Body { verdict: None, summary: Vec::new(), tables, outcome: Outcome::Computed }
    }
}

fn duality(ka: &KoszulAlgebra, opts: &Options) -> koszul_core::Result<SymmetricDuality> {
    let sd = SymmetricDuality::new(ka)?;
    Ok(if opts.inject_fault { sd.with_fault() } else { sd })
}

fn run_algebra(command: Command, ka: &KoszulAlgebra, opts: &Options) -> koszul_core::Result<Body> {
    let t_max = ka.max_weight();
    match command {
        Command::Wspaces => {
            let mut w = Table::new("w_spaces", &["p", "dim"]);
            for p in 0..=ka.tower().max_p() {
                w.push(vec![p.into(), ka.tower().dim(p).unwrap_or(0).into()]);
            }
            let mut a = Table::new("algebra", &["m", "dim"]);
            for (m, d) in ka.algebra().dims().into_iter().enumerate() {
                a.push(vec![m.into(), d.into()]);
            }
            let mut body = Body::computed(vec![w, a]);
            let zero = ka.tower().zero_from().map_or(Cell::from("unknown"), Cell::from);
            body.summary.push(("zero_from".into(), zero));
            Ok(body)
        }
        Command::Koszulness => {
            let k = KoszulComplex::new(ka);
            let report = check_koszulness(ka, &k)?;
            let mut weights = Table::new("weights", &["w", "exact", "augmentation_cokernel"]);
            let mut homology = Table::new("homology", &["w", "p", "dim"]);
            for we in &report.weights {
                weights.push(vec![we.w.into(), we.is_exact().into(), we.cokernel.into()]);
                for (p, d) in we.homology.iter().enumerate() {
                    homology.push(vec![we.w.into(), p.into(), (*d).into()]);
                }
            }
            let mut body = Body::computed(vec![weights, homology]);
            match report.first_failure() {
                None => body.verdict = Some("KOSZUL".into()),
                Some((w, p)) => {
                    body.verdict = Some("NOT-KOSZUL".into());
                    body.summary.push(("first_failing_weight".into(), w.into()));
                    body.summary.push(("first_failing_degree".into(), p.map_or(Cell::from("augmentation"), Cell::from)));
                }
            }
            Ok(body)
        }
        Command::Hk | Command::HkHigher => {
            let m = opts.module.build(ka)?;
            let table = hk(ka, &m, opts.direction)?;
            let mut out = Table::new("hk", &["p", "t", "dim", "edge"]);
            for s in table.slices() {
                out.push(vec![s.p.into(), s.t.into(), s.dim.into(), s.edge.into()]);
            }
            let mut body = Body::computed(vec![out]);
            body.summary.push(("direction".into(), opts.direction.name().into()));
            body.summary.push(("module".into(), m.name().into()));
            if command == Command::HkHigher {
                let a = GradedBimodule::algebra(ka.algebra());
                let mut hi = Table::new("hk_higher", &["p", "t", "dim", "edge"]);
                match higher_hk(ka, &a, &m, &table) {
                    Ok(h) => {
                        for s in &h.slices {
                            hi.push(vec![s.p.into(), s.t.into(), s.dim.into(), s.edge.into()]);
                        }
                    }
                    Err(Error::SquareNotZero(d)) => {
                        body.verdict = Some("SQUARE-NOT-ZERO".into());
                        body.summary.push(("diagnostic".into(), d.into()));
                        body.outcome = Outcome::Failed;
                    }
                    Err(e) => return Err(e),
                }
                body.tables.push(hi);
            }
            Ok(body)
        }
        Command::DualityVerify => {
            let sd = duality(ka, opts)?;
            let mut modules = vec![GradedBimodule::algebra(ka.algebra()), GradedBimodule::enveloping(ka.algebra())];
            if t_max >= 2 {
                modules.push(GradedBimodule::quotient(ka.algebra(), 2)?);
            }
            let mut g = rng(opts.seed);
            let report = verify_duality_identities(ka, &sd, &modules, opts.trials, &mut g)?;
            let poincare = poincare_duality_on_classes(ka, &sd, opts.trials, &mut g)?;
            let mut checks = report.checks.clone();
            checks.extend(poincare.checks.iter().cloned());
            let mut slices = Table::new(
                "poincare",
                &["p", "t", "cohomology_dim", "homology_t", "homology_dim", "edge", "bijective"],
            );
            for s in &poincare.slices {
                slices.push(vec![
                    s.p.into(),
                    s.t.into(),
                    s.cohomology_dim.into(),
                    s.homology_t.into(),
                    s.homology_dim.into(),
                    s.edge.into(),
                    s.bijective.into(),
                ]);
            }
            let mut higher = Table::new("higher", &["p", "t", "cohomology_dim", "homology_dim"]);
            for &(p, t, c, h) in &poincare.higher {
                higher.push(vec![p.into(), t.into(), c.into(), h.into()]);
            }
            let ok = checks.iter().all(|c| c.passed);
            let verdict = if ok { Verdict::Verified } else { Verdict::NotVerified };
            Ok(Body {
                verdict: Some(verdict.name().into()),
                summary: vec![("n".into(), sd.n().into()), ("lambda".into(), sd.lambda().to_string().into())],
                tables: vec![checks_table(&checks), slices, higher],
                outcome: verdict_outcome(verdict),
            })
        }
        Command::StrongKc => {
            let sd = duality(ka, opts)?;
            let report = strong_kc_verify(ka, &sd, opts.trials, &mut rng(opts.seed))?;
            let mut table = Table::new("hk_enveloping", &["p", "t", "dim", "edge"]);
            for &(p, t, d, e) in &report.hk {
                table.push(vec![p.into(), t.into(), d.into(), e.into()]);
            }
            let mut summary = vec![("n".into(), sd.n().into()), ("lambda".into(), sd.lambda().to_string().into())];
            summary.push(("weight_shift".into(), report.weight_shift.map_or(Cell::from("none"), Cell::from)));
            if let Some(f) = &report.failure {
                summary.push(("counterexample".into(), f.as_str().into()));
            }
            Ok(Body {
                verdict: Some(report.verdict.name().into()),
                summary,
                tables: vec![checks_table(&report.checks), table],
                outcome: verdict_outcome(report.verdict),
            })
        }
        Command::Selftest => unreachable!("selftest needs no algebra"),
    }
}

fn criteria_table(results: &[CriterionResult]) -> Table {
    let mut t = Table::new("criteria", &["id", "name", "passed", "detail"]);
    for r in results {
        t.push(vec![(r.id as usize).into(), r.name.as_str().into(), r.passed.into(), r.detail.as_str().into()]);
    }
    t
}

/// Byte-identical JSON for repeated runs with the same seed.
pub fn criterion_9(seed: u64) -> CriterionResult {
    let start = Instant::now();
    let cases = [
        (Command::StrongKc, Preset::Symmetric(2)),
        (Command::DualityVerify, Preset::Symmetric(2)),
        (Command::Koszulness, Preset::Preprojective(koszul_core::presets::dynkin_a(3))),
        (Command::Hk, Preset::Exterior(2)),
    ];
    let mut failure = None;
    for (cmd, preset) in cases {
        let spec = AlgebraSpec::preset(koszul_core::Field::Rational, 5, preset);
        let opts = Options { seed, trials: 10, ..Options::default() };
        let once = || run(cmd, Some(&spec), &opts).map(|r| emit(&r, Format::Json));
        match (once(), once()) {
            (Ok(a), Ok(b)) if a == b => {}
            (Ok(_), Ok(_)) => failure = Some(format!("{} reports differ", cmd.name())),
            (Err(e), _) | (_, Err(e)) => failure = Some(e.to_string()),
        }
        if failure.is_some() {
            break;
        }
    }
    CriterionResult {
        id: 9,
        name: "determinism".into(),
        passed: failure.is_none(),
        detail: failure.unwrap_or_else(|| "4 commands rerun with identical seeds give identical JSON".into()),
        seconds: start.elapsed().as_secs_f64(),
    }
}

/// All acceptance criteria, in order.
pub fn selftest(seed: u64) -> Vec<CriterionResult> {
    let mut results = run_core(SuiteOptions { seed, ..SuiteOptions::default() });
    results.push(criterion_9(seed));
    results
}

/// Runs one command. `spec` may be `None` only for `selftest`.
pub fn run(command: Command, spec: Option<&AlgebraSpec>, opts: &Options) -> Result<Report, CliError> {
    let start = Instant::now();
    let (body, input_digest, field, max_weight) = if command == Command::Selftest {
        let results = selftest(opts.seed);
        let ok = results.iter().all(|r| r.passed);
        let body = Body {
            verdict: Some(if ok { "PASS" } else { "FAIL" }.into()),
            summary: Vec::new(),
            tables: vec![criteria_table(&results)],
            outcome: if ok { Outcome::Computed } else { Outcome::Failed },
        };
        (body, digest(""), "Q".to_string(), 0)
    } else {
        let spec = spec.ok_or_else(|| CliError::Input(format!("{} needs a spec file or --preset", command.name())))?;
        let (q, r) = spec.build().map_err(|e| CliError::Input(e.to_string()))?;
        let ctx = context(command);
        let ka = KoszulAlgebra::new(build_algebra(&q, &r, spec.max_weight).map_err(&ctx)?).map_err(&ctx)?;
        let body = run_algebra(command, &ka, opts).map_err(&ctx)?;
        (body, digest(&spec.emit()), spec.field.to_string(), spec.max_weight)
    };
    Ok(Report {
        command: command.name().into(),
        input_digest,
        field,
        max_weight,
        seed: opts.seed,
        verdict: body.verdict,
        summary: body.summary,
        tables: body.tables,
        outcome: body.outcome,
        seconds: opts.timing.then(|| start.elapsed().as_secs_f64()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use koszul_core::Field;

    fn preset(p: Preset, t: usize) -> AlgebraSpec {
        AlgebraSpec::preset(Field::Rational, t, p)
    }

    fn column(r: &Report, table: &str, col: usize) -> Vec<Cell> {
        r.table(table).unwrap().rows.iter().map(|row| row[col].clone()).collect()
    }

    #[test]
    fn wspaces_of_symmetric_three() {
        let r = run(Command::Wspaces, Some(&preset(Preset::Symmetric(3), 4)), &Options::default()).unwrap();
        let dims: Vec<Cell> = [1, 3, 3, 1, 0].into_iter().map(|d: usize| d.into()).collect();
        assert_eq!(column(&r, "w_spaces", 1), dims);
    }

    #[test]
    fn strong_kc_on_symmetric_two() {
        let r = run(Command::StrongKc, Some(&preset(Preset::Symmetric(2), 5)), &Options::default()).unwrap();
        assert_eq!(r.verdict.as_deref(), Some("VERIFIED"));
        assert_eq!(r.outcome, Outcome::Computed);
        let opts = Options { inject_fault: true, ..Options::default() };
        let r = run(Command::StrongKc, Some(&preset(Preset::Symmetric(2), 5)), &opts).unwrap();
        assert_eq!((r.verdict.as_deref(), r.outcome), (Some("NOT-VERIFIED"), Outcome::Failed));
    }

    #[test]
    fn preprojective_a3_is_not_koszul() {
        let spec = preset(Preset::Preprojective(koszul_core::presets::dynkin_a(3)), 8);
        let r = run(Command::Koszulness, Some(&spec), &Options::default()).unwrap();
        assert_eq!(r.verdict.as_deref(), Some("NOT-KOSZUL"));
        let w = r.summary.iter().find(|(k, _)| k == "first_failing_weight").unwrap();
        assert!(matches!(w.1, Cell::Int(w) if w <= 8));
        assert_eq!(r.outcome, Outcome::Computed);
    }

    #[test]
    fn duality_needs_a_symmetric_algebra() {
        let e = run(Command::DualityVerify, Some(&preset(Preset::Exterior(2), 4)), &Options::default()).unwrap_err();
        assert!(e.to_string().starts_with("duality-verify:"), "{e}");
        assert!(run(Command::Hk, None, &Options::default()).is_err());
    }

    #[test]
    fn module_choices_parse() {
        assert_eq!(ModuleChoice::parse("Ae").unwrap(), ModuleChoice::Enveloping);
        assert_eq!(ModuleChoice::parse("quotient:3").unwrap(), ModuleChoice::Quotient(3));
        assert!(ModuleChoice::parse("B").is_err());
    }
}
