//! One function per subcommand.

use std::fmt::Write as _;
use std::io::{self, Write};

use intiles::cmcheck::{cm_report, CmReport};
use intiles::constructions::{
    section4_counterexample, standard_tile, theorem2_exponent_report, theorem2_generate, ConstructionError,
    CounterexampleReport, ExponentReport, Rational, Theorem2Instance, Theorem2Params,
};
use intiles::corpus::{corpus as run_corpus, write_corpus, CorpusError, CorpusOptions};
use intiles::search::{minimal_tiling_period, CandidateMode, PeriodResult, PeriodStatus, SearchConfig};
use intiles::tilingset::{is_tiling, TilingError};
use intiles::IntegerSet;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::input::{self, Ingested};
use crate::report::{emit, Outcome, Timer, EXIT_FAULT, EXIT_INCONCLUSIVE, EXIT_OK};
use crate::{
    CorpusArgs, CounterexampleArgs, Format, MinPeriodArgs, Mode, SetInput, StandardArgs, Theorem2Args, TilingArgs,
};

/// Constructions allocate `O(M)` memory; refuse anything larger.
const MAX_CONSTRUCTION_MODULUS: u64 = 200_000_000;

macro_rules! usage {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(msg) => return Outcome::Usage(msg.to_string()),
        }
    };
}

fn ingest(args: &SetInput) -> Result<Ingested, String> {
    input::read_set(args.set.as_deref(), args.input.as_deref())
}

fn echo(i: &Ingested) -> serde_json::Value {
    json!({ "set": i.set, "shift": i.shift })
}

pub fn analyze(args: &SetInput, format: Format) -> Outcome {
    let timer = Timer::start();
    let input = usage!(ingest(args));
    let payload = cm_report(&input.set);
    let report = timer.report("analyze", Some(echo(&input)), payload);
    emit(format, &report, || cm_text(&input.set, &report.payload), EXIT_OK)
}

fn cm_text(set: &IntegerSet, r: &CmReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "set       {set}");
    let _ = writeln!(s, "spectrum  {:?}", r.spectrum);
    let _ = writeln!(s, "T1 {}  T2 {}", r.t1, r.t2);
    let _ = writeln!(s, "lcm(S_A)  {}  (Φ divides: {})", r.lcm_sa, r.phi_lcm_divides);
    let _ = writeln!(s, "diam      {}", r.diam);
    s
}

pub fn check_tiling(args: &TilingArgs, format: Format) -> Outcome {
    let timer = Timer::start();
    let (tile, complement, modulus) = match &args.input {
        Some(path) => {
            let f = usage!(input::read_tiling(path));
            (f.tile, f.complement, f.modulus)
        }
        None => {
            let tile = usage!(input::parse_list("set", args.set.as_deref().unwrap_or_default()));
            let complement = usage!(input::parse_list(
                "complement",
                args.complement.as_deref().unwrap_or_default()
            ));
            (tile, complement, args.modulus.unwrap_or_default())
        }
    };
    let a = usage!(Ingested::new(tile, "tile"));
    let b = usage!(Ingested::new(complement, "complement"));
    let verdict = match is_tiling(&a.set, &b.set, modulus) {
        Ok(v) => v,
        Err(TilingError::ZeroModulus) => return Outcome::Usage("--modulus must be positive".into()),
        Err(e) => return Outcome::Fault(e.to_string()),
    };
    let input = json!({
        "tile": a.set,
        "tile_shift": a.shift,
        "complement": b.set,
        "complement_shift": b.shift,
        "modulus": modulus,
    });
    let report = timer.report("check-tiling", Some(input), verdict);
    let text = || {
        let v = &report.payload;
        let mut s = format!("A = {}, B = {}, M = {modulus}\ntiles {}\n", a.set, b.set, v.tiles);
        if let Some(x) = v.direct.first_overcovered {
            let _ = writeln!(s, "residue {x} covered twice");
        }
        if let Some(x) = v.direct.first_uncovered {
            let _ = writeln!(s, "residue {x} not covered");
        }
        if let Some(d) = v.cyclotomic.failing_index {
            let _ = writeln!(s, "Φ_{d} does not divide A(X)B(X)");
        }
        s
    };
    emit(format, &report, text, EXIT_OK)
}

pub fn min_period(args: &MinPeriodArgs, format: Format) -> Outcome {
    let timer = Timer::start();
    let input = usage!(ingest(&args.set));
    let cfg = SearchConfig {
        max_modulus_override: args.cap,
        candidate_mode: match args.mode {
            Mode::Restricted => CandidateMode::Restricted,
            Mode::Unrestricted => CandidateMode::Unrestricted,
        },
        parallelism: args.jobs,
        node_budget: args.budget,
        cyclotomic_prune: args.prune,
    };
    let result = minimal_tiling_period(&input.set, &cfg);
    let code = match result.status {
        PeriodStatus::Inconclusive { .. } => EXIT_INCONCLUSIVE,
        _ => EXIT_OK,
    };
    let report = timer.report("min-period", Some(echo(&input)), result);
    emit(format, &report, || period_text(&input.set, &report.payload), code)
}

fn period_text(set: &IntegerSet, r: &PeriodResult) -> String {
    let status = match &r.status {
        PeriodStatus::Tiles { period, complement } => format!("tiles with period {period}, complement {complement}"),
        PeriodStatus::DoesNotTile => "does not tile".to_owned(),
        PeriodStatus::Inconclusive { reason } => format!("inconclusive ({reason:?})"),
    };
    format!(
        "set {set}\n{status}\ncap {}, {} moduli explored\n",
        r.cap_used,
        r.explored.len()
    )
}

#[derive(Debug, Serialize, Deserialize)]
pub struct Theorem2Payload {
    #[serde(flatten)]
    pub instance: Theorem2Instance,
    pub exponents: ExponentReport,
}

fn construction_outcome(e: ConstructionError) -> Outcome {
    match e {
        ConstructionError::InvalidParams(_) | ConstructionError::Overflow => Outcome::Usage(e.to_string()),
        ConstructionError::InvalidShift { .. } | ConstructionError::Tiling(_) => Outcome::Fault(e.to_string()),
    }
}

pub fn theorem2(args: &Theorem2Args, format: Format) -> Outcome {
    let timer = Timer::start();
    let primes = usage!(input::parse_list("p", &args.p));
    let [p1, p2, p3] = primes[..] else {
        return Outcome::Usage(format!("--p needs exactly three primes, got {}", primes.len()));
    };
    let rational = |flag: &str, v: &Option<String>| -> Result<Option<Rational>, String> {
        v.as_deref()
            .map(|s| s.parse::<Rational>().map_err(|e| format!("--{flag}: {e}")))
            .transpose()
    };
    let params = Theorem2Params {
        target_beta: usage!(rational("beta", &args.beta)),
        epsilon: usage!(rational("epsilon", &args.epsilon)),
        ..Theorem2Params::new(p1, p2, p3, args.n)
    };
    if let Err(e) = params.validate() {
        return construction_outcome(e);
    }
    let modulus = p1
        .checked_mul(p2)
        .and_then(|x| x.checked_mul(p3))
        .and_then(|x| x.checked_pow(args.n));
    if !modulus.is_some_and(|m| m <= MAX_CONSTRUCTION_MODULUS) {
        return Outcome::Usage(format!("modulus (p1 p2 p3)^n exceeds {MAX_CONSTRUCTION_MODULUS}"));
    }
    let instance = match theorem2_generate(&params) {
        Ok(i) => i,
        Err(e) => return construction_outcome(e),
    };
    let exponents = theorem2_exponent_report(&instance);
    let code = if instance.validation.all_pass() {
        EXIT_OK
    } else {
        EXIT_FAULT
    };
    if code == EXIT_FAULT {
        eprintln!("internal fault: generated instance failed validation");
    }
    let report = timer.report("construct theorem2", None, Theorem2Payload { instance, exponents });
    let text = || {
        let p = &report.payload;
        let (i, v) = (&p.instance, &p.instance.validation);
        let mut s = String::new();
        let _ = writeln!(s, "primes {:?}, n = {}", i.params.primes(), i.params.n);
        let _ = writeln!(s, "M = {}, |A| = {}, diam(A) = {}", i.modulus, i.tile.len(), i.diam);
        let _ = writeln!(s, "A ⊕ B0 tiles {}, A ⊕ B tiles {}", v.a_b0_tiles, v.a_b_tiles);
        let _ = writeln!(s, "least period of B0 {}, of B {}", v.least_period_b0, v.least_period_b);
        let _ = writeln!(s, "log M / log diam(A) = {:.4}", p.exponents.achieved_exponent);
        let _ = writeln!(s, "all checks pass {}", v.all_pass());
        s
    };
    emit(format, &report, text, code)
}

#[derive(Debug, Serialize, Deserialize)]
pub struct StandardPayload {
    pub prime_powers: Vec<(u64, u32)>,
    pub modulus: u64,
    pub tile: IntegerSet,
    pub analysis: CmReport,
}

pub fn standard(args: &StandardArgs, format: Format) -> Outcome {
    let timer = Timer::start();
    let prime_powers = usage!(input::parse_prime_powers(&args.primes));
    if prime_powers.is_empty() {
        return Outcome::Usage("--primes is empty".into());
    }
    let modulus = prime_powers
        .iter()
        .try_fold(1u64, |acc, &(p, a)| p.checked_pow(a).and_then(|q| acc.checked_mul(q)));
    let Some(modulus) = modulus.filter(|&m| m <= MAX_CONSTRUCTION_MODULUS / 10) else {
        return Outcome::Usage(format!("modulus exceeds {}", MAX_CONSTRUCTION_MODULUS / 10));
    };
    let tile = match standard_tile(&prime_powers) {
        Ok(t) => t,
        Err(e) => return construction_outcome(e),
    };
    let analysis = cm_report(&tile);
    let payload = StandardPayload {
        prime_powers,
        modulus,
        tile,
        analysis,
    };
    let report = timer.report("construct standard", None, payload);
    let text = || {
        let p = &report.payload;
        format!(
            "N = {}, |A| = {}\n{}",
            p.modulus,
            p.tile.len(),
            cm_text(&p.tile, &p.analysis)
        )
    };
    emit(format, &report, text, EXIT_OK)
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CounterexamplePayload {
    pub tile: IntegerSet,
    #[serde(flatten)]
    pub report: CounterexampleReport,
}

pub fn counterexample(args: &CounterexampleArgs, format: Format) -> Outcome {
    let timer = Timer::start();
    let (tile, report) = match section4_counterexample(args.p, args.q) {
        Ok(r) => r,
        Err(e) => return construction_outcome(e),
    };
    let report = timer.report("counterexample", None, CounterexamplePayload { tile, report });
    let text = || {
        let r = &report.payload.report;
        format!(
            "p = {}, q = {}\nspectrum {:?}\nM = lcm(S_A) = {}\ndiam(A) = {} vs (p-1)M/p = {}: below {}\n",
            r.p, r.q, r.spectrum, r.modulus, r.diam, r.eq3_bound, r.eq3_fails
        )
    };
    emit(format, &report, text, EXIT_OK)
}

pub fn corpus(args: &CorpusArgs, format: Format) -> Outcome {
    let opts = CorpusOptions {
        max_diameter: args.max_diameter,
        jobs: args.jobs,
        allow_large: args.allow_large,
    };
    let stdout = io::stdout().lock();
    let result = match format {
        Format::Json => write_corpus(&opts, io::BufWriter::new(stdout)),
        Format::Text => run_corpus(&opts).and_then(|records| {
            let mut out = io::BufWriter::new(stdout);
            for r in records {
                let period = match r.min_period.period() {
                    Some(p) => p.to_string(),
                    None => "-".to_owned(),
                };
                writeln!(
                    out,
                    "{}\tperiod {}\tT1 {}\tT2 {}",
                    r.set, period, r.analysis.t1, r.analysis.t2
                )?;
            }
            out.flush()?;
            Ok(())
        }),
    };
    match result {
        Ok(()) => Outcome::Done(EXIT_OK),
        Err(e @ CorpusError::BeyondSafetyLimit { .. }) => {
            Outcome::Usage(format!("--max-diameter: {e} (--allow-large)"))
        }
        Err(e @ CorpusError::TooLarge(_)) => Outcome::Usage(format!("--max-diameter: {e}")),
        Err(CorpusError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => Outcome::Done(EXIT_OK),
        Err(e) => Outcome::Fault(e.to_string()),
    }
}
