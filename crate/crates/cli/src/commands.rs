use std::collections::BTreeMap;
use std::io::Write;
use std::time::Instant;

use qmass_core::coords::parity_gap;
use qmass_core::densities::{
    default_level, density_archimedean, density_closed_form, density_counting_oracle,
    density_dyadic, ramification_datum, OracleMode,
};
use qmass_core::gaussian::{count_gamma_exact, find_witness, verify_range, Strategy, WitnessReport};
use qmass_core::mass::{compare_mass_to_count, mass_exact, mass_truncated, MassMethod};
use qmass_core::Error;
use serde_json::Value;

use crate::cache::Cache;
use crate::output::write_records;
use crate::record::{cache_key, ResultRecord};
use crate::{kv, CliConfig, Command, EXIT_OK, EXIT_USAGE, EXIT_VERIFICATION};

/// Relative tolerance for `compare` to count as verified.
const COMPARE_REL_TOL: f64 = 1e-6;

type Inputs = BTreeMap<String, Value>;

fn name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Witness { .. } => "witness",
        Command::Verify { .. } => "verify",
        Command::CountGamma { .. } => "count-gamma",
        Command::CountXf { .. } => "count-xf",
        Command::Density { .. } => "density",
        Command::Dyadic { .. } => "dyadic",
        Command::Archimedean { .. } => "archimedean",
        Command::Mass { .. } => "mass",
        Command::Compare { .. } => "compare",
        Command::Audit { .. } => "audit",
    }
}

/// The records a command will emit, identified by their inputs, in output order.
fn plan(cmd: &Command) -> Result<Vec<Inputs>, Error> {
    Ok(match cmd {
        Command::Witness { n, strategy } => {
            let strategy: Strategy = strategy.parse()?;
            vec![kv!("n" => n, "strategy" => strategy)]
        }
        Command::Verify { from, to } => {
            if *from < 3 || from > to {
                return Err(Error::InvalidInput("need 3 ≤ --from ≤ --to".into()));
            }
            (*from..=*to).filter(|n| n % 2 == 1).map(|n| kv!("n" => n)).collect()
        }
        Command::CountGamma { n } | Command::CountXf { n } => vec![kv!("n" => n)],
        Command::Density { p, n, t, method, mode } => match method.as_str() {
            "closed" => vec![kv!("p" => p, "n" => n, "method" => "closed")],
            "oracle" => {
                let mode: OracleMode = mode.parse()?;
                let t = match t {
                    Some(t) => *t,
                    None => default_level(*p, *n)?,
                };
                vec![kv!("p" => p, "n" => n, "method" => "oracle", "t" => t, "mode" => mode)]
            }
            other => return Err(Error::InvalidInput(format!("unknown density method {other:?}"))),
        },
        Command::Dyadic { n } | Command::Archimedean { n } | Command::Compare { n } => {
            vec![kv!("n" => n)]
        }
        Command::Mass { n, method, prime_bound } => match method.parse::<MassMethod>()? {
            MassMethod::Exact => vec![kv!("n" => n, "method" => MassMethod::Exact)],
            MassMethod::Truncated => {
                vec![kv!("n" => n, "method" => MassMethod::Truncated, "prime_bound" => prime_bound)]
            }
        },
        Command::Audit { n, to } => {
            let hi = to.unwrap_or(*n);
            if hi < *n {
                return Err(Error::InvalidInput("--to must not be below n".into()));
            }
            if to.is_some() {
                (*n..=hi).filter(|k| k % 2 == 1).map(|k| kv!("n" => k)).collect()
            } else {
                vec![kv!("n" => n)]
            }
        }
    })
}

fn object(v: impl serde::Serialize) -> BTreeMap<String, Value> {
    match serde_json::to_value(v).expect("serializable") {
        Value::Object(map) => map.into_iter().collect(),
        other => kv!("value" => other),
    }
}

fn witness_outputs(r: &WitnessReport) -> BTreeMap<String, Value> {
    kv!(
        "witness" => r.witness,
        "det" => r.witness.map(|m| m.determinant()),
        "norm_square" => r.witness.map(|m| m.norm_square()),
        "strategy" => r.strategy,
        "verified" => r.verified(),
    )
}

fn input_u64(inputs: &Inputs, key: &str) -> u64 {
    inputs[key].as_u64().expect("planned inputs are integers")
}

/// Computes the records for `missing` (a subset of the plan, in plan order).
fn compute(cmd: &Command, missing: &[Inputs], config: &CliConfig) -> Result<Vec<ResultRecord>, Error> {
    let cap = &config.capacity;
    let command = name(cmd);
    if let Command::Verify { .. } = cmd {
        let Some(lo) = missing.first().map(|i| input_u64(i, "n")) else {
            return Ok(Vec::new());
        };
        let hi = input_u64(missing.last().expect("nonempty"), "n");
        let reports = verify_range(lo, hi, config.jobs)?;
        return Ok(missing
            .iter()
            .map(|inputs| {
                let n = input_u64(inputs, "n");
                let r = reports.iter().find(|r| r.n == n).expect("verify_range covers every odd n");
                let mut rec = ResultRecord::new(command, inputs.clone());
                rec.outputs = witness_outputs(r);
                rec.elapsed_ms = r.elapsed.as_millis() as u64;
                rec
            })
            .collect());
    }

    let mut records = Vec::with_capacity(missing.len());
    for inputs in missing {
        let start = Instant::now();
        let outputs = match cmd {
            Command::Witness { n, .. } => {
                let strategy = serde_json::from_value(inputs["strategy"].clone()).expect("planned");
                witness_outputs(&find_witness(*n, strategy)?)
            }
            Command::Verify { .. } => unreachable!("handled above"),
            Command::CountGamma { n } => kv!("count" => count_gamma_exact(*n, cap)?),
            Command::CountXf { n } => {
                let gap = parity_gap(*n, cap)?;
                kv!("count" => gap.xf_count, "parity_count" => gap.parity_count, "ratio" => gap.ratio)
            }
            Command::Density { p, n, .. } => match inputs["method"].as_str() {
                Some("closed") => {
                    if *p == 2 {
                        return Err(Error::InvalidInput(
                            "no closed form at p = 2; use --method oracle or the dyadic command".into(),
                        ));
                    }
                    let datum = ramification_datum(*p, *n)?;
                    kv!(
                        "density" => density_closed_form(*p, *n)?,
                        "branch" => if datum.is_ramified() { "ramified" } else { "unramified" },
                        "datum" => datum,
                    )
                }
                _ => {
                    let t = input_u64(inputs, "t") as u32;
                    let mode = serde_json::from_value(inputs["mode"].clone()).expect("planned");
                    let d = density_counting_oracle(*p, *n, t, mode, cap)?;
                    kv!("density" => d.density, "raw_count" => d.raw_count)
                }
            },
            Command::Dyadic { n } => {
                let d = density_dyadic(*n)?;
                kv!("raw_count" => d.raw_count, "modulus" => 8, "density" => d.density)
            }
            Command::Archimedean { n } => kv!("density" => density_archimedean(*n)?),
            Command::Mass { n, prime_bound, .. } => match inputs["method"].as_str() {
                Some("truncated") => object(mass_truncated(*n, *prime_bound)?),
                _ => object(mass_exact(*n)?),
            },
            Command::Compare { n } => {
                let report = compare_mass_to_count(*n, cap)?;
                let ok = report.relative_error.is_some_and(|e| e <= COMPARE_REL_TOL);
                let mut out = object(report);
                out.insert("verified".into(), Value::Bool(ok));
                out
            }
            Command::Audit { .. } => {
                let report = qmass_core::densities::assert_nonvanishing(input_u64(inputs, "n"))?;
                let ok = report.all_positive();
                let mut out = object(report);
                out.insert("verified".into(), Value::Bool(ok));
                out
            }
        };
        let mut rec = ResultRecord::new(command, inputs.clone());
        rec.outputs = outputs;
        rec.elapsed_ms = start.elapsed().as_millis() as u64;
        records.push(rec);
    }
    Ok(records)
}

fn failed_verification(rec: &ResultRecord) -> bool {
    rec.outputs.get("verified") == Some(&Value::Bool(false))
}

pub(crate) fn execute(cmd: &Command, config: &CliConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let fail = |err: &mut dyn Write, msg: &dyn std::fmt::Display| {
        let _ = writeln!(err, "error: {msg}");
        EXIT_USAGE
    };
    let planned = match plan(cmd) {
        Ok(p) => p,
        Err(e) => return fail(err, &error_message(&e)),
    };

    let mut cache = match &config.cache_path {
        Some(path) => match Cache::open(path, err) {
            Ok(c) => Some(c),
            Err(e) => return fail(err, &format!("cache {}: {e}", path.display())),
        },
        None => None,
    };

    let command = name(cmd);
    let mut slots: Vec<Option<ResultRecord>> = planned
        .iter()
        .map(|inputs| cache.as_ref().and_then(|c| c.get(&cache_key(command, inputs))))
        .collect();
    let missing: Vec<Inputs> = planned
        .iter()
        .zip(&slots)
        .filter(|(_, s)| s.is_none())
        .map(|(i, _)| i.clone())
        .collect();

    let computed = match compute(cmd, &missing, config) {
        Ok(r) => r,
        Err(e) => return fail(err, &error_message(&e)),
    };
    let mut computed = computed.into_iter();
    for slot in slots.iter_mut().filter(|s| s.is_none()) {
        let rec = computed.next().expect("one record per missing input");
        if let Some(c) = cache.as_mut() {
            if let Err(e) = c.insert(&rec) {
                let _ = writeln!(err, "warning: could not write cache: {e}");
            }
        }
        *slot = Some(rec);
    }
    let records: Vec<ResultRecord> = slots.into_iter().map(|s| s.expect("filled")).collect();

    if let Err(e) = write_records(&records, config.output_format, out) {
        return fail(err, &format!("writing output: {e}"));
    }
    let failures: Vec<&ResultRecord> = records.iter().filter(|r| failed_verification(r)).collect();
    if failures.is_empty() {
        EXIT_OK
    } else {
        for r in failures {
            let _ = writeln!(err, "verification failed: {command} {}", serde_json::to_string(&r.inputs).unwrap_or_default());
        }
        EXIT_VERIFICATION
    }
}

fn error_message(e: &Error) -> String {
    match e {
        Error::InvalidInput(msg) => msg.clone(),
        other => other.to_string(),
    }
}

