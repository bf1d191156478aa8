//! Subcommand implementations. Each builds its complete output as a
//! string, then hands it to [`write_output`], so stdout and `--out` carry
//! byte-identical content.

use std::path::Path;

use dpq::analysis::{coefficients, continuous_coefficient, continuous_entropy, Tau};
use dpq::optimize::{continuous_optimum, discrete_optimum};
use dpq::recurrence::expected_cost_table;
use dpq::{rational_to_f64, CostMeasure};

use crate::config::Settings;
use crate::format::{exact, sig6, Csv};
use crate::simulate::simulate_csv;
use crate::svg::{heat_map, Cell};
use crate::verify::{run_suites, VerifyCtx};

/// Largest size the recurrence command accepts; the table costs quadratic
/// time in it, with ever-growing exact numerators.
const RECURRENCE_SIZE_CAP: u64 = 2_000;

/// Writes `content` to the file or, without one, to stdout.
pub fn write_output(content: &str, out: Option<&Path>) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

pub fn analyze(settings: &Settings) -> Result<u8, String> {
    let t = settings.params.t();
    let bundle = coefficients(t);
    let mut out = format!(
        "t = ({}, {}, {})   k = {}   cutoff M = {}\n\n",
        t[0],
        t[1],
        t[2],
        settings.params.sample_size(),
        settings.params.cutoff()
    );
    out.push_str(&format!(
        "{:<12} {:<26} {}\n",
        "measure", "coefficient", "ratio to n ln n"
    ));
    for measure in CostMeasure::ALL {
        let coefficient = bundle.coefficient(measure);
        let ratio = bundle.ratio(measure);
        let coefficient_cell = format!(
            "{} = {}",
            exact(coefficient),
            sig6(rational_to_f64(coefficient))
        );
        let ratio_cell = format!("{} = {}", exact(&ratio), sig6(rational_to_f64(&ratio)));
        out.push_str(&format!(
            "{:<12} {coefficient_cell:<26} {ratio_cell}\n",
            measure.name(),
        ));
    }
    out.push_str(&format!(
        "{:<12} {} = {}\n",
        "entropy",
        exact(&bundle.entropy),
        sig6(rational_to_f64(&bundle.entropy))
    ));
    write_output(&out, settings.out.as_deref())?;
    Ok(0)
}

pub fn table(settings: &Settings) -> Result<u8, String> {
    let mut header = vec![
        "t1".to_string(),
        "t2".to_string(),
        "t3".to_string(),
        "entropy".to_string(),
    ];
    for measure in &settings.measures {
        header.push(format!("{}_coefficient", measure.name()));
        header.push(format!("{}_ratio", measure.name()));
    }
    let header_refs: Vec<&str> = header.iter().map(String::as_str).collect();
    let mut csv = Csv::new(&header_refs);

    let budget = settings.k - 2;
    for t1 in 0..=budget {
        for t2 in 0..=budget - t1 {
            let t = [t1, t2, budget - t1 - t2];
            let bundle = coefficients(t);
            let mut row = vec![
                t[0].to_string(),
                t[1].to_string(),
                t[2].to_string(),
                sig6(rational_to_f64(&bundle.entropy)),
            ];
            for &measure in &settings.measures {
                row.push(sig6(rational_to_f64(bundle.coefficient(measure))));
                row.push(sig6(rational_to_f64(&bundle.ratio(measure))));
            }
            csv.row(row);
        }
    }
    write_output(&csv.finish(), settings.out.as_deref())?;
    Ok(0)
}

pub fn simulate(settings: &Settings) -> Result<u8, String> {
    let csv = simulate_csv(settings);
    write_output(&csv, settings.out.as_deref())?;
    Ok(0)
}

pub fn recurrence(settings: &Settings) -> Result<u8, String> {
    let n_max = settings
        .sizes
        .as_ref()
        .map(|s| *s.iter().max().expect("sizes are non-empty"))
        .unwrap_or(100);
    if n_max > RECURRENCE_SIZE_CAP {
        return Err(format!(
            "recurrence table size {n_max} exceeds the cap of {RECURRENCE_SIZE_CAP}"
        ));
    }

    let mut header = vec!["n".to_string()];
    for measure in &settings.measures {
        header.push(format!("{}_expected", measure.name()));
    }
    let header_refs: Vec<&str> = header.iter().map(String::as_str).collect();
    let mut csv = Csv::new(&header_refs);

    let tables: Vec<_> = settings
        .measures
        .iter()
        .map(|&measure| expected_cost_table(n_max, &settings.params, measure))
        .collect();
    for n in 0..=n_max {
        let mut row = vec![n.to_string()];
        for table in &tables {
            row.push(exact(table.value(n)));
        }
        csv.row(row);
    }
    write_output(&csv.finish(), settings.out.as_deref())?;
    Ok(0)
}

pub fn optimize(settings: &Settings) -> Result<u8, String> {
    let mut report = String::new();
    let mut csv = if settings.k_explicit {
        Csv::new(&[
            "measure",
            "rank",
            "t1",
            "t2",
            "t3",
            "ratio",
            "ratio_decimal",
        ])
    } else {
        Csv::new(&["measure", "tau1", "tau2", "tau3", "value", "boundary"])
    };

    for &measure in &settings.measures {
        if settings.k_explicit {
            let ranking = discrete_optimum(settings.k, measure);
            let best = ranking.first().expect("k of at least 2 has vectors");
            report.push_str(&format!(
                "discrete optimum, k = {}, measure = {}\n",
                settings.k,
                measure.name()
            ));
            report.push_str(&format!(
                "best t = ({}, {}, {}), ratio = {} = {}\n",
                best.t[0],
                best.t[1],
                best.t[2],
                exact(&best.value),
                sig6(rational_to_f64(&best.value))
            ));
            for (rank, entry) in ranking.iter().enumerate().take(5).skip(1) {
                report.push_str(&format!(
                    "  rank {}: t = ({}, {}, {}), ratio = {}\n",
                    rank + 1,
                    entry.t[0],
                    entry.t[1],
                    entry.t[2],
                    sig6(rational_to_f64(&entry.value))
                ));
            }
            report.push_str(&format!("({} vectors ranked)\n", ranking.len()));
            for (rank, entry) in ranking.iter().enumerate() {
                csv.row([
                    measure.name().to_string(),
                    (rank + 1).to_string(),
                    entry.t[0].to_string(),
                    entry.t[1].to_string(),
                    entry.t[2].to_string(),
                    exact(&entry.value),
                    sig6(rational_to_f64(&entry.value)),
                ]);
            }
        } else {
            let opt = continuous_optimum(measure, 1e-8);
            report.push_str(&format!(
                "continuous optimum, measure = {}\ntau = ({}, {}, {})\nvalue = {}\nboundary = {}\n",
                measure.name(),
                sig6(opt.tau[0]),
                sig6(opt.tau[1]),
                sig6(opt.tau[2]),
                sig6(opt.value),
                opt.boundary
            ));
            csv.row([
                measure.name().to_string(),
                sig6(opt.tau[0]),
                sig6(opt.tau[1]),
                sig6(opt.tau[2]),
                sig6(opt.value),
                opt.boundary.to_string(),
            ]);
        }
    }

    match &settings.out {
        Some(path) => {
            write_output(&csv.finish(), Some(path))?;
            print!("{report}");
        }
        None => print!("{report}"),
    }
    Ok(0)
}

pub fn contour(settings: &Settings) -> Result<u8, String> {
    let measure = *settings.measures.first().expect("measures are non-empty");
    let step = settings.grid_step;
    let mut csv = Csv::new(&["tau1", "tau2", "ratio"]);
    let mut cells = Vec::new();

    let steps = (1.0 / step).round() as u64;
    for row in 0..=steps {
        let tau1 = row as f64 * step;
        for col in 0..=steps - row {
            let tau2 = col as f64 * step;
            let tau3 = (1.0 - tau1 - tau2).max(0.0);
            let tau = Tau::new([tau1, tau2, tau3]).map_err(|e| e.to_string())?;
            let entropy = continuous_entropy(tau);
            let coefficient = continuous_coefficient(tau, measure);
            let ratio = if entropy > 1e-12 {
                coefficient / entropy
            } else if coefficient.abs() <= 1e-12 {
                0.0
            } else {
                f64::INFINITY
            };
            csv.row([sig6(tau1), sig6(tau2), sig6(ratio)]);
            cells.push(Cell {
                tau1,
                tau2,
                value: ratio,
            });
        }
    }
    write_output(&csv.finish(), settings.out.as_deref())?;
    if let Some(path) = &settings.svg {
        std::fs::write(path, heat_map(&cells, step))
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    }
    Ok(0)
}

pub fn verify(settings: &Settings, filter: Option<&str>, corrupt: bool) -> Result<u8, String> {
    let ctx = if corrupt {
        VerifyCtx::corrupted(settings.seed)
    } else {
        VerifyCtx::standard(settings.seed)
    };
    let outcomes = run_suites(&ctx, filter);
    if outcomes.is_empty() {
        return Err(format!(
            "no suite name contains {:?}",
            filter.unwrap_or_default()
        ));
    }
    let mut passed = 0usize;
    for outcome in &outcomes {
        let tag = if outcome.passed { "PASS" } else { "FAIL" };
        println!("[{tag}] {}: {}", outcome.name, outcome.detail);
        passed += usize::from(outcome.passed);
    }
    println!("summary: {} suites run, {passed} passed", outcomes.len());
    Ok(u8::from(passed != outcomes.len()))
}
