use std::fs;
use std::io::Write;
use std::path::Path;

use cyclic_cubic::arith::primes_up_to;
use cyclic_cubic::classify::{
    conductor_discriminant, enumerate_family, family_labels_by_conductor, parse_catalog, parse_label, write_catalog,
    FieldLabel, FieldRecord,
};
use cyclic_cubic::density::{
    classify_symmetry, family_average_over, fejer_pair, kernel_integral, reference_statistics_over, KernelType,
};
use cyclic_cubic::eisenstein::{EisensteinInteger, PrimeAbove, Registry};
use cyclic_cubic::lfunc::LambdaMode;
use cyclic_cubic::verify::*;

use crate::config::{Command, RunConfig};
use crate::CliError;

pub fn run(cfg: &RunConfig) -> Result<(), CliError> {
    match cfg.command {
        Command::Enumerate => enumerate(cfg),
        Command::Density => density(cfg),
        Command::Verify => verify(cfg),
        Command::Charsum => charsum(cfg),
    }
}

fn emit(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Io(format!("cannot write {}: {e}", p.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(format!("cannot write to stdout: {e}"))),
    }
}

fn csv_text(header: &[&str], rows: &[Vec<String>]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let fail = |e: csv::Error| CliError::Io(format!("csv: {e}"));
    w.write_record(header).map_err(fail)?;
    for r in rows {
        w.write_record(r).map_err(fail)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn enumerate(cfg: &RunConfig) -> Result<(), CliError> {
    let records = enumerate_family(cfg.x)?;
    let text = format!("# x={} fields={}\n{}", cfg.x, records.len(), write_catalog(&records));
    emit(cfg.out.as_deref(), &text)
}

fn load_records(cfg: &RunConfig) -> Result<Vec<FieldRecord>, CliError> {
    match &cfg.catalog {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
            parse_catalog(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
        }
        None => Ok(enumerate_family(cfg.x)?),
    }
}

fn density(cfg: &RunConfig) -> Result<(), CliError> {
    let records = load_records(cfg)?;
    let labels: Vec<FieldLabel> = records.iter().map(|r| r.label).collect();
    let tf = fejer_pair(cfg.beta)?;
    let avg = family_average_over(cfg.x, &labels, &tf, cfg.mode)?;
    let discriminants: Vec<u64> = labels.iter().map(|l| conductor_discriminant(l).1).collect();
    let refs = reference_statistics_over(&discriminants, &tf);
    let cls = classify_symmetry(avg.t, &refs);

    let rows: Vec<Vec<String>> = avg
        .rows
        .iter()
        .map(|r| {
            vec![
                r.label.d().to_string(),
                r.label.e3.to_string(),
                r.label.d1.to_string(),
                r.label.d2.to_string(),
                r.conductor.to_string(),
                format!("{:.15e}", r.archimedean),
                format!("{:.15e}", r.gamma_term),
                format!("{:.15e}", r.prime_sum),
                format!("{:.15e}", r.total),
            ]
        })
        .collect();
    let source = cfg.catalog.as_ref().map_or("enumerated".to_string(), |p| p.display().to_string());
    let mut table = format!("# x={} beta={} mode={} fields={} source={source}\n", cfg.x, cfg.beta, cfg.mode, avg.count);
    table += &csv_text(
        &["D", "e3", "d1", "d2", "conductor", "archimedean", "gamma_term", "prime_sum", "total"],
        &rows,
    )?;

    let mut summary = format!(
        "x={} beta={} mode={} fields={}\naverage={:.12}\nT={:.12}\nmean_gamma={:.12}\n",
        cfg.x, cfg.beta, cfg.mode, avg.count, avg.average, avg.t, avg.mean_gamma
    );
    if cfg.mode == LambdaMode::PaperLiteral {
        summary += "note=splitting from the literal character (D1/P)_3; it differs from the field's at some primes = 1 mod 3\n";
    }
    for k in KernelType::ALL {
        summary += &format!("ref_{k}={:.12} integral_{k}={:.12}\n", refs[&k], kernel_integral(k, &tf));
    }
    summary += &format!(
        "classification={} runner_up={} margin={:.12} ambiguous={}\n",
        cls.kernel, cls.runner_up, cls.margin, cls.ambiguous
    );

    match &cfg.out {
        Some(path) => {
            emit(Some(path), &table)?;
            let mut sp = path.clone().into_os_string();
            sp.push(".summary");
            emit(Some(Path::new(&sp)), &summary)?;
            emit(None, &summary)
        }
        None => emit(None, &format!("{table}\n{summary}")),
    }
}

fn verify(cfg: &RunConfig) -> Result<(), CliError> {
    let mut registry = Registry::global().clone();
    if cfg.inject_fault {
        registry = registry.with_prime(PrimeAbove::from_generator_unchecked(13, EisensteinInteger::new(5, 1)));
    }
    let mut reports = vec![
        splitting_oracle_probe(&family_labels_by_conductor(2, 200), &primes_up_to(500), &registry),
        choice_invariance_probe(&standard_pairs(), &registry),
        paper_literal_scan(&parse_label(7)?, 100),
        ramification_corpus_probe(&calibration_corpus()),
    ];
    for l in family_labels_by_conductor(2, 200).into_iter().take(10) {
        reports.push(ideal_count_crosscheck(&l, 10_000));
    }
    for &p in &cfg.primes {
        reports.push(or_failed(format!("char_sum_p{p}"), char_sum_probe(p, cfg.ymax)));
    }
    for &p in &cfg.primes {
        reports.push(or_failed(format!("genseries_p{p}"), genseries_compare(p, cfg.s, cfg.p0, &registry)));
    }
    reports.push(or_failed(
        "family_count_scaling".into(),
        family_count_scaling(&[1_000_000, 10_000_000, 100_000_000]),
    ));

    let mut text: String = reports.iter().map(|r| r.render() + "\n").collect();
    let summary: String = reports.iter().map(|r| r.summary_line() + "\n").collect();
    text += "# summary\n";
    text += &summary;
    if cfg.out.is_some() {
        emit(cfg.out.as_deref(), &text)?;
        emit(None, &summary)?;
    } else {
        emit(None, &text)?;
    }
    let failed: Vec<&str> = reports
        .iter()
        .filter(|r| r.status == ProbeStatus::Fail)
        .map(|r| r.subject.as_str())
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Assertion(format!("probes failed: {}", failed.join(", "))))
    }
}

/// A probe that could not run counts as failed; the report says why.
fn or_failed(subject: String, r: cyclic_cubic::Result<ProbeReport>) -> ProbeReport {
    r.unwrap_or_else(|e| {
        let mut report = ProbeReport::new(subject, &[]);
        report.key("error", e.to_string().replace(' ', "_"));
        report.raise(ProbeStatus::Fail);
        report
    })
}

fn charsum(cfg: &RunConfig) -> Result<(), CliError> {
    let grid = log_grid(1, cfg.ymax, 4);
    let mut rows = Vec::new();
    let mut too_big = Vec::new();
    for &p in &cfg.primes {
        let values = char_sum_grid(p, &grid)?;
        let exponent = fitted_exponent(&values);
        if exponent.is_some_and(|e| e > 1.1) {
            too_big.push(p);
        }
        let exp = exponent.map_or("nan".to_string(), |e| format!("{e:.6}"));
        for v in values {
            rows.push(vec![
                p.to_string(),
                v.y.to_string(),
                v.value.a.to_string(),
                v.value.b.to_string(),
                format!("{:.6}", v.magnitude),
                format!("{:.6e}", v.magnitude * (v.y as f64).powf(-0.75)),
                exp.clone(),
            ]);
        }
    }
    let grid_s: Vec<String> = grid.iter().map(|y| y.to_string()).collect();
    let primes_s: Vec<String> = cfg.primes.iter().map(|p| p.to_string()).collect();
    let mut text = format!(
        "# S_p(Y) = a + b*w; primes={} ymax={} grid=log(4/decade):{}\n",
        primes_s.join(","),
        cfg.ymax,
        grid_s.join(",")
    );
    text += &csv_text(&["p", "Y", "a", "b", "magnitude", "magnitude_over_Y^0.75", "exponent"], &rows)?;
    emit(cfg.out.as_deref(), &text)?;
    if too_big.is_empty() {
        Ok(())
    } else {
        Err(CliError::Assertion(format!("fitted exponent above 1.1 for p in {too_big:?}")))
    }
}
