use std::fs;
use std::io::Write;
use std::path::Path as FsPath;

use rand::Rng;
use rmrec::analysis::{epsilon_phi, epsilon_psi, threshold_report, Prediction, PredictionMethod, ThresholdReport};
use rmrec::decoder::{op_bound, UnitKind};
use rmrec::encode::encode_counted;
use rmrec::simulate::{parse_grid, stream, sweep, ChannelModel, Purpose, SimConfig, Transmit};
use rmrec::{
    encode as encode_block, enumerate_paths, Algorithm, CodeParams, Decoder64, DecoderOptions, RealBlock64, TieRule,
    URule, VRule,
};

use crate::error::CliError;
use crate::rows::{write_rows, AnalyzeRow, OutputRow};
use crate::text::{codeword_to_hex, info_to_hex, parse_info, parse_received, symbols_to_string};
use crate::{
    AlgoArg, AnalyzeArgs, CodeArgs, CodewordFormat, DecodeArgs, EncodeArgs, OpcountArgs, ReportFormat, SimulateArgs,
    TextFormat, TieArg, TransmitArg,
};

fn read_input(inline: &Option<String>, file: &Option<std::path::PathBuf>) -> Result<String, CliError> {
    match (inline, file) {
        (Some(s), _) => Ok(s.clone()),
        (None, Some(path)) => Ok(fs::read_to_string(path)?),
        (None, None) => Err(CliError::Usage("no input given".into())),
    }
}

fn check_algorithms(params: CodeParams, algos: &[AlgoArg]) -> Result<Vec<Algorithm>, CliError> {
    if algos.is_empty() {
        return Err(CliError::Usage("no algorithm given".into()));
    }
    let mut out: Vec<Algorithm> = Vec::new();
    for &a in algos {
        let a = Algorithm::from(a);
        if a == Algorithm::Phi && params.r() == 0 {
            return Err(rmrec::RmError::PhiNeedsOrderOne.into());
        }
        if !out.contains(&a) {
            out.push(a);
        }
    }
    Ok(out)
}

/// Explicit algorithms, or both applicable ones when none were named.
fn algorithms_or_all(params: CodeParams, algos: &[AlgoArg]) -> Result<Vec<Algorithm>, CliError> {
    if algos.is_empty() {
        let all = if params.r() == 0 { vec![Algorithm::Psi] } else { vec![Algorithm::Psi, Algorithm::Phi] };
        return Ok(all);
    }
    check_algorithms(params, algos)
}

fn format_codeword(c: &rmrec::Codeword, format: CodewordFormat) -> String {
    match format {
        CodewordFormat::Symbols => symbols_to_string(c),
        CodewordFormat::Hex => codeword_to_hex(c),
    }
}

pub fn info(args: &CodeArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let p = args.params()?;
    writeln!(out, "{p}")?;
    writeln!(out, "n {}", p.n())?;
    writeln!(out, "k {}", p.k())?;
    writeln!(out, "d {}", p.d())?;
    writeln!(out, "rate {}", p.rate())?;
    writeln!(out, "paths")?;
    for (i, path) in enumerate_paths(p).iter().enumerate() {
        writeln!(out, "{i:>5} {path}")?;
    }
    Ok(())
}

pub fn encode(args: &EncodeArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let p = args.code.params()?;
    let info = parse_info(&read_input(&args.info, &args.file)?, p.k())?;
    let c = encode_block(&info, p)?;
    writeln!(out, "{}", format_codeword(&c, args.output))?;
    Ok(())
}

pub fn decode(args: &DecodeArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let p = args.code.params()?;
    let y = parse_received(&read_input(&args.input, &args.file)?, p.n())?;
    let tie_rule = match args.ties {
        TieArg::Random => TieRule::Random { seed: args.seed },
        TieArg::Positive => TieRule::Positive,
    };
    let opts = DecoderOptions::default()
        .with_u_rule(args.rules.u_rule.into())
        .with_v_rule(args.rules.v_rule.into())
        .with_tie_rule(tie_rule);
    let mut dec = Decoder64::new(p, args.algo.into(), opts)?;
    let res = dec.decode(&RealBlock64::new(y)?)?;
    let info = info_to_hex(&res.info);
    let codeword = format_codeword(&res.codeword, args.output);
    match args.format {
        TextFormat::Text => {
            writeln!(out, "info {info}")?;
            writeln!(out, "codeword {codeword}")?;
            writeln!(out, "ops {}", res.op_count)?;
        }
        TextFormat::Json => {
            let v = serde_json::json!({ "info": info, "codeword": codeword, "op_count": res.op_count });
            writeln!(out, "{v}")?;
        }
    }
    Ok(())
}

/// Channels named by `--channel` or `--grid`.
pub fn channels(args: &SimulateArgs) -> Result<Vec<ChannelModel>, CliError> {
    match (&args.channel, &args.grid) {
        (Some(c), _) => Ok(vec![c.parse()?]),
        (None, Some(g)) => {
            let (kind, list) = match g.split_once(':') {
                Some((k @ ("bsc" | "awgn"), rest)) => (k, rest),
                _ => ("bsc", g.as_str()),
            };
            parse_grid(list)?
                .into_iter()
                .map(|v| if kind == "bsc" { ChannelModel::bsc(v) } else { ChannelModel::awgn(v) })
                .collect::<Result<_, _>>()
                .map_err(Into::into)
        }
        (None, None) => Err(CliError::Usage("one of --channel or --grid is required".into())),
    }
}

/// Rows of a simulation run, in algorithm then grid order.
pub fn simulate_rows(args: &SimulateArgs) -> Result<Vec<OutputRow>, CliError> {
    let p = args.code.params()?;
    let algos = check_algorithms(p, &args.algo)?;
    if args.trials < 1 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    let grid = channels(args)?;
    let opts = DecoderOptions::default()
        .with_u_rule(args.rules.u_rule.into())
        .with_v_rule(args.rules.v_rule.into());
    let transmit = match args.transmit {
        TransmitArg::AllOnes => Transmit::AllOnes,
        TransmitArg::Random => Transmit::RandomCodewords,
    };
    let mut rows = Vec::new();
    for alg in algos {
        let template = SimConfig::new(p, grid[0], alg)
            .with_trials(args.trials)
            .with_seed(args.seed)
            .with_options(opts.clone())
            .with_transmit(transmit);
        rows.extend(sweep(&template, &grid)?.iter().map(OutputRow::from_sweep));
    }
    Ok(rows)
}

pub fn simulate(args: &SimulateArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let rows = simulate_rows(args)?;
    match &args.out {
        Some(path) => write_file(path, |w| write_rows(&rows, args.format, w)),
        None => write_rows(&rows, args.format, out),
    }
}

fn write_file(path: &FsPath, f: impl FnOnce(&mut dyn Write) -> Result<(), CliError>) -> Result<(), CliError> {
    let mut file = std::io::BufWriter::new(fs::File::create(path)?);
    f(&mut file)?;
    file.flush()?;
    Ok(())
}

fn kind_name(kind: UnitKind) -> &'static str {
    match kind {
        UnitKind::Repetition { .. } => "repetition",
        UnitKind::Symbol { .. } => "symbol",
        UnitKind::Biorthogonal { .. } => "biorthogonal",
    }
}

fn method_name(m: PredictionMethod) -> &'static str {
    match m {
        PredictionMethod::Gaussian => "gaussian",
        PredictionMethod::Chebyshev => "chebyshev",
    }
}

/// Residual used by `analyze`, and the report at that residual.
pub fn analyze_report(args: &AnalyzeArgs) -> Result<(ThresholdReport, Vec<Algorithm>), CliError> {
    let p = args.code.params()?;
    let algos = algorithms_or_all(p, &args.algo)?;
    let epsilon = match args.epsilon {
        Some(e) => e,
        None => match algos[0] {
            Algorithm::Psi => epsilon_psi(p)?,
            Algorithm::Phi => epsilon_phi(p, args.c)?,
        },
    };
    Ok((threshold_report(p, epsilon, args.c)?, algos))
}

fn prediction(report: &ThresholdReport, alg: Algorithm) -> &Prediction {
    match alg {
        Algorithm::Psi => &report.psi,
        Algorithm::Phi => report.phi.as_ref().expect("checked r >= 1"),
    }
}

pub fn analyze_rows(report: &ThresholdReport, algos: &[Algorithm]) -> Vec<AnalyzeRow> {
    let p = report.params;
    let mut rows = Vec::new();
    for &alg in algos {
        let pred = prediction(report, alg);
        let base = |unit: String, kind: &str| AnalyzeRow {
            m: p.m(),
            r: p.r(),
            epsilon: report.epsilon,
            c: report.c,
            algorithm: alg.name().to_string(),
            unit,
            kind: kind.to_string(),
            g: None,
            paths: 0,
            mean: None,
            variance: None,
            method: None,
            lower: 0.0,
            upper: 0.0,
        };
        for u in &pred.units {
            rows.push(AnalyzeRow {
                g: Some(u.unit.kind.g()),
                paths: u.unit.paths.len(),
                mean: Some(u.mean),
                variance: Some(u.variance),
                method: Some(method_name(u.method).to_string()),
                lower: u.lower,
                upper: u.upper,
                ..base(u.unit.key.to_string(), kind_name(u.unit.kind))
            });
        }
        rows.push(AnalyzeRow {
            paths: p.k(),
            lower: pred.block_lower,
            upper: pred.block_upper,
            ..base("block".into(), "block")
        });
    }
    rows
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(|| "undefined".into(), |v| format!("{v:.6}"))
}

pub fn analyze(args: &AnalyzeArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let (report, algos) = analyze_report(args)?;
    match args.format {
        ReportFormat::Csv => return write_rows(&analyze_rows(&report, &algos), crate::Format::Csv, out),
        ReportFormat::Json => return write_rows(&analyze_rows(&report, &algos), crate::Format::Json, out),
        ReportFormat::Text => {}
    }
    let p = report.params;
    writeln!(out, "{p}")?;
    writeln!(out, "epsilon      {:.6}", report.epsilon)?;
    writeln!(out, "crossover    {:.6}", (1.0 - report.epsilon) / 2.0)?;
    writeln!(out, "c            {}", report.c)?;
    writeln!(out, "epsilon_psi  {}", opt(report.epsilon_psi))?;
    writeln!(out, "epsilon_phi  {}", opt(report.epsilon_phi))?;
    writeln!(out, "epsilon_opt  {:.6}", report.epsilon_opt)?;
    writeln!(out, "mu_star_psi  {:.6e}", report.mu_star)?;
    if let Some(v) = report.phi_mu_star {
        writeln!(out, "mu_star_phi  {v:.6e}")?;
    }
    for (g, v) in &report.mu_star_g {
        writeln!(out, "mu_star_g    g={g} {v:.6e}")?;
    }
    for (name, v) in report.out_of_range_residuals() {
        writeln!(out, "note: {name} = {v:.6} lies outside (0, 1) for this short code")?;
    }
    for &alg in &algos {
        let pred = prediction(&report, alg);
        writeln!(out)?;
        writeln!(out, "{} block error in [{:.6e}, {:.6e}]", alg.name(), pred.block_lower, pred.block_upper)?;
        writeln!(
            out,
            "  {:<14} {:<12} {:>5} {:>13} {:>13} {:<9} {:>13} {:>13}",
            "unit", "kind", "paths", "mean", "variance", "method", "lower", "upper"
        )?;
        for u in &pred.units {
            writeln!(
                out,
                "  {:<14} {:<12} {:>5} {:>13.6e} {:>13.6e} {:<9} {:>13.6e} {:>13.6e}",
                u.unit.key.to_string(),
                kind_name(u.unit.kind),
                u.unit.paths.len(),
                u.mean,
                u.variance,
                method_name(u.method),
                u.lower,
                u.upper
            )?;
        }
    }
    Ok(())
}

/// Operation counts reported for the hard-decision decoders of a few codes.
fn table_reference(p: CodeParams, alg: Algorithm) -> Option<u64> {
    match (p.m(), p.r(), alg) {
        (7, 2, Algorithm::Psi) => Some(857),
        (7, 2, Algorithm::Phi) => Some(1264),
        (8, 2, Algorithm::Psi) => Some(1753),
        (8, 2, Algorithm::Phi) => Some(2800),
        (8, 3, Algorithm::Psi) => Some(2313),
        (8, 3, Algorithm::Phi) => Some(2944),
        _ => None,
    }
}

pub fn opcount(args: &OpcountArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let p = args.code.params()?;
    let algos = algorithms_or_all(p, &args.algo)?;
    if args.trials < 1 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    let u_rules: Vec<URule> = args.u_rule.map_or(vec![URule::Scaled, URule::Unscaled], |u| vec![u.into()]);
    let v_rules: Vec<VRule> = args.v_rule.map_or(vec![VRule::Product, VRule::MinSum], |v| vec![v.into()]);

    // Fixed inputs shared by every rule combination.
    let inputs: Vec<(rmrec::InfoBlock, Vec<f64>)> = (0..args.trials)
        .map(|t| {
            let mut rng = stream(args.seed, t, Purpose::Channel);
            let info =
                rmrec::InfoBlock::new((0..p.k()).map(|_| rng.gen::<bool>() as u8).collect()).expect("binary bits");
            let c = encode_block(&info, p).expect("matching length");
            let noise = rng.gen_range(0.0..1.0);
            let y = c.symbols().iter().map(|&s| s as f64 + noise * rng.gen_range(-1.5..1.5)).collect();
            (info, y)
        })
        .collect();

    let mut violations = Vec::new();
    writeln!(out, "{p}")?;
    let mut enc_max = 0;
    for (info, _) in &inputs {
        enc_max = enc_max.max(encode_counted(info, p)?.1);
    }
    let enc_bound = p.encoder_bound();
    writeln!(out, "encoder measured_max {enc_max} bound {enc_bound}")?;
    if enc_max > enc_bound {
        violations.push(format!("encoder {enc_max} > {enc_bound}"));
    }
    writeln!(out, "{:<9} {:<8} {:<7} {:>12} {:>10} {:>9}", "algorithm", "u_rule", "v_rule", "measured_max", "bound", "reference")?;
    for &alg in &algos {
        for &u in &u_rules {
            for &v in &v_rules {
                let opts = DecoderOptions::default().with_u_rule(u).with_v_rule(v).with_tie_rule(TieRule::Random { seed: args.seed });
                let mut dec = Decoder64::new(p, alg, opts)?;
                let mut max = 0;
                for (_, y) in &inputs {
                    max = max.max(dec.decode(&RealBlock64::new(y.clone())?)?.op_count);
                }
                let bound = op_bound(p, alg, u, v);
                let reference = (u == URule::Scaled && v == VRule::Product)
                    .then(|| table_reference(p, alg))
                    .flatten()
                    .map_or_else(|| "-".to_string(), |r| r.to_string());
                let u_name = if u == URule::Scaled { "scaled" } else { "unscaled" };
                let v_name = if v == VRule::Product { "product" } else { "min-sum" };
                writeln!(out, "{:<9} {:<8} {:<7} {:>12} {:>10} {:>9}", alg.name(), u_name, v_name, max, bound, reference)?;
                if max > bound {
                    violations.push(format!("{} {u_name} {v_name}: {max} > {bound}", alg.name()));
                }
            }
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(CliError::Violation(format!("operation bound violated: {}", violations.join("; "))))
    }
}
