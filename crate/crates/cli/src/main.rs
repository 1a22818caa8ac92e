//! `daubound`: Daubechies filters, Fourier-side norms, closed-form bounds and
//! the verification sweeps, from the command line.

mod report;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use daubound_core::bounds::{self, BoundParams};
use daubound_core::norms::{DecayModel, DEFAULT_CUTOFF};
use daubound_core::{
    construct_filter, estimate_decay, verify_sweep, weighted_lp_norm, BoundSet, Check, EvalConfig, LogBase,
    NormRequest, QuadConfig, SweepConfig, SweepGrid, Wavelet, WaveletSpectrum,
};
use serde::Serialize;

use report::{sci, SCHEMA_VERSION};

#[derive(Parser)]
#[command(name = "daubound", version, about = "Daubechies wavelet norms, bounds and their numerical verification")]
struct Cli {
    /// Additive tolerance on top of each row's error estimate.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,

    /// Relative tolerance of the adaptive quadrature.
    #[arg(long, global = true, default_value_t = 1e-11)]
    rel_tol: f64,

    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Output format; single-shot commands default to plain text, sweeps to CSV.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Args, Clone, Copy)]
struct FormatFlags {
    /// Shorthand for --format json.
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    /// Shorthand for --format csv.
    #[arg(long)]
    csv: bool,
}

impl FormatFlags {
    fn resolve(self, global: Option<Format>, default: Format) -> Format {
        if self.json {
            Format::Json
        } else if self.csv {
            Format::Csv
        } else {
            global.unwrap_or(default)
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Base {
    Natural,
    #[value(name = "2")]
    Two,
    #[value(name = "10")]
    Ten,
}

impl From<Base> for LogBase {
    fn from(b: Base) -> Self {
        match b {
            Base::Natural => LogBase::Natural,
            Base::Two => LogBase::Two,
            Base::Ten => LogBase::Ten,
        }
    }
}

/// `A:B`, inclusive at both ends.
#[derive(Clone, Copy, Debug)]
struct Span<T> {
    lo: T,
    hi: T,
}

impl<T: FromStr + PartialOrd + Copy> FromStr for Span<T>
where
    T::Err: std::fmt::Display,
{
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (a, b) = s.split_once(':').ok_or_else(|| format!("expected LO:HI, got {s:?}"))?;
        let lo = a.trim().parse::<T>().map_err(|e| e.to_string())?;
        let hi = b.trim().parse::<T>().map_err(|e| e.to_string())?;
        if hi < lo {
            return Err(format!("empty range {s:?}"));
        }
        Ok(Self { lo, hi })
    }
}

/// Comma-separated integers, each either `N` or `A:B`.
#[derive(Clone, Debug)]
struct IntList(Vec<i64>);

impl FromStr for IntList {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let mut out = Vec::new();
        for part in s.split(',') {
            if part.contains(':') {
                let span: Span<i64> = part.parse()?;
                out.extend(span.lo..=span.hi);
            } else {
                out.push(part.trim().parse::<i64>().map_err(|e| e.to_string())?);
            }
        }
        Ok(Self(out))
    }
}

/// Comma-separated reals.
#[derive(Clone, Debug)]
struct RealList(Vec<f64>);

impl FromStr for RealList {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        s.split(',')
            .map(|x| x.trim().parse::<f64>().map_err(|e| e.to_string()))
            .collect::<std::result::Result<_, _>>()
            .map(Self)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the filter taps of order m.
    Filters {
        #[arg(long)]
        m: u32,
        #[command(flatten)]
        fmt: FormatFlags,
    },
    /// Evaluate the wavelet transform at one frequency.
    Eval {
        #[arg(long)]
        m: u32,
        #[arg(long, allow_hyphen_values = true)]
        omega: f64,
        /// Print |ψ̂(ω)|² from the tap-free product instead of ψ̂(ω).
        #[arg(long)]
        abs2: bool,
        #[command(flatten)]
        fmt: FormatFlags,
    },
    /// Fit the power-law decay envelope of |ψ̂|.
    Decay {
        #[arg(long)]
        m: u32,
        #[arg(long, default_value = "12.566370614359172:12867.963509103793")]
        range: Span<f64>,
        #[arg(long, default_value_t = 256)]
        samples: usize,
        #[command(flatten)]
        fmt: FormatFlags,
    },
    /// The weighted norm ‖(iω)^{-k} ψ̂‖_p.
    Norm {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        p: f64,
        /// Frequency cutoff beyond which the decay envelope bounds the tail.
        #[arg(long)]
        omega_max: Option<f64>,
        #[command(flatten)]
        fmt: FormatFlags,
    },
    /// The closed-form bounds A, B, D, E, F, G.
    Bounds {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = std::f64::consts::FRAC_PI_2)]
        eps: f64,
        /// Decay parameter c; fitted when omitted.
        #[arg(long)]
        c: Option<f64>,
        /// Decay constant C̃; fitted when omitted.
        #[arg(long)]
        ctilde: Option<f64>,
        #[arg(long, value_enum, default_value_t = Base::Natural)]
        log_base: Base,
        #[command(flatten)]
        fmt: FormatFlags,
    },
    /// Check one family of inequalities over a parameter grid.
    Verify {
        #[arg(value_enum)]
        which: Which,
        #[command(flatten)]
        grid: GridFlags,
    },
    /// Check the coefficient inequality on a Gaussian test function.
    Bernstein {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 1.0)]
        sigma: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        center: f64,
        #[arg(long, allow_hyphen_values = true)]
        j_range: Span<i32>,
        #[arg(long, allow_hyphen_values = true)]
        nu_range: Span<i32>,
        #[command(flatten)]
        sweep: SweepFlags,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    Theorem1,
    Theorem2,
    Corollary1,
    Corollary2,
    Corollary3,
}

impl From<Which> for Check {
    fn from(w: Which) -> Self {
        match w {
            Which::Theorem1 => Check::Theorem1,
            Which::Theorem2 => Check::Theorem2,
            Which::Corollary1 => Check::Corollary1,
            Which::Corollary2 => Check::Corollary2,
            Which::Corollary3 => Check::Corollary3,
        }
    }
}

#[derive(Args)]
struct GridFlags {
    /// Orders, e.g. `2:6` or `2,4,8`.
    #[arg(long)]
    m: Option<IntList>,
    /// Weight exponents; every k < m when omitted.
    #[arg(long)]
    k: Option<IntList>,
    /// Exponents p, e.g. `1.5,2,3`.
    #[arg(long)]
    p: Option<RealList>,
    #[command(flatten)]
    sweep: SweepFlags,
}

#[derive(Args)]
struct SweepFlags {
    #[arg(long, default_value_t = std::f64::consts::FRAC_PI_2)]
    eps: f64,
    /// Multiplier on G in the asymptotic lower bounds.
    #[arg(long, default_value_t = 0.5)]
    g_slack: f64,
    #[arg(long, default_value_t = DEFAULT_CUTOFF)]
    cutoff: f64,
    #[arg(long, value_enum, default_value_t = Base::Natural)]
    log_base: Base,
    /// Decay parameter c; fitted per order when omitted.
    #[arg(long, requires = "ctilde")]
    c: Option<f64>,
    /// Decay constant C̃; fitted per order when omitted.
    #[arg(long, requires = "c")]
    ctilde: Option<f64>,
}

impl SweepFlags {
    fn config(&self, cli: &Cli) -> SweepConfig {
        SweepConfig {
            quad: QuadConfig::default().with_rel_tol(cli.rel_tol),
            tol: cli.tol,
            eps: self.eps,
            g_slack: self.g_slack,
            cutoff: self.cutoff,
            log_base: self.log_base.into(),
            decay: self.ctilde.zip(self.c),
            ..SweepConfig::default()
        }
    }
}

fn to_u32(list: &IntList) -> Result<Vec<u32>> {
    list.0
        .iter()
        .map(|&v| u32::try_from(v).map_err(|_| anyhow!("expected a nonnegative integer, got {v}")))
        .collect()
}

fn open_out(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn emit_pairs<T: Serialize>(pairs: &[(String, String)], json: &T, format: Format, out: &mut dyn Write) -> Result<()> {
    match format {
        Format::Text => report::write_text(pairs, out),
        Format::Csv => report::write_pairs(pairs, out),
        Format::Json => report::write_json_value(json, out),
    }
}

fn kv(name: &str, value: String) -> (String, String) {
    (name.to_owned(), value)
}

fn quad_config(cli: &Cli) -> QuadConfig {
    QuadConfig::default().with_rel_tol(cli.rel_tol)
}

/// Fitted `(C̃, c)` for order `m`; the Haar envelope with `c = 1` at `m = 1`.
fn fitted_decay(m: u32, base: LogBase) -> Result<(f64, f64)> {
    let spectrum = WaveletSpectrum::new(m, EvalConfig::default())?;
    let model = DecayModel::for_spectrum(&spectrum, DEFAULT_CUTOFF)?;
    let c = if m == 1 { 1.0 } else { model.exponent / base.log(f64::from(m)) };
    Ok((model.c_tilde, c))
}

fn run(cli: &Cli) -> Result<bool> {
    let mut out = open_out(&cli.out)?;
    let ok = match &cli.command {
        Command::Filters { m, fmt } => {
            let filter = construct_filter(*m)?;
            let format = fmt.resolve(cli.format, Format::Text);
            #[derive(Serialize)]
            struct Doc<'a> {
                schema_version: &'static str,
                m: u32,
                taps: &'a [f64],
                reconstruction_residual: f64,
                orthonormality_residual: f64,
            }
            match format {
                Format::Text => {
                    for h in filter.taps() {
                        writeln!(out, "{}", sci(*h))?;
                    }
                }
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(&mut out);
                    w.write_record(["index", "tap"])?;
                    for (i, h) in filter.taps().iter().enumerate() {
                        w.write_record([i.to_string(), sci(*h)])?;
                    }
                    w.flush()?;
                }
                Format::Json => report::write_json_value(
                    &Doc {
                        schema_version: SCHEMA_VERSION,
                        m: *m,
                        taps: filter.taps(),
                        reconstruction_residual: filter.reconstruction_residual(4096),
                        orthonormality_residual: filter.orthonormality_residual(),
                    },
                    &mut out,
                )?,
            }
            true
        }
        Command::Eval { m, omega, abs2, fmt } => {
            let format = fmt.resolve(cli.format, Format::Text);
            #[derive(Serialize)]
            struct Doc {
                schema_version: &'static str,
                m: u32,
                omega: f64,
                re: Option<f64>,
                im: Option<f64>,
                abs2: f64,
            }
            let doc = if *abs2 {
                let s = WaveletSpectrum::new(*m, EvalConfig::default())?;
                Doc { schema_version: SCHEMA_VERSION, m: *m, omega: *omega, re: None, im: None, abs2: s.wavelet_abs2(*omega)? }
            } else {
                let w = Wavelet::new(*m, EvalConfig::default())?;
                let v = w.wavelet_hat(*omega)?;
                Doc { schema_version: SCHEMA_VERSION, m: *m, omega: *omega, re: Some(v.re), im: Some(v.im), abs2: v.norm_sqr() }
            };
            let mut pairs = vec![kv("m", m.to_string()), kv("omega", sci(*omega))];
            if let (Some(re), Some(im)) = (doc.re, doc.im) {
                pairs.push(kv("re", sci(re)));
                pairs.push(kv("im", sci(im)));
            }
            pairs.push(kv("abs2", sci(doc.abs2)));
            emit_pairs(&pairs, &doc, format, &mut out)?;
            true
        }
        Command::Decay { m, range, samples, fmt } => {
            let format = fmt.resolve(cli.format, Format::Text);
            let s = WaveletSpectrum::new(*m, EvalConfig::default())?;
            let fit = estimate_decay(&s, range.lo, range.hi, *samples)?;
            #[derive(Serialize)]
            struct Doc {
                schema_version: &'static str,
                m: u32,
                c_tilde: f64,
                c: f64,
                exponent: f64,
                fit_range: [f64; 2],
                residual: f64,
            }
            let doc = Doc {
                schema_version: SCHEMA_VERSION,
                m: *m,
                c_tilde: fit.c_tilde,
                c: fit.c,
                exponent: fit.exponent,
                fit_range: [fit.fit_range.0, fit.fit_range.1],
                residual: fit.residual,
            };
            let pairs = [
                kv("m", m.to_string()),
                kv("c_tilde", sci(fit.c_tilde)),
                kv("c", sci(fit.c)),
                kv("exponent", sci(fit.exponent)),
                kv("fit_lo", sci(fit.fit_range.0)),
                kv("fit_hi", sci(fit.fit_range.1)),
                kv("residual", sci(fit.residual)),
            ];
            emit_pairs(&pairs, &doc, format, &mut out)?;
            true
        }
        Command::Norm { m, k, p, omega_max, fmt } => {
            let format = fmt.resolve(cli.format, Format::Text);
            let mut req = NormRequest::new(*m, *k, *p);
            if let Some(w) = omega_max {
                req = req.with_cutoff(*w);
            }
            let r = weighted_lp_norm(&req, &EvalConfig::default(), &quad_config(cli))?;
            #[derive(Serialize)]
            struct Doc {
                schema_version: &'static str,
                m: u32,
                k: u32,
                p: f64,
                omega_max: f64,
                value: f64,
                abs_error: f64,
                evaluations: usize,
            }
            let doc = Doc {
                schema_version: SCHEMA_VERSION,
                m: *m,
                k: *k,
                p: *p,
                omega_max: req.cutoff,
                value: r.value,
                abs_error: r.abs_error,
                evaluations: r.evaluations,
            };
            let pairs = [
                kv("value", sci(r.value)),
                kv("abs_error", sci(r.abs_error)),
                kv("evaluations", r.evaluations.to_string()),
            ];
            emit_pairs(&pairs, &doc, format, &mut out)?;
            true
        }
        Command::Bounds { m, k, p, eps, c, ctilde, log_base, fmt } => {
            let format = fmt.resolve(cli.format, Format::Text);
            let base: LogBase = (*log_base).into();
            let (c, c_tilde, fitted) = match (c, ctilde) {
                (Some(c), Some(ct)) => (*c, *ct, false),
                _ => {
                    let (ct, cf) = fitted_decay(*m, base)?;
                    (c.unwrap_or(cf), ctilde.unwrap_or(ct), true)
                }
            };
            let params = BoundParams { m: *m, k: *k, p: *p, eps: *eps, c, c_tilde, log_base: base };
            let set = BoundSet::compute(params);
            let cor2 = bounds::ratio_bounds(&params, bounds::Corollary::Two).ok();
            let cor3 = bounds::ratio_bounds(&params, bounds::Corollary::Three).ok();
            #[derive(Serialize)]
            struct Flags {
                lower_vacuous: bool,
                e_vacuous: bool,
                decay_term_vacuous: bool,
                g_asymptotic: bool,
                decay_fitted: bool,
            }
            #[derive(Serialize)]
            struct Ratio {
                lo: f64,
                hi: Option<f64>,
                lo_vacuous: bool,
                hi_vacuous: bool,
            }
            #[derive(Serialize)]
            struct Doc {
                schema_version: &'static str,
                m: u32,
                k: u32,
                p: f64,
                eps: f64,
                c: f64,
                c_tilde: f64,
                log_base: &'static str,
                a: Option<f64>,
                b: Option<f64>,
                d: Option<f64>,
                e: Option<f64>,
                f: Option<f64>,
                g: Option<f64>,
                corollary2: Option<Ratio>,
                corollary3: Option<Ratio>,
                flags: Flags,
            }
            let ratio = |r: Option<bounds::RatioBounds>| {
                r.map(|r| Ratio { lo: r.lo, hi: r.hi, lo_vacuous: r.lo_vacuous, hi_vacuous: r.hi_vacuous })
            };
            let doc = Doc {
                schema_version: SCHEMA_VERSION,
                m: *m,
                k: *k,
                p: *p,
                eps: *eps,
                c,
                c_tilde,
                log_base: base.name(),
                a: set.a,
                b: set.b,
                d: set.d,
                e: set.e,
                f: set.f,
                g: set.g,
                corollary2: ratio(cor2),
                corollary3: ratio(cor3),
                flags: Flags {
                    lower_vacuous: set.lower_vacuous(),
                    e_vacuous: set.e_vacuous(),
                    decay_term_vacuous: set.decay_term_vacuous(),
                    g_asymptotic: set.g_asymptotic(),
                    decay_fitted: fitted,
                },
            };
            let opt = |x: Option<f64>| x.map(sci).unwrap_or_else(|| "n/a".to_owned());
            let pairs = [
                kv("m", m.to_string()),
                kv("k", k.to_string()),
                kv("p", sci(*p)),
                kv("eps", sci(*eps)),
                kv("c", sci(c)),
                kv("c_tilde", sci(c_tilde)),
                kv("log_base", base.name().to_owned()),
                kv("A", opt(set.a)),
                kv("B", opt(set.b)),
                kv("D", opt(set.d)),
                kv("E", opt(set.e)),
                kv("F", opt(set.f)),
                kv("G", opt(set.g)),
                kv("lower_vacuous", set.lower_vacuous().to_string()),
                kv("e_vacuous", set.e_vacuous().to_string()),
                kv("decay_term_vacuous", set.decay_term_vacuous().to_string()),
                kv("g_asymptotic", set.g_asymptotic().to_string()),
                kv("decay_fitted", fitted.to_string()),
            ];
            emit_pairs(&pairs, &doc, format, &mut out)?;
            true
        }
        Command::Verify { which, grid } => {
            let check: Check = (*which).into();
            let mut g = SweepGrid::standard(check);
            if let Some(m) = &grid.m {
                g.orders = to_u32(m)?;
            }
            if let Some(k) = &grid.k {
                g.ks = to_u32(k)?;
            }
            if let Some(p) = &grid.p {
                g.ps = p.0.clone();
            }
            let cfg = grid.sweep.config(cli);
            sweep(&g, &cfg, cli.format, &mut out)?
        }
        Command::Bernstein { m, k, p, sigma, center, j_range, nu_range, sweep: flags } => {
            let g = SweepGrid {
                orders: vec![*m],
                ks: vec![*k],
                ps: vec![*p],
                scales: (j_range.lo..=j_range.hi).collect(),
                shifts: (nu_range.lo..=nu_range.hi).collect(),
                sigma: *sigma,
                center: *center,
                ..SweepGrid::empty(Check::Bernstein)
            };
            if *k >= *m {
                bail!("the coefficient inequality needs k < m");
            }
            let cfg = flags.config(cli);
            sweep(&g, &cfg, cli.format, &mut out)?
        }
    };
    out.flush()?;
    Ok(ok)
}

fn sweep(grid: &SweepGrid, cfg: &SweepConfig, format: Option<Format>, out: &mut dyn Write) -> Result<bool> {
    let report = verify_sweep(grid, cfg);
    match format.unwrap_or(Format::Csv) {
        Format::Json => report::write_json(&report, cfg, out)?,
        Format::Csv | Format::Text => report::write_csv(&report, out)?,
    }
    let c = report.counts;
    eprintln!(
        "{}: {} rows, {} pass, {} fail, {} vacuous, {} error",
        report.check.name(),
        report.rows.len(),
        c.pass,
        c.fail,
        c.vacuous,
        c.error
    );
    Ok(report.all_ok())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
