//! Command-line driver: verification suites, figure-data reproduction, and
//! table dumps, all emitted as `#`-commented CSV with 17-significant-digit
//! numbers so runs are diff-friendly and round-trip safe.
//!
//! Exit codes: 0 success, 1 numeric failure (a residual above tolerance),
//! 2 usage error.

use clap::{Args, Parser, Subcommand};
use eissum::arith::{hurwitz_h, hurwitz_kronecker_check};
use eissum::forms::{build_form, rho_threshold, FormSpec};
use eissum::numkernel::{
    bessel_j, gamma_real, w_defining_integral, w_function, w_pole_distance,
};
use eissum::precision::PrecisionConfig;
use eissum::summation::{
    asymptotic_ratio, converse_check, error_term_ratio, verify_identity, SummationParams,
};
use rayon::prelude::*;
use std::f64::consts::PI;
use std::io::Write as _;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "eissum", version, about = "Summation-identity verification toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dump exact Hurwitz class numbers H(n) with the Hurwitz–Kronecker
    /// recurrence residual (always 0).
    Hurwitz {
        /// Largest n to include (inclusive).
        #[arg(long, default_value_t = 100)]
        max: u64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Run the special-function oracle grids and report max residuals.
    SpecialSelftest {
        /// Override the per-family tolerances with a single value.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Evaluate both sides of the summation identity on a (ρ, x) grid.
    Verify {
        #[command(flatten)]
        form: FormArgs,
        /// Comma-separated list of ρ values.
        #[arg(long, value_delimiter = ',', required = true)]
        rho: Vec<f64>,
        #[command(flatten)]
        grid: GridArgs,
        /// Pass/fail threshold on the relative residual.
        #[arg(long, default_value_t = 1e-4)]
        tol: f64,
        /// Allow ρ outside the admissible range; such rows are marked and
        /// never fail the suite.
        #[arg(long)]
        experimental: bool,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Reproduce the data behind one of the three ratio figures.
    Figure {
        /// Which figure: 1 (asymptotic ratio), 2 (error-term ratio),
        /// 3 (asymptotic ratio at out-of-range ρ).
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        which: u8,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Check the Laplace-transform (formal q-series) identity at given y.
    Converse {
        #[command(flatten)]
        form: FormArgs,
        /// Comma-separated list of y values (> 0).
        #[arg(long, value_delimiter = ',', required = true)]
        y: Vec<f64>,
        /// Pass/fail threshold on the relative residual.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Dump the Fourier coefficients a±(n), b±(n) of a form.
    DumpCoeffs {
        #[command(flatten)]
        form: FormArgs,
        /// Largest index to include (inclusive).
        #[arg(long, default_value_t = 50)]
        max: u64,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Args)]
struct FormArgs {
    /// Form family: `zagier` or `eisenstein-p`.
    #[arg(long, default_value = "zagier")]
    form: String,
    /// Family parameter (odd k ≥ 5 for eisenstein-p).
    #[arg(long)]
    k: Option<u32>,
}

impl FormArgs {
    fn build(&self) -> Result<FormSpec, String> {
        build_form(&self.form, self.k).map_err(|e| e.to_string())
    }
}

#[derive(Args)]
struct GridArgs {
    /// First grid point.
    #[arg(long, default_value_t = 10.0)]
    x_start: f64,
    /// Last grid point.
    #[arg(long, default_value_t = 10_000.0)]
    x_stop: f64,
    /// Number of grid points.
    #[arg(long, default_value_t = 25)]
    x_points: usize,
    /// Space the grid logarithmically instead of linearly.
    #[arg(long)]
    x_log: bool,
}

impl GridArgs {
    fn points(&self) -> Result<Vec<f64>, String> {
        if !(self.x_stop > self.x_start && self.x_start > 0.0) {
            return Err("grid requires x_stop > x_start > 0".into());
        }
        if self.x_points == 0 {
            return Err("grid requires at least one point".into());
        }
        if self.x_points == 1 {
            return Ok(vec![self.x_start]);
        }
        let n = self.x_points as f64 - 1.0;
        Ok((0..self.x_points)
            .map(|i| {
                let t = i as f64 / n;
                if self.x_log {
                    self.x_start * (self.x_stop / self.x_start).powf(t)
                } else {
                    self.x_start + (self.x_stop - self.x_start) * t
                }
            })
            .collect())
    }
}

#[derive(Args)]
struct OutArgs {
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    /// Significant digits for printed numbers.
    #[arg(long, default_value_t = 17)]
    digits: usize,
}

impl OutArgs {
    fn write(&self, body: &str) -> std::io::Result<()> {
        match &self.out {
            Some(path) => std::fs::write(path, body),
            None => std::io::stdout().write_all(body.as_bytes()),
        }
    }

    fn fmt(&self, v: f64) -> String {
        format!("{:.*e}", self.digits.clamp(1, 17) - 1, v)
    }
}

/// Standard `#`-prefixed metadata header.
fn header(kind: &str, form: Option<&FormSpec>, extra: &str) -> String {
    let mut s = format!(
        "# eissum {} {}\n# truncation: certified tail bounds where available, \
         oscillation-averaged partial sums otherwise\n",
        env!("CARGO_PKG_VERSION"),
        kind
    );
    let cfg = PrecisionConfig::default();
    s += &format!(
        "# precision: working_digits={} quad_tol={:e} series_tol={:e}\n",
        cfg.working_digits, cfg.quad_tol, cfg.series_tol
    );
    if let Some(f) = form {
        s += &format!("# form: {} weight={} level={}\n", f.name, f.k, f.level);
    }
    if !extra.is_empty() {
        s += &format!("# {extra}\n");
    }
    s
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Hurwitz { max, out } => cmd_hurwitz(max, &out),
        Command::SpecialSelftest { tol } => cmd_special_selftest(tol),
        Command::Verify {
            form,
            rho,
            grid,
            tol,
            experimental,
            out,
        } => cmd_verify(&form, &rho, &grid, tol, experimental, &out),
        Command::Figure { which, grid, out } => cmd_figure(which, &grid, &out),
        Command::Converse { form, y, tol, out } => cmd_converse(&form, &y, tol, &out),
        Command::DumpCoeffs { form, max, out } => cmd_dump_coeffs(&form, max, &out),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn cmd_hurwitz(max: u64, out: &OutArgs) -> Result<bool, String> {
    let mut body = header("hurwitz", None, "columns: n,numerator,denominator,hk_residual");
    body += "n,numerator,denominator,hk_residual\n";
    for n in 0..=max {
        let h = hurwitz_h(n);
        let residual = if n == 0 {
            "0".to_string()
        } else {
            let r = hurwitz_kronecker_check(n);
            format!("{r}")
        };
        body += &format!("{n},{},{},{residual}\n", h.numer(), h.denom());
    }
    out.write(&body).map_err(|e| e.to_string())?;
    Ok(true)
}

fn cmd_special_selftest(tol_override: Option<f64>) -> Result<bool, String> {
    let cfg = PrecisionConfig::default();
    let mut ok = true;

    // W recursion: s·W_ν(s) = 2^ν Γ(s+ν) − W_ν(s+1), away from poles.
    let mut max_rec = 0.0f64;
    for &nu in &[-0.5f64, 0.5, 1.5, 2.5, -1.3, 3.75] {
        for i in 0..40 {
            let s = -3.9 + 0.2 * i as f64;
            if w_pole_distance(nu, s) < 0.05 || w_pole_distance(nu, s + 1.0) < 0.05 {
                continue;
            }
            let lhs = s * w_function(nu, s).map_err(|e| e.to_string())?;
            let rhs = 2f64.powf(nu) * gamma_real(s + nu).map_err(|e| e.to_string())?
                - w_function(nu, s + 1.0).map_err(|e| e.to_string())?;
            let scale = lhs.abs().max(rhs.abs()).max(1.0);
            max_rec = max_rec.max((lhs - rhs).abs() / scale);
        }
    }
    let tol_rec = tol_override.unwrap_or(1e-10);
    println!("W recursion grid:        max residual {max_rec:.3e} (tol {tol_rec:.1e})");
    ok &= max_rec < tol_rec;

    // W closed form against the defining integral, in the convergence region.
    let mut max_int = 0.0f64;
    for &nu in &[-0.5f64, 0.5, 1.5, 2.5] {
        for i in 0..12 {
            let s = (-nu).max(0.0) + 0.3 + 0.35 * i as f64;
            if w_pole_distance(nu, s) < 0.05 {
                continue;
            }
            let closed = w_function(nu, s).map_err(|e| e.to_string())?;
            let quad = w_defining_integral(nu, s, &cfg).map_err(|e| e.to_string())?;
            max_int = max_int.max((closed - quad.re()).abs() / closed.abs().max(1.0));
        }
    }
    let tol_int = tol_override.unwrap_or(1e-8);
    println!("W closed-vs-integral:    max rel error {max_int:.3e} (tol {tol_int:.1e})");
    ok &= max_int < tol_int;

    // Half-integer Bessel closed forms.
    let mut max_bes = 0.0f64;
    for i in 1..=60 {
        let z = 0.25 * i as f64;
        let c = (2.0 / (PI * z)).sqrt();
        let closed_half = c * z.sin();
        let closed_mhalf = c * z.cos();
        let closed_3half = c * (z.sin() / z - z.cos());
        for (nu, closed) in [(0.5, closed_half), (-0.5, closed_mhalf), (1.5, closed_3half)] {
            let j = bessel_j(nu, z, &cfg).map_err(|e| e.to_string())?;
            max_bes = max_bes.max((j.re() - closed).abs() / closed.abs().max(1e-3));
        }
    }
    let tol_bes = tol_override.unwrap_or(1e-12);
    println!("Bessel half-integer:     max rel error {max_bes:.3e} (tol {tol_bes:.1e})");
    ok &= max_bes < tol_bes;

    Ok(ok)
}

fn cmd_verify(
    form_args: &FormArgs,
    rhos: &[f64],
    grid: &GridArgs,
    tol: f64,
    experimental: bool,
    out: &OutArgs,
) -> Result<bool, String> {
    let form = form_args.build()?;
    let xs = grid.points()?;
    let jobs: Vec<(f64, f64)> = rhos
        .iter()
        .flat_map(|&r| xs.iter().map(move |&x| (r, x)))
        .collect();
    let threshold = rho_threshold(&form).min_rho();

    let rows: Vec<Result<String, String>> = jobs
        .par_iter()
        .map(|&(rho, x)| {
            let mut params = SummationParams::new(rho, x);
            if experimental {
                params = params.experimental();
            }
            let r = verify_identity(&form, &params).map_err(|e| e.to_string())?;
            let is_exp = rho <= threshold;
            let pass = r.rel_residual <= tol || is_exp;
            Ok(format!(
                "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
                out.fmt(rho),
                out.fmt(x),
                out.fmt(r.lhs_weighted.re),
                out.fmt(r.lhs_weighted.im),
                out.fmt(r.lhs_nonholo.re),
                out.fmt(r.lhs_nonholo.im),
                out.fmt(r.residual_q.re),
                out.fmt(r.residual_q.im),
                out.fmt(r.rhs_holo.re),
                out.fmt(r.rhs_holo.im),
                out.fmt(r.rhs_nonholo.re),
                out.fmt(r.rhs_nonholo.im),
                out.fmt(r.rel_residual),
                r.conditional,
                r.converged,
                if is_exp { "experimental" } else if pass { "pass" } else { "fail" },
            ))
        })
        .collect();

    let mut body = header(
        "verify",
        Some(&form),
        &format!("tol={tol:e} experimental={experimental}"),
    );
    body += "rho,x,lhs_weighted_re,lhs_weighted_im,lhs_nonholo_re,lhs_nonholo_im,\
             residual_q_re,residual_q_im,rhs_holo_re,rhs_holo_im,rhs_nonholo_re,\
             rhs_nonholo_im,rel_residual,conditional,converged,status\n";
    let mut all_pass = true;
    for row in rows {
        let row = row?;
        all_pass &= !row.contains(",fail\n");
        body += &row;
    }
    out.write(&body).map_err(|e| e.to_string())?;
    Ok(all_pass)
}

fn cmd_figure(which: u8, grid: &GridArgs, out: &OutArgs) -> Result<bool, String> {
    let form = build_form("zagier", None).map_err(|e| e.to_string())?;
    let (rhos, label): (Vec<f64>, &str) = match which {
        1 => (vec![0.5 + 1e-5, 1.0, 1.5, 2.0], "asymptotic_ratio"),
        2 => (vec![1.5, 2.0, 5.0, 10.0], "error_term_ratio"),
        3 => (vec![0.0, -0.1, -0.5], "asymptotic_ratio (experimental)"),
        _ => unreachable!("clap range"),
    };
    let xs = grid.points()?;

    let rows: Vec<Result<String, String>> = xs
        .par_iter()
        .map(|&x| {
            let mut cells = vec![out.fmt(x)];
            for &rho in &rhos {
                let mut params = SummationParams::new(rho, x);
                if which == 3 {
                    params = params.experimental();
                }
                let v = match which {
                    2 => error_term_ratio(&form, &params),
                    _ => asymptotic_ratio(&form, &params),
                }
                .map_err(|e| e.to_string())?;
                cells.push(out.fmt(v));
            }
            Ok(cells.join(",") + "\n")
        })
        .collect();

    let mut body = header(
        "figure",
        Some(&form),
        &format!("figure={which} quantity={label}"),
    );
    body += &(std::iter::once("x".to_string())
        .chain(rhos.iter().map(|r| format!("rho={r}")))
        .collect::<Vec<_>>()
        .join(",")
        + "\n");
    for row in rows {
        body += &row?;
    }
    out.write(&body).map_err(|e| e.to_string())?;
    Ok(true)
}

fn cmd_converse(
    form_args: &FormArgs,
    ys: &[f64],
    tol: f64,
    out: &OutArgs,
) -> Result<bool, String> {
    let form = form_args.build()?;
    if ys.iter().any(|&y| y <= 0.0) {
        return Err("converse requires y > 0".into());
    }
    let cfg = PrecisionConfig::default();
    let mut body = header("converse", Some(&form), &format!("tol={tol:e}"));
    body += "y,abs_residual,scale,rel_residual,status\n";
    let mut all_pass = true;
    for &y in ys {
        let r = converse_check(&form, y, &cfg).map_err(|e| e.to_string())?;
        let pass = r.rel() <= tol;
        all_pass &= pass;
        body += &format!(
            "{},{},{},{},{}\n",
            out.fmt(y),
            out.fmt(r.residual.norm()),
            out.fmt(r.scale),
            out.fmt(r.rel()),
            if pass { "pass" } else { "fail" }
        );
    }
    out.write(&body).map_err(|e| e.to_string())?;
    Ok(all_pass)
}

fn cmd_dump_coeffs(form_args: &FormArgs, max: u64, out: &OutArgs) -> Result<bool, String> {
    let form = form_args.build()?;
    let mut body = header(
        "dump-coeffs",
        Some(&form),
        "columns: n and the four coefficient sequences, re/im interleaved",
    );
    body += "n,a_plus_re,a_plus_im,a_minus_re,a_minus_im,b_plus_re,b_plus_im,b_minus_re,b_minus_im\n";
    for n in 1..=max {
        let ap = form.a_plus(n).map_err(|e| e.to_string())?;
        let am = form.a_minus(n).map_err(|e| e.to_string())?;
        let bp = form.b_plus(n).map_err(|e| e.to_string())?;
        let bm = form.b_minus(n).map_err(|e| e.to_string())?;
        body += &format!(
            "{n},{},{},{},{},{},{},{},{}\n",
            out.fmt(ap.re),
            out.fmt(ap.im),
            out.fmt(am.re),
            out.fmt(am.im),
            out.fmt(bp.re),
            out.fmt(bp.im),
            out.fmt(bm.re),
            out.fmt(bm.im)
        );
    }
    out.write(&body).map_err(|e| e.to_string())?;
    Ok(true)
}
