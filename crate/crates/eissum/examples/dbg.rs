use eissum::forms::build_form;
use eissum::forms::FormSpec;
use eissum::numkernel::upper_incomplete_gamma;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Evaluate the harmonic expansion Σ c+(n) q^n + c-(0) y^{1-k} + Σ c-(n) Γ(1-k,4πny) q^{-n}.
fn eval(
    c0p: Complex64,
    c0m: Complex64,
    cp: &dyn Fn(u64) -> Complex64,
    cm: &dyn Fn(u64) -> Complex64,
    k: f64,
    tau: Complex64,
) -> Complex64 {
    let (x, y) = (tau.re, tau.im);
    let mut acc = c0p + c0m * y.powf(1.0 - k);
    for n in 1..=3000u64 {
        let nf = n as f64;
        let qn = (Complex64::new(0.0, 2.0 * PI * nf) * tau).exp();
        let mut term = cp(n) * qn;
        let g = if 4.0 * PI * nf * y < 600.0 {
            upper_incomplete_gamma(1.0 - k, 4.0 * PI * nf * y).unwrap_or(0.0)
        } else {
            0.0
        };
        if g != 0.0 {
            // q^{-n} = e^{-2πinx} e^{2πny}
            term += cm(n)
                * g
                * (Complex64::new(0.0, -2.0 * PI * nf * x)).exp()
                * (2.0 * PI * nf * y).exp();
        }
        acc += term;
        if qn.norm() < 1e-18 && g * (2.0 * PI * nf * y).exp() < 1e-18 {
            break;
        }
    }
    acc
}

fn f_of(form: &FormSpec, tau: Complex64) -> Complex64 {
    eval(
        form.a0_plus,
        form.a0_minus,
        &|n| form.a_plus(n).unwrap(),
        &|n| form.a_minus(n).unwrap(),
        form.k,
        tau,
    )
}

fn g_of(form: &FormSpec, tau: Complex64) -> Complex64 {
    eval(
        form.b0_plus,
        form.b0_minus,
        &|n| form.b_plus(n).unwrap(),
        &|n| form.b_minus(n).unwrap(),
        form.k,
        tau,
    )
}


/// F minus its two constant terms.
fn f_rest(form: &FormSpec, tau: Complex64) -> Complex64 {
    f_of(form, tau) - form.a0_plus - form.a0_minus * tau.im.powf(1.0 - form.k)
}

fn main() {
    let form = build_form("eisenstein-p", Some(7)).unwrap();
    let k = form.k; // -1/2

    // sanity: L(chi_{-4}, 2) should be Catalan's constant
    {
        use eissum::arith::{dirichlet_l_int, zeta_real, QuadChar};
        use eissum::precision::PrecisionConfig;
        let cfg = PrecisionConfig::default();
        let l = dirichlet_l_int(&QuadChar::new(-4), 2, &cfg).unwrap().re();
        println!("L(chi_-4, 2) = {l:.12}  (Catalan = 0.915965594177)");
        let z4 = zeta_real(4.0, &cfg).unwrap().re();
        println!("zeta(4) = {z4:.12}  (pi^4/90 = {:.12})", PI.powi(4) / 90.0);
        let l8 = dirichlet_l_int(&QuadChar::new(8), 2, &cfg).unwrap().re();
        println!("L(chi_8, 2) = {l8:.12}");
    }

    // Solve for the constant terms (a0+, a0-) demanded by modularity at two
    // points; check consistency at two more. j = nu * (4 tau + 1)^k.
    let pts: Vec<Complex64> = vec![
        Complex64::new(0.0, 0.6),
        Complex64::new(0.13, 0.71),
        Complex64::new(-0.22, 0.55),
        Complex64::new(0.06, 0.9),
    ];
    let rests: Vec<(Complex64, Complex64, Complex64, f64, f64)> = pts
        .iter()
        .map(|&tau| {
            let gtau = tau / (4.0 * tau + 1.0);
            let j0 = (4.0 * tau + 1.0).powc(Complex64::new(k, 0.0));
            (tau, f_rest(&form, tau), f_rest(&form, gtau), tau.im, gtau.im)
        })
        .collect();
    let mut a0_solved = (Complex64::new(0.0,0.0), Complex64::new(0.0,0.0));
    for m in 0..8u32 {
        let nu = Complex64::new(0.0, PI * m as f64 / 4.0).exp();
        // rows: a0p*(1-j) + a0m*(Y^{3/2} - j y^{3/2}) = j*R(tau) - R(gtau)
        let row = |i: usize| {
            let (tau, r, rg, y, yy) = rests[i];
            let j = nu * (4.0 * tau + 1.0).powc(Complex64::new(k, 0.0));
            (
                Complex64::new(1.0, 0.0) - j,
                Complex64::new(yy.powf(1.0 - k), 0.0) - j * y.powf(1.0 - k),
                j * r - rg,
            )
        };
        let (a1, b1, c1) = row(0);
        let (a2, b2, c2) = row(1);
        let det = a1 * b2 - a2 * b1;
        let a0p = (c1 * b2 - c2 * b1) / det;
        let a0m = (a1 * c2 - a2 * c1) / det;
        // consistency residuals at points 2,3 (relative to |F|)
        let mut res = [0.0f64; 2];
        for (idx, i) in [2usize, 3usize].iter().enumerate() {
            let (a, b, c) = row(*i);
            let (tau, ..) = rests[*i];
            let scale = f_of(&form, tau).norm().max(1e-30);
            res[idx] = (a * a0p + b * a0m - c).norm() / scale;
        }
        println!(
            "nu=e^(i pi {m}/4): a0+ = {a0p:.9}  a0- = {a0m:.9}  res = {:.3e}, {:.3e}",
            res[0], res[1]
        );
        if m == 0 { a0_solved = (a0p, a0m); }
    }
    println!("current: a0+ = {:.6}  a0- = {:.6}", form.a0_plus, form.a0_minus);

    // same solve for the b-side constants
    let g_rest = |tau: Complex64| -> Complex64 {
        g_of(&form, tau) - form.b0_plus - form.b0_minus * tau.im.powf(1.0 - k)
    };
    let rests_b: Vec<(Complex64, Complex64, Complex64)> = pts
        .iter()
        .map(|&tau| (tau, g_rest(tau), g_rest(tau / (4.0 * tau + 1.0))))
        .collect();
    let row_b = |i: usize| {
        let (tau, r, rg) = rests_b[i];
        let j = (4.0 * tau + 1.0).powc(Complex64::new(k, 0.0));
        let y = tau.im;
        let yy = (tau / (4.0 * tau + 1.0)).im;
        (
            Complex64::new(1.0, 0.0) - j,
            Complex64::new(yy.powf(1.0 - k), 0.0) - j * y.powf(1.0 - k),
            j * r - rg,
        )
    };
    let (a1, b1, c1) = row_b(0);
    let (a2, b2, c2) = row_b(1);
    let det = a1 * b2 - a2 * b1;
    let b0p = (c1 * b2 - c2 * b1) / det;
    let b0m = (a1 * c2 - a2 * c1) / det;
    let mut res = [0.0f64; 2];
    for (idx, i) in [2usize, 3usize].iter().enumerate() {
        let (a, b, c) = row_b(*i);
        let (tau, ..) = rests_b[*i];
        res[idx] = (a * b0p + b * b0m - c).norm() / g_of(&form, tau).norm().max(1e-30);
    }
    println!("solved: b0+ = {b0p:.9}  b0- = {b0m:.9}  res = {:.3e}, {:.3e}", res[0], res[1]);
    println!("current: b0+ = {:.9}  b0- = {:.9}", form.b0_plus, form.b0_minus);

    // with solved constants patched in, the Fricke ratio should be a single
    // global phase, constant in tau
    let f_true = |tau: Complex64| -> Complex64 {
        f_rest(&form, tau) + a0_solved.0 + a0_solved.1 * tau.im.powf(1.0 - k)
    };
    let g_true = |tau: Complex64| -> Complex64 {
        g_rest(tau) + b0p + b0m * tau.im.powf(1.0 - k)
    };
    println!("-- Fricke with solved constants: G(tau) / [4^(k/2)(4tau)^(-k) F(-1/4tau)] --");
    for &(x, y) in &[(0.0f64, 0.5f64), (0.0, 1.0), (0.1, 0.45), (-0.17, 0.8), (0.0, 0.25)] {
        let tau = Complex64::new(x, y);
        let wtau = -1.0 / (4.0 * tau);
        let fr = 4f64.powf(k / 2.0) * (4.0 * tau).powc(Complex64::new(-k, 0.0)) * f_true(wtau);
        println!("tau={tau:.3}: ratio = {:.9}", g_true(tau) / fr);
    }

    // closed-form candidates for the solved a0+
    {
        use eissum::arith::zeta_real;
        use eissum::precision::PrecisionConfig;
        let cfg = PrecisionConfig::default();
        let zr = zeta_real(3.0, &cfg).unwrap().re() * (1.0 - 2f64.powf(-2.0))
            / (zeta_real(4.0, &cfg).unwrap().re() * (1.0 - 2f64.powf(-4.0)));
        println!("a0+_solved / (pi * zratio(1-2^{{2-k}})->(1-2^{{-2}})) = {:.9}", a0_solved.0.re / (PI * zr));
        let zr0 = zeta_real(3.0, &cfg).unwrap().re() * (1.0 - 2f64.powf(-3.0))
            / (zeta_real(4.0, &cfg).unwrap().re() * (1.0 - 2f64.powf(-4.0)));
        println!("a0+_solved / (pi * zratio_printed)          = {:.9}", a0_solved.0.re / (PI * zr0));
        println!("a0+_solved / a0+_printed                    = {:.9}", a0_solved.0 / form.a0_plus);
    }

    // --- extract the true Fricke-image Fourier data by x-integration ---
    let gt = |tau: Complex64| -> Complex64 {
        let wtau = -1.0 / (4.0 * tau);
        4f64.powf(k / 2.0) * (4.0 * tau).powc(Complex64::new(-k, 0.0)) * f_true(wtau)
    };
    // periodicity sanity
    {
        let t = Complex64::new(0.23, 0.8);
        let d = (gt(t + 1.0) - gt(t)).norm() / gt(t).norm();
        println!("periodicity defect of fricke image: {d:.3e}");
    }
    let fourier = |n: f64, y: f64| -> Complex64 {
        let m = 128usize;
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..m {
            let x = i as f64 / m as f64;
            acc += gt(Complex64::new(x, y)) * Complex64::new(0.0, -2.0 * PI * n * x).exp();
        }
        acc / m as f64
    };
    // constants: coefficient of 1 and of y^{1-k} from n=0 modes at two y's
    {
        let (y1, y2) = (0.6, 1.0);
        let (c1, c2) = (fourier(0.0, y1), fourier(0.0, y2));
        let (p1, p2) = (y1.powf(1.0 - k), y2.powf(1.0 - k));
        let b0m_t = (c2 - c1) / (p2 - p1);
        let b0p_t = c1 - b0m_t * p1;
        println!("fricke-image constants: b0+ = {b0p_t:.9}  b0- = {b0m_t:.9}");
        println!("  vs modularity-solved: b0+ = 0.465218155  b0- = 0.5");
        println!("  b0+_t/printed = {:.9}  b0-_t/printed = {:.9}",
                 b0p_t / form.b0_plus, b0m_t / form.b0_minus);
    }
    // per-n coefficients
    use eissum::arith::a_k;
    println!("-- per-n fricke-image data, mixture r(n) = B(n)/v(n) with v = a(n)/A_k(n) --");
    println!("   (true bracket should be c1*A_k(n) + c2 for constants c1, c2)");
    let mut rows_p: Vec<(Complex64, Complex64)> = vec![]; // (A_k(n), r(n))
    let mut rows_m: Vec<(Complex64, Complex64)> = vec![];
    for n in 1..=6i64 {
        let nf = n as f64;
        let (y1, y2) = (1.2 / nf, 2.0 / nf);
        let (c1, c2) = (fourier(nf, y1), fourier(nf, y2));
        // c(y) = Bp*e^{-2 pi n y} + Bm*G(1-k,4 pi n y)e^{2 pi n y}
        let e1 = (-2.0 * PI * nf * y1).exp();
        let e2 = (-2.0 * PI * nf * y2).exp();
        let g1 = upper_incomplete_gamma(1.0 - k, 4.0 * PI * nf * y1).unwrap() * (2.0 * PI * nf * y1).exp();
        let g2 = upper_incomplete_gamma(1.0 - k, 4.0 * PI * nf * y2).unwrap() * (2.0 * PI * nf * y2).exp();
        let det = e1 * g2 - e2 * g1;
        let bp = (c1 * g2 - c2 * g1) / det;
        let bm = (e1 * c2 - e2 * c1) / det;
        let ap = form.a_plus(n as u64).unwrap();
        let am = form.a_minus(n as u64).unwrap();
        let akp = a_k(7, n).unwrap();
        let akm = a_k(7, -n).unwrap();
        let rp = bp / (ap / akp);
        let rm = bm / (am / akm);
        println!("n={n}: B+ = {bp:.9}  r+ = {rp:.9}  A_k = {akp:.6}");
        println!("      B- = {bm:.9}  r- = {rm:.9}  A_k(-n) = {akm:.6}");
        rows_p.push((akp, rp));
        rows_m.push((akm, rm));
    }
    // least squares for (c1, c2) on each side
    let lsq = |rows: &[(Complex64, Complex64)]| {
        let n = rows.len() as f64;
        let sa: Complex64 = rows.iter().map(|r| r.0).sum();
        let saa: Complex64 = rows.iter().map(|r| r.0 * r.0).sum();
        let sr: Complex64 = rows.iter().map(|r| r.1).sum();
        let sar: Complex64 = rows.iter().map(|r| r.0 * r.1).sum();
        let det = saa * n - sa * sa;
        let c1 = (sar * n - sa * sr) / det;
        let c2 = (saa * sr - sa * sar) / det;
        let mut worst = 0.0f64;
        for r in rows {
            worst = worst.max((c1 * r.0 + c2 - r.1).norm() / r.1.norm());
        }
        (c1, c2, worst)
    };
    let (c1p, c2p, wp) = lsq(&rows_p);
    let (c1m, c2m, wm) = lsq(&rows_m);
    println!("plus side:  c1 = {c1p:.9}  c2 = {c2p:.9}  worst rel resid = {wp:.3e}");
    println!("minus side: c1 = {c1m:.9}  c2 = {c2m:.9}  worst rel resid = {wm:.3e}");
    let e4 = Complex64::new(0.0, PI / 4.0).exp();
    println!("printed bracket constants: c1 = 0.25, c2 = {:.9}", (2f64.powf(-3.0)*0.5 - 1.0)/Complex64::new(0.0,2.0).powf(2.5));
    println!("c1p/e^(i pi/4) = {:.9}  c2p/e^(i pi/4) = {:.9}", c1p / e4, c2p / e4);
    println!("c1m/e^(i pi/4) = {:.9}  c2m/e^(i pi/4) = {:.9}", c1m / e4, c2m / e4);
}
