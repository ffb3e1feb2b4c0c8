//! Welch's test against reference values and a from-scratch Student-t tail.

use aded::stats::{mean_sd, welch_t};
use aded::RngStream;

fn ln_gamma(x: f64) -> f64 {
    // Lanczos, g = 7, n = 9
    const C: [f64; 9] = [
        0.999_999_999_999_809_9,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_1,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        return (std::f64::consts::PI / (std::f64::consts::PI * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut a = C[0];
    let t = x + 7.5;
    for (i, c) in C.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + a.ln()
}

fn beta_cf(a: f64, b: f64, x: f64) -> f64 {
    let tiny = 1e-300;
    let (qab, qap, qam) = (a + b, a + 1.0, a - 1.0);
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < tiny {
        d = tiny;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..500 {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < tiny {
            d = tiny;
        }
        c = 1.0 + aa / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < tiny {
            d = tiny;
        }
        c = 1.0 + aa / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < 1e-16 {
            break;
        }
    }
    h
}

fn inc_beta(a: f64, b: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let front = (ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b) + a * x.ln() + b * (1.0 - x).ln()).exp();
    if x < (a + 1.0) / (a + b + 2.0) {
        front * beta_cf(a, b, x) / a
    } else {
        1.0 - front * beta_cf(b, a, 1.0 - x) / b
    }
}

/// Two-sided p for Student t with `df` degrees of freedom.
fn two_sided_p(t: f64, df: f64) -> f64 {
    inc_beta(df / 2.0, 0.5, df / (df + t * t))
}

#[test]
fn matches_reference_values() {
    let a = [1.2, 2.3, 0.7, 3.1, 2.2, 1.9];
    let b = [3.4, 2.9, 4.1, 3.8, 5.0];
    let w = welch_t(&a, &b).unwrap();
    assert!((w.t - -3.9172606101313794).abs() < 1e-12);
    assert!((w.df - 8.855054128685103).abs() < 1e-10);
    assert!((w.p - 0.003638343557635872).abs() < 1e-10);

    let a = [0.0, 1e-3, 2e-3, 5e-4];
    let b = [0.1, 0.3, 0.2, 0.25, 0.15, 0.4, 0.35];
    let w = welch_t(&a, &b).unwrap();
    assert!((w.t - -6.101957630024833).abs() < 1e-12);
    assert!((w.df - 6.001312428191254).abs() < 1e-10);
    assert!((w.p - 0.0008820361662150873).abs() < 1e-10);
}

#[test]
fn matches_independent_tail_on_random_samples() {
    let mut rng = RngStream::new(55);
    for _ in 0..500 {
        let na = 2 + rng.index(40);
        let nb = 2 + rng.index(40);
        let shift = rng.uniform_in(-2.0, 2.0);
        let scale = rng.uniform_in(0.1, 5.0);
        let a: Vec<f64> = (0..na).map(|_| rng.uniform_in(-1.0, 1.0)).collect();
        let b: Vec<f64> = (0..nb).map(|_| shift + scale * rng.uniform_in(-1.0, 1.0)).collect();
        let w = welch_t(&a, &b).unwrap();

        let (ma, sa) = mean_sd(&a);
        let (mb, sb) = mean_sd(&b);
        let (va, vb) = (sa * sa / na as f64, sb * sb / nb as f64);
        let t = (ma - mb) / (va + vb).sqrt();
        let df = (va + vb).powi(2) / (va * va / (na - 1) as f64 + vb * vb / (nb - 1) as f64);
        assert!((w.t - t).abs() <= 1e-12 * t.abs().max(1.0));
        assert!((w.df - df).abs() <= 1e-9 * df);
        let p = two_sided_p(t, df);
        assert!((w.p - p).abs() < 1e-9, "p {} vs {p} (t {t}, df {df})", w.p);
    }
}
