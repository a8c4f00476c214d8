//! Counts checked against closed formulas that do not use the library's
//! length function.

use prohecke::{RootDatum, Setup, WeylGroup};

/// Power series product truncated at degree `n`.
fn mul_series(a: &[i64], b: &[i64], n: usize) -> Vec<i64> {
    let mut out = vec![0; n + 1];
    for (i, &x) in a.iter().enumerate().take(n + 1) {
        for (j, &y) in b.iter().enumerate().take(n + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `Π (1 + x + ... + x^{d-1}) / Π (1 - x^{e})` up to degree `n`, with
/// degrees `d = e + 1` taken from the exponents `e`.
fn bott_series(exponents: &[usize], n: usize) -> Vec<i64> {
    let mut s = vec![1i64];
    for &e in exponents {
        s = mul_series(&s, &vec![1; e + 1], n);
        let geometric: Vec<i64> = (0..=n).map(|k| i64::from(k % e == 0)).collect();
        s = mul_series(&s, &geometric, n);
    }
    s.resize(n + 1, 0);
    s
}

fn level_counts(weyl: &WeylGroup, n: usize) -> Vec<i64> {
    let mut counts = vec![0i64; n + 1];
    for w in weyl.enumerate_affine(n) {
        counts[weyl.length(&w)] += 1;
    }
    counts
}

#[test]
fn affine_poincare_series() {
    let n = 9;
    for (preset, exponents) in [
        ("SL2", vec![1]),
        ("SL3", vec![1, 2]),
        ("Sp4", vec![1, 3]),
        ("G2sc", vec![1, 5]),
        ("GL3", vec![1, 2]),
    ] {
        let weyl = WeylGroup::new(RootDatum::preset(preset).unwrap());
        assert_eq!(
            level_counts(&weyl, n),
            bott_series(&exponents, n),
            "{preset}"
        );
    }
    let weyl = WeylGroup::new(RootDatum::preset("SL2xSL2").unwrap());
    let a1 = bott_series(&[1], n);
    assert_eq!(level_counts(&weyl, n), mul_series(&a1, &a1, n));
}

#[test]
fn finite_weyl_orders() {
    for (preset, order) in [
        ("SL2", 2),
        ("PGL2", 2),
        ("GL2", 2),
        ("SL3", 6),
        ("GL3", 6),
        ("Sp4", 8),
        ("G2sc", 12),
        ("SL2xSL2", 4),
    ] {
        let weyl = WeylGroup::new(RootDatum::preset(preset).unwrap());
        assert_eq!(weyl.finite().order(), order, "{preset}");
        let longest = (0..order).map(|w| weyl.finite().length(w)).max().unwrap();
        assert_eq!(longest, weyl.root_datum().num_roots() / 2, "{preset}");
    }
}

/// `|Ω| = |Λ / Q^v|`, the absolute determinant of the simple coroots in the
/// semisimple case.
#[test]
fn omega_orders() {
    for (preset, size) in [
        ("SL2", 1),
        ("PGL2", 2),
        ("SL3", 1),
        ("Sp4", 1),
        ("G2sc", 1),
        ("SL2xSL2", 1),
    ] {
        let weyl = WeylGroup::new(RootDatum::preset(preset).unwrap());
        assert!(weyl.omega().finite);
        assert_eq!(weyl.omega().elements.len(), size, "{preset}");
        assert!(weyl.omega().elements.iter().all(|w| weyl.length(w) == 0));
    }
    for preset in ["GL2", "GL3"] {
        assert!(
            !WeylGroup::new(RootDatum::preset(preset).unwrap())
                .omega()
                .finite
        );
    }
}

/// `|W~ ∩ {ℓ ≤ n}| = |T_q| · |W ∩ {ℓ ≤ n}|` and `|Ω~| = |T_q| |Ω|`.
#[test]
fn pro_p_counts() {
    for (preset, p, m) in [("SL2", 3, 1), ("SL3", 2, 2), ("PGL2", 5, 1), ("Sp4", 3, 1)] {
        let s = Setup::preset(preset, p, m, m).unwrap();
        let q = s.group.q();
        let torus = ((q - 1) as usize).pow(s.group.rank() as u32);
        assert_eq!(s.group.torus().len(), torus);
        assert_eq!(
            s.group.enumerate(3).len(),
            torus * s.group.weyl().enumerate(3).len()
        );
        let omega = s.group.weyl().omega().elements.len();
        assert_eq!(s.group.omega_tilde().unwrap().len(), torus * omega);
    }
}
