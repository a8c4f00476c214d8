//! The top Ext-space `E^d` as an `H`-bimodule in the dual basis `φ_w`.
//!
//! Generators act by
//! `φ_w · τ_{n_s} = φ_{w ñ_s} + |μ| Σ_t φ_{w t}` when `ℓ(ws) < ℓ(w)` and `0`
//! otherwise, mirrored on the left; length-zero elements relabel.
//! Coordinates are normalized so that the trace `S_d(φ_w) = 1`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf::FieldElt;
use crate::hecke::{Eps, HeckeAlgebra, HeckeElt};
use crate::lincomb::{Comb, Phi};
use crate::propweyl::ProPElt;
use crate::rootdata::Coords;
use crate::weyl::Side;

pub type TopElt = Comb<Phi>;

/// One checked `(m, λ, w, side)` case of the supersingularity audit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditEntry {
    pub m: usize,
    pub lambda: Coords,
    pub w: ProPElt,
    pub side: Side,
    pub eps: Option<Vec<Eps>>,
    pub supersingular: bool,
    pub error: Option<String>,
}

impl AuditEntry {
    pub fn passed(&self) -> bool {
        self.supersingular && self.error.is_none()
    }
}

#[derive(Clone, Debug)]
pub struct TopModule {
    alg: HeckeAlgebra,
}

impl TopModule {
    pub fn new(alg: HeckeAlgebra) -> TopModule {
        TopModule { alg }
    }

    pub fn algebra(&self) -> &HeckeAlgebra {
        &self.alg
    }

    pub fn phi(&self, x: ProPElt) -> TopElt {
        TopElt::basis(x, self.alg.field().one())
    }

    /// `φ_w · τ_{ñ_s}` extended linearly.
    pub fn right_gen(&self, x: &TopElt, j: usize) -> TopElt {
        let g = self.alg.group();
        let k = self.alg.field();
        let mut out = TopElt::zero();
        for (w, &c) in x.iter() {
            if g.is_right_descent(w, j) {
                out.add_term(k, g.mul(w, g.gen(j)), c);
                let cm = k.mul(c, self.alg.mu_size(j));
                for t in g.s_image(j).0 {
                    out.add_term(k, g.torus_mul_right(w, t), cm);
                }
            }
        }
        out
    }

    /// `τ_{ñ_s} · φ_w` extended linearly.
    pub fn left_gen(&self, j: usize, x: &TopElt) -> TopElt {
        let g = self.alg.group();
        let k = self.alg.field();
        let mut out = TopElt::zero();
        for (w, &c) in x.iter() {
            if g.is_left_descent(w, j) {
                out.add_term(k, g.gen_mul_left(j, w), c);
                let cm = k.mul(c, self.alg.mu_size(j));
                for t in g.s_image(j).0 {
                    out.add_term(k, g.torus_mul_left(t, w), cm);
                }
            }
        }
        out
    }

    /// Action of `τ_y` where `y = ω~ ñ_{i1} ⋯ ñ_{il}` for the given word.
    pub fn act_basis_along(&self, y: &ProPElt, word: &[usize], x: &TopElt, side: Side) -> TopElt {
        let g = self.alg.group();
        let k = self.alg.field();
        let mut omega = y.clone();
        for &j in word.iter().rev() {
            omega = g.mul(&omega, &g.inv(g.gen(j)));
        }
        match side {
            Side::Right => {
                let mut cur = x.map_basis(k, |w| g.mul(w, &omega));
                for &j in word {
                    cur = self.right_gen(&cur, j);
                }
                cur
            }
            Side::Left => {
                let mut cur = x.clone();
                for &j in word.iter().rev() {
                    cur = self.left_gen(j, &cur);
                }
                cur.map_basis(k, |w| g.mul(&omega, w))
            }
        }
    }

    pub fn act_basis(&self, y: &ProPElt, x: &TopElt, side: Side) -> TopElt {
        let (_, word) = self.alg.group().decompose(y);
        self.act_basis_along(y, &word, x, side)
    }

    /// `τ · x` (left) or `x · τ` (right).
    pub fn act(&self, tau: &HeckeElt, x: &TopElt, side: Side) -> TopElt {
        let k = self.alg.field();
        let mut out = TopElt::zero();
        for (y, &c) in tau.iter() {
            out.add_scaled(k, c, &self.act_basis(y, x, side));
        }
        out
    }

    /// `φ_w ↦ φ_{w^{-1}}`.
    pub fn j_top(&self, x: &TopElt) -> TopElt {
        let g = self.alg.group();
        x.map_basis(self.alg.field(), |w| g.inv(w))
    }

    /// Dual-basis pairing `Σ_w x_w h_w`.
    pub fn pairing(&self, x: &TopElt, h: &HeckeElt) -> FieldElt {
        let k = self.alg.field();
        k.sum(x.iter().map(|(w, &c)| k.mul(c, h.coeff(w))))
    }

    /// The trace `S_d`, the coordinate sum.
    pub fn s_d(&self, x: &TopElt) -> FieldElt {
        x.coeff_sum(self.alg.field())
    }

    /// `Σ_{ω~ ∈ Ω~} φ_ω~`, spanning the line on which `H` acts by `χ_triv`.
    pub fn triv_line(&self) -> Result<TopElt> {
        let k = self.alg.field();
        let om = self.alg.group().omega_tilde()?;
        Ok(TopElt::from_terms(k, om.into_iter().map(|w| (w, k.one()))))
    }

    /// Splits `x = triv + kernel` with `S_d(kernel) = 0`; needs `Ω` finite and
    /// `|Ω~|` invertible in `k`.
    pub fn decompose(&self, x: &TopElt) -> Result<(TopElt, TopElt)> {
        let k = self.alg.field();
        let line = self.triv_line()?;
        let c = self.s_d(&line);
        if c.is_zero() {
            return Err(Error::DecompositionUnavailable(format!(
                "|Ω~| = {} vanishes in characteristic {}",
                line.len(),
                k.characteristic()
            )));
        }
        let triv = line.scale(k, k.div(self.s_d(x), c)?);
        let kernel = x.sub(k, &triv);
        Ok((triv, kernel))
    }

    /// Checks that every graded piece of `H` built from `e_λ τ_w` carries a
    /// supersingular eigencharacter on both sides, for `1 <= ℓ(w) <= max_len`
    /// and every `λ`, plus `ℓ(w) = 0` with `λ ≠ 1`.
    pub fn audit_supersingular_kernel(&self, max_len: usize) -> Result<Vec<AuditEntry>> {
        let g = self.alg.group();
        let weyl = g.weyl();
        let rd = weyl.root_datum();
        if !rd.is_semisimple() || weyl.omega().elements.len() != 1 || rd.num_components() != 1 {
            return Err(Error::Precondition(format!(
                "{} is not semisimple, simply connected and irreducible",
                rd.name()
            )));
        }
        self.alg.zeta()?;
        let chars = self.alg.torus_characters();
        let mut cases = Vec::new();
        for w in weyl.enumerate(max_len) {
            let m = weyl.length(&w);
            for lambda in &chars {
                if m == 0 && lambda.iter().all(|&x| x == 0) {
                    continue;
                }
                for side in [Side::Left, Side::Right] {
                    cases.push((m, lambda.clone(), g.section(&w), side));
                }
            }
        }
        Ok(cases
            .into_par_iter()
            .map(
                |(m, lambda, w, side)| match self.alg.graded_support_char(&lambda, &w, side) {
                    Ok(c) => match self.alg.classify_character(&c) {
                        Ok(v) => AuditEntry {
                            m,
                            lambda,
                            w,
                            side,
                            eps: Some(c.eps),
                            supersingular: v.supersingular,
                            error: None,
                        },
                        Err(e) => AuditEntry {
                            m,
                            lambda,
                            w,
                            side,
                            eps: Some(c.eps),
                            supersingular: false,
                            error: Some(e.to_string()),
                        },
                    },
                    Err(e) => AuditEntry {
                        m,
                        lambda,
                        w,
                        side,
                        eps: None,
                        supersingular: false,
                        error: Some(e.to_string()),
                    },
                },
            )
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{Field, FieldSpec};
    use crate::propweyl::ProPGroup;
    use crate::rootdata::RootDatum;

    fn module(name: &str, p: u32) -> TopModule {
        let g = ProPGroup::new(RootDatum::preset(name).unwrap(), p).unwrap();
        TopModule::new(HeckeAlgebra::new(g, Field::new(&FieldSpec::prime(p)).unwrap()).unwrap())
    }

    #[test]
    fn sl2_right_action_examples() {
        let m = module("SL2", 3);
        let g = m.algebra().group().clone();
        let n = g.gen(0).clone();
        // ascent: φ_id · τ_n = 0
        assert!(m.right_gen(&m.phi(g.identity()), 0).is_zero());
        // descent: φ_n · τ_n = φ_{n^2} + Σ_t φ_{n t}
        let got = m.right_gen(&m.phi(n.clone()), 0);
        assert_eq!(got.len(), 3);
        assert_eq!(got.coeff(&g.mul(&n, &n)), m.algebra().field().one());
        let k = m.algebra().field();
        assert_eq!(m.s_d(&got), k.zero());
    }

    #[test]
    fn torus_relabels() {
        let m = module("SL2", 5);
        let g = m.algebra().group().clone();
        let t = g.from_torus(&[2]);
        let w = g.gen(1).clone();
        let got = m.act(&m.algebra().tau(t.clone()), &m.phi(w.clone()), Side::Left);
        assert_eq!(got, m.phi(g.mul(&t, &w)));
    }

    #[test]
    fn decompose_sl2() {
        let m = module("SL2", 3);
        let g = m.algebra().group().clone();
        let k = m.algebra().field().clone();
        let (triv, ker) = m.decompose(&m.phi(g.identity())).unwrap();
        assert_eq!(triv.len(), 2);
        assert!(triv.iter().all(|(_, &c)| c == k.from_int(-1)));
        assert_eq!(m.s_d(&ker), k.zero());
    }

    #[test]
    fn decompose_refusals() {
        let m = module("GL2", 3);
        let g = m.algebra().group().clone();
        assert!(matches!(
            m.decompose(&m.phi(g.identity())),
            Err(Error::DecompositionUnavailable(_))
        ));
        let m = module("PGL2", 2);
        let g = m.algebra().group().clone();
        assert!(matches!(
            m.decompose(&m.phi(g.identity())),
            Err(Error::DecompositionUnavailable(_))
        ));
    }

    #[test]
    fn audit_sl2() {
        let m = module("SL2", 3);
        let entries = m.audit_supersingular_kernel(2).unwrap();
        assert!(!entries.is_empty());
        assert!(entries.iter().all(|e| e.passed()), "{entries:?}");
        assert!(matches!(
            module("PGL2", 3).audit_supersingular_kernel(1),
            Err(Error::Precondition(_))
        ));
    }
}
