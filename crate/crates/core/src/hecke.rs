//! The pro-p Iwahori-Hecke algebra `H` over `k`, in the basis `τ_w`, `w ∈ W~`.
//!
//! Products are computed from the braid relation and the quadratic relation
//! `τ_{n_s}^2 = -θ_s τ_{n_s}` by peeling the generators of the left factor's
//! canonical reduced word off from the right.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElt};
use crate::lincomb::{Comb, Tau};
use crate::propweyl::{ProPElt, ProPGroup};
use crate::rootdata::{dot, Coords};
use crate::weyl::Side;

pub type HeckeElt = Comb<Tau>;

/// Value of a character of `H_aff` on `τ_{n_s}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "i8", try_from = "i8")]
pub enum Eps {
    Zero,
    MinusOne,
}

impl From<Eps> for i8 {
    fn from(e: Eps) -> i8 {
        match e {
            Eps::Zero => 0,
            Eps::MinusOne => -1,
        }
    }
}

impl TryFrom<i8> for Eps {
    type Error = String;

    fn try_from(v: i8) -> std::result::Result<Self, String> {
        match v {
            0 => Ok(Eps::Zero),
            -1 => Ok(Eps::MinusOne),
            _ => Err(format!("character value on τ_n_s must be 0 or -1, got {v}")),
        }
    }
}

/// A character of `H_aff`: `τ_t ↦ λ(t)`, `τ_{n_s} ↦ eps(s)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct AffineCharacter {
    pub lambda: Vec<i32>,
    pub eps: Vec<Eps>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentVerdict {
    pub twisted_trivial: bool,
    pub twisted_sign: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub components: Vec<ComponentVerdict>,
    pub supersingular: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CharKind {
    Triv,
    Sign,
}

/// `H` for a group and coefficient field. Cheap to clone.
#[derive(Clone, Debug)]
pub struct HeckeAlgebra {
    group: ProPGroup,
    field: Field,
    zeta: Option<FieldElt>,
    mu_k: Vec<FieldElt>,
    torus_inv_size: FieldElt,
}

impl HeckeAlgebra {
    /// Requires `q` to be a power of the characteristic of `k`.
    pub fn new(group: ProPGroup, field: Field) -> Result<HeckeAlgebra> {
        let p = field.characteristic();
        let mut q = group.q();
        while q % p == 0 {
            q /= p;
        }
        if q != 1 {
            return Err(Error::Mismatch(format!(
                "q = {} is not a power of the characteristic {p}",
                group.q()
            )));
        }
        let zeta = field.zeta(group.q()).ok();
        let mu_k = (0..group.num_s_aff())
            .map(|j| field.from_int(group.s_image(j).1 as i64))
            .collect();
        let torus_size = field.from_int(group.torus().len() as i64);
        let torus_inv_size = field.inv(torus_size)?;
        Ok(HeckeAlgebra {
            group,
            field,
            zeta,
            mu_k,
            torus_inv_size,
        })
    }

    pub fn group(&self) -> &ProPGroup {
        &self.group
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn zeta(&self) -> Result<FieldElt> {
        self.zeta.ok_or(Error::UnsupportedCoefficientField {
            q: self.group.q(),
            field: self.field.size(),
        })
    }

    /// `|μ_α^v|` in `k` for the affine simple reflection `j`.
    pub fn mu_size(&self, j: usize) -> FieldElt {
        self.mu_k[j]
    }

    pub fn one(&self) -> HeckeElt {
        self.tau(self.group.identity())
    }

    pub fn tau(&self, x: ProPElt) -> HeckeElt {
        HeckeElt::basis(x, self.field.one())
    }

    /// `τ_{ñ_s}`.
    pub fn tau_gen(&self, j: usize) -> HeckeElt {
        self.tau(self.group.gen(j).clone())
    }

    pub fn add(&self, a: &HeckeElt, b: &HeckeElt) -> HeckeElt {
        a.add(&self.field, b)
    }

    pub fn sub(&self, a: &HeckeElt, b: &HeckeElt) -> HeckeElt {
        a.sub(&self.field, b)
    }

    pub fn scale(&self, c: FieldElt, a: &HeckeElt) -> HeckeElt {
        a.scale(&self.field, c)
    }

    /// `θ_s = -|μ_α^v| Σ_{t ∈ α^v([F_q^x])} τ_t`.
    pub fn theta(&self, j: usize) -> HeckeElt {
        let k = &self.field;
        let c = k.neg(self.mu_k[j]);
        let (img, _) = self.group.s_image(j);
        HeckeElt::from_terms(k, img.iter().map(|t| (self.group.from_torus(t), c)))
    }

    /// `τ_{ñ_s} · τ_x`: braid rule on an ascent, `-θ_s τ_x` on a descent.
    fn left_gen_basis(&self, j: usize, x: &ProPElt, c: FieldElt, out: &mut HeckeElt) {
        let k = &self.field;
        if self.group.is_left_descent(x, j) {
            let coeff = k.mul(c, self.mu_k[j]);
            for t in self.group.s_image(j).0 {
                out.add_term(k, self.group.torus_mul_left(t, x), coeff);
            }
        } else {
            out.add_term(k, self.group.gen_mul_left(j, x), c);
        }
    }

    /// `τ_{ñ_s} · h`.
    pub fn left_mul_gen(&self, j: usize, h: &HeckeElt) -> HeckeElt {
        let mut out = HeckeElt::zero();
        for (x, &c) in h.iter() {
            self.left_gen_basis(j, x, c, &mut out);
        }
        out
    }

    /// `τ_x · τ_y`.
    pub fn mul_basis(&self, x: &ProPElt, y: &ProPElt) -> HeckeElt {
        self.mul_basis_by(x, y, false)
    }

    /// `τ_x · τ_y` along the reduced word of `x` chosen by the given tie-break.
    pub fn mul_basis_by(&self, x: &ProPElt, y: &ProPElt, reverse: bool) -> HeckeElt {
        let (_, word) = self.group.decompose_by(x, reverse);
        self.mul_basis_along(x, &word, y)
    }

    /// `τ_x · τ_y` peeling off the given reduced word of the projection of `x`.
    pub fn mul_basis_along(&self, x: &ProPElt, word: &[usize], y: &ProPElt) -> HeckeElt {
        let g = &self.group;
        let omega = word
            .iter()
            .rev()
            .fold(x.clone(), |acc, &j| g.mul(&acc, &g.inv(g.gen(j))));
        let mut cur = self.tau(y.clone());
        for &j in word.iter().rev() {
            cur = self.left_mul_gen(j, &cur);
        }
        cur.map_basis(&self.field, |z| self.group.mul(&omega, z))
    }

    pub fn mul(&self, a: &HeckeElt, b: &HeckeElt) -> HeckeElt {
        let k = &self.field;
        let mut out = HeckeElt::zero();
        for (x, &c) in a.iter() {
            for (y, &d) in b.iter() {
                out.add_scaled(k, k.mul(c, d), &self.mul_basis(x, y));
            }
        }
        out
    }

    pub fn mul_by(&self, a: &HeckeElt, b: &HeckeElt, reverse: bool) -> HeckeElt {
        let k = &self.field;
        let mut out = HeckeElt::zero();
        for (x, &c) in a.iter() {
            for (y, &d) in b.iter() {
                out.add_scaled(k, k.mul(c, d), &self.mul_basis_by(x, y, reverse));
            }
        }
        out
    }

    /// `λ(t) = ζ^{<λ, t>}`.
    pub fn char_value(&self, lambda: &[i32], t: &[i32]) -> Result<FieldElt> {
        self.field.pow(self.zeta()?, dot(lambda, t))
    }

    /// Reduces a character exponent vector mod `q - 1`.
    pub fn normalize_char(&self, lambda: &[i32]) -> Coords {
        self.group.torus_elt(lambda)
    }

    /// `e_λ = |T_q|^{-1} Σ_t λ(t^{-1}) τ_t`. The normalizing scalar is
    /// `(-1)^r`, so in rank one this is `-Σ_t λ(t^{-1}) τ_t`.
    pub fn e_lambda(&self, lambda: &[i32]) -> Result<HeckeElt> {
        let k = &self.field;
        let mut out = HeckeElt::zero();
        for t in self.group.torus() {
            let v = k.mul(
                self.torus_inv_size,
                self.field.pow(self.zeta()?, -dot(lambda, t))?,
            );
            out.add_term(k, self.group.from_torus(t), v);
        }
        Ok(out)
    }

    /// All characters of `T_q`, as exponent vectors.
    pub fn torus_characters(&self) -> Vec<Coords> {
        self.group.torus().to_vec()
    }

    /// `^w λ = λ ∘ w^{-1}` on `T_q`.
    pub fn conj_char(&self, w0: usize, lambda: &[i32]) -> Coords {
        self.group
            .torus_elt(&self.group.weyl().finite().act_char(w0, lambda))
    }

    /// The `W0`-orbit of `λ`, sorted.
    pub fn char_orbit(&self, lambda: &[i32]) -> Vec<Coords> {
        let n = self.group.weyl().finite().order();
        let mut orbit: Vec<Coords> = (0..n).map(|w| self.conj_char(w, lambda)).collect();
        orbit.sort();
        orbit.dedup();
        orbit
    }

    /// `e_γ = Σ_{λ ∈ γ} e_λ` for the orbit `γ` of `λ`.
    pub fn e_gamma(&self, lambda: &[i32]) -> Result<HeckeElt> {
        let mut out = HeckeElt::zero();
        for mu in self.char_orbit(lambda) {
            out = self.add(&out, &self.e_lambda(&mu)?);
        }
        Ok(out)
    }

    /// Whether `λ` is trivial on `α^v([F_q^x])` for the affine simple reflection `j`.
    pub fn trivial_on_image(&self, lambda: &[i32], j: usize) -> bool {
        let m = (self.group.q() - 1) as i64;
        self.group
            .s_image(j)
            .0
            .iter()
            .all(|t| dot(lambda, t).rem_euclid(m) == 0)
    }

    /// `ι(τ_{ñ_s}) = -τ_{ñ_s} - θ_s`.
    pub fn iota_gen(&self, j: usize) -> HeckeElt {
        self.sub(&self.tau_gen(j).neg(&self.field), &self.theta(j))
    }

    /// `θ_s · h`.
    pub fn theta_mul_left(&self, j: usize, h: &HeckeElt) -> HeckeElt {
        let k = &self.field;
        let c = k.neg(self.mu_k[j]);
        let mut out = HeckeElt::zero();
        for (x, &d) in h.iter() {
            let cd = k.mul(c, d);
            for t in self.group.s_image(j).0 {
                out.add_term(k, self.group.torus_mul_left(t, x), cd);
            }
        }
        out
    }

    /// `ι(τ_x) = τ_ω~ ι(τ_{ñ_{i1}}) ⋯ ι(τ_{ñ_{il}})`, accumulated from the right.
    pub fn iota_basis(&self, x: &ProPElt) -> HeckeElt {
        let k = &self.field;
        let (omega, word) = self.group.decompose(x);
        let mut cur = self.one();
        for &j in word.iter().rev() {
            cur = self
                .left_mul_gen(j, &cur)
                .add(k, &self.theta_mul_left(j, &cur))
                .neg(k);
        }
        cur.map_basis(k, |z| self.group.mul(&omega, z))
    }

    pub fn iota(&self, h: &HeckeElt) -> HeckeElt {
        let k = &self.field;
        let mut out = HeckeElt::zero();
        for (x, &c) in h.iter() {
            out.add_scaled(k, c, &self.iota_basis(x));
        }
        out
    }

    /// `τ_w ↦ τ_{w^{-1}}`.
    pub fn j(&self, h: &HeckeElt) -> HeckeElt {
        h.map_basis(&self.field, |x| self.group.inv(x))
    }

    /// `χ_triv` or `χ_sign` on a basis element.
    pub fn chi_basis(&self, which: CharKind, x: &ProPElt) -> FieldElt {
        let l = self.group.length(x);
        match which {
            CharKind::Triv if l == 0 => self.field.one(),
            CharKind::Triv => self.field.zero(),
            CharKind::Sign => self.field.from_int(if l % 2 == 0 { 1 } else { -1 }),
        }
    }

    pub fn chi(&self, which: CharKind, h: &HeckeElt) -> FieldElt {
        let k = &self.field;
        k.sum(h.iter().map(|(x, &c)| k.mul(c, self.chi_basis(which, x))))
    }

    /// Terms of length at least `n` (the filtration step `F^n H`).
    pub fn filtration_project(&self, h: &HeckeElt, n: usize) -> HeckeElt {
        h.filter(|x| self.group.length(x) >= n)
    }

    /// Terms of length exactly `n` (the image in `F^n H / F^{n+1} H`).
    pub fn graded_part(&self, h: &HeckeElt, n: usize) -> HeckeElt {
        h.filter(|x| self.group.length(x) == n)
    }

    pub fn check_character(&self, c: &AffineCharacter) -> Result<()> {
        if c.lambda.len() != self.group.rank() || c.eps.len() != self.group.num_s_aff() {
            return Err(Error::InconsistentCharacter(format!(
                "expected {} torus exponents and {} values on S_aff",
                self.group.rank(),
                self.group.num_s_aff()
            )));
        }
        for (j, &e) in c.eps.iter().enumerate() {
            if e == Eps::MinusOne && !self.trivial_on_image(&c.lambda, j) {
                return Err(Error::InconsistentCharacter(format!(
                    "value -1 at s_{j} needs λ trivial on the coroot image"
                )));
            }
        }
        Ok(())
    }

    /// Per-component twisted trivial / twisted sign verdicts and supersingularity.
    pub fn classify_character(&self, c: &AffineCharacter) -> Result<Classification> {
        self.check_character(c)?;
        let weyl = self.group.weyl();
        let rd = weyl.root_datum();
        let m = (self.group.q() - 1) as i64;
        let components: Vec<ComponentVerdict> = (0..rd.num_components())
            .map(|i| {
                let js: Vec<usize> = (0..weyl.num_s_aff())
                    .filter(|&j| weyl.s_aff_component(j) == i)
                    .collect();
                let twisted_sign = js.iter().all(|&j| c.eps[j] == Eps::MinusOne);
                let trivial_on_derived = rd
                    .simple_indices()
                    .filter(|&a| rd.component_of(a) == i)
                    .all(|a| {
                        let cor = rd.coroot(a);
                        (0..m).all(|e| {
                            let t: Vec<i32> = cor.iter().map(|&x| x * e as i32).collect();
                            dot(&c.lambda, &t).rem_euclid(m) == 0
                        })
                    });
                let twisted_trivial =
                    js.iter().all(|&j| c.eps[j] == Eps::Zero) && trivial_on_derived;
                ComponentVerdict {
                    twisted_trivial,
                    twisted_sign,
                }
            })
            .collect();
        let supersingular = components
            .iter()
            .all(|v| !v.twisted_trivial && !v.twisted_sign);
        Ok(Classification {
            components,
            supersingular,
        })
    }

    /// Every valid character datum, sorted.
    pub fn all_characters(&self) -> Vec<AffineCharacter> {
        let n = self.group.num_s_aff();
        let mut out = Vec::new();
        for lambda in self.torus_characters() {
            for mask in 0..(1u32 << n) {
                let eps: Vec<Eps> = (0..n)
                    .map(|j| {
                        if mask & (1 << j) != 0 {
                            Eps::MinusOne
                        } else {
                            Eps::Zero
                        }
                    })
                    .collect();
                let c = AffineCharacter {
                    lambda: lambda.to_vec(),
                    eps,
                };
                if self.check_character(&c).is_ok() {
                    out.push(c);
                }
            }
        }
        out.sort();
        out
    }

    /// The eigencharacter of `H_aff` on the class of `e_λ τ_w` (left) or
    /// `τ_w e_λ` (right) in `F^m H / F^{m+1} H`, `m = ℓ(w)`, checked against
    /// the action of every `τ_t` and every `τ_{ñ_s}`.
    pub fn graded_support_char(
        &self,
        lambda: &[i32],
        w: &ProPElt,
        side: Side,
    ) -> Result<AffineCharacter> {
        let k = &self.field;
        let lambda = self.normalize_char(lambda);
        let m = self.group.length(w);
        let e = self.e_lambda(&lambda)?;
        let base = match side {
            Side::Left => self.mul(&e, &self.tau(w.clone())),
            Side::Right => self.mul(&self.tau(w.clone()), &e),
        };
        let eps: Vec<Eps> = (0..self.group.num_s_aff())
            .map(|j| {
                let descent = match side {
                    Side::Left => self.group.is_left_descent(w, j),
                    Side::Right => self.group.is_right_descent(w, j),
                };
                if descent && self.trivial_on_image(&lambda, j) {
                    Eps::MinusOne
                } else {
                    Eps::Zero
                }
            })
            .collect();
        let act = |g: &HeckeElt| match side {
            Side::Left => self.mul(g, &base),
            Side::Right => self.mul(&base, g),
        };
        for t in self.group.torus() {
            let got = self.graded_part(&act(&self.tau(self.group.from_torus(t))), m);
            let want = base.scale(k, self.char_value(&lambda, t)?);
            if got != want {
                return Err(Error::TheoremViolation(format!(
                    "τ_t does not act by λ(t) on the class of λ = {lambda:?}, w = {w:?}, t = {t:?}"
                )));
            }
        }
        for (j, &ej) in eps.iter().enumerate() {
            let got = self.graded_part(&act(&self.tau_gen(j)), m);
            let want = match ej {
                Eps::Zero => HeckeElt::zero(),
                Eps::MinusOne => base.neg(k),
            };
            if got != want {
                return Err(Error::TheoremViolation(format!(
                    "τ_n_s{j} does not act by {ej:?} on the class of λ = {lambda:?}, w = {w:?} ({side:?})"
                )));
            }
        }
        Ok(AffineCharacter {
            lambda: lambda.to_vec(),
            eps,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldSpec;
    use crate::rootdata::RootDatum;

    fn alg(name: &str, p: u32, f: u32, m: u32) -> HeckeAlgebra {
        let spec = FieldSpec::new(p, f, m);
        let g = ProPGroup::new(RootDatum::preset(name).unwrap(), spec.q().unwrap()).unwrap();
        HeckeAlgebra::new(g, Field::new(&spec).unwrap()).unwrap()
    }

    #[test]
    fn theta_sl2_q3() {
        let h = alg("SL2", 3, 1, 1);
        let k = h.field().clone();
        let th = h.theta(0);
        assert_eq!(th.len(), 2);
        assert!(th.iter().all(|(_, &c)| c == k.from_int(2)));
        assert_eq!(h.mul(&th, &th), th);
    }

    #[test]
    fn theta_pgl2_q3() {
        let h = alg("PGL2", 3, 1, 1);
        assert_eq!(h.theta(0), h.one());
    }

    #[test]
    fn quadratic_sl2_q3() {
        let h = alg("SL2", 3, 1, 1);
        let g = h.group().clone();
        let n = h.tau_gen(0);
        let sq = h.mul(&n, &n);
        let expected = h.add(&n, &h.tau(g.torus_mul_left(&[1], g.gen(0))));
        assert_eq!(sq, expected);
    }

    #[test]
    fn sign_is_triv_after_iota() {
        let h = alg("SL3", 3, 1, 1);
        for x in h.group().enumerate(3) {
            let tx = h.tau(x.clone());
            assert_eq!(
                h.chi(CharKind::Sign, &tx),
                h.chi(CharKind::Triv, &h.iota(&tx))
            );
        }
    }

    #[test]
    fn e_lambda_needs_fq() {
        let spec = FieldSpec::new(3, 2, 2);
        let g = ProPGroup::new(RootDatum::preset("SL2").unwrap(), 9).unwrap();
        let h = HeckeAlgebra::new(g.clone(), Field::new(&spec).unwrap()).unwrap();
        assert!(h.e_lambda(&[1]).is_ok());
        let h = HeckeAlgebra::new(g, Field::prime(3).unwrap()).unwrap();
        assert!(matches!(
            h.e_lambda(&[1]),
            Err(Error::UnsupportedCoefficientField { .. })
        ));
    }

    #[test]
    fn characteristic_mismatch() {
        let g = ProPGroup::new(RootDatum::preset("SL2").unwrap(), 3).unwrap();
        assert!(matches!(
            HeckeAlgebra::new(g, Field::prime(5).unwrap()),
            Err(Error::Mismatch(_))
        ));
    }

    #[test]
    fn classify_examples() {
        let h = alg("SL2", 3, 1, 1);
        let triv = AffineCharacter {
            lambda: vec![0],
            eps: vec![Eps::Zero, Eps::Zero],
        };
        let c = h.classify_character(&triv).unwrap();
        assert!(c.components[0].twisted_trivial && !c.supersingular);
        let sign = AffineCharacter {
            lambda: vec![0],
            eps: vec![Eps::MinusOne, Eps::MinusOne],
        };
        let c = h.classify_character(&sign).unwrap();
        assert!(c.components[0].twisted_sign && !c.supersingular);
        let ss = AffineCharacter {
            lambda: vec![1],
            eps: vec![Eps::Zero, Eps::Zero],
        };
        assert!(h.classify_character(&ss).unwrap().supersingular);
        let bad = AffineCharacter {
            lambda: vec![1],
            eps: vec![Eps::MinusOne, Eps::Zero],
        };
        assert!(matches!(
            h.classify_character(&bad),
            Err(Error::InconsistentCharacter(_))
        ));
    }

    #[test]
    fn graded_char_sl2() {
        let h = alg("SL2", 3, 1, 1);
        let g = h.group().clone();
        let n = g.gen(0).clone();
        let c = h.graded_support_char(&[0], &n, Side::Left).unwrap();
        assert_eq!(c.eps, vec![Eps::MinusOne, Eps::Zero]);
        assert!(h.classify_character(&c).unwrap().supersingular);
        let c = h
            .graded_support_char(&[1], &g.identity(), Side::Right)
            .unwrap();
        assert_eq!(c.eps, vec![Eps::Zero, Eps::Zero]);
        assert!(h.classify_character(&c).unwrap().supersingular);
    }
}
