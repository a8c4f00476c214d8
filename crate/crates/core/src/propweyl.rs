//! The pro-p Weyl group `W~`, an extension of `W` by `T_q = X_* ⊗ F_q^x`.
//!
//! An element `(t, w0, mu)` stands for `t · n(w0) · mu(π^{-1})` where `n` is
//! the Tits section on `W0` (product of the lifts `n_α` along the canonical
//! word) and `mu ↦ mu(π^{-1})` splits the translations. Torus parts are
//! exponents of the fixed generator of `F_q^x`, so they live in
//! `(Z/(q-1))^r`.
//!
//! Products follow from `n(u) n(v) = c(u,v)(-1) n(uv)` with the Tits cocycle
//! `c(u,v)` in `X_* / 2X_*`, computed once per group.

use std::fmt;
use std::sync::Arc;

use smallvec::smallvec;

use crate::error::{Error, Result};
use crate::rootdata::{dot, AffineRoot, Coords, RootDatum};
use crate::weyl::{ExtAffWeylElt, Side, WeylGroup};

/// Normal form `t · n(w)` of an element of `W~`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProPElt {
    pub t: Coords,
    pub w: ExtAffWeylElt,
}

struct Inner {
    weyl: WeylGroup,
    q: u32,
    half: i32,
    cocycle: Vec<Vec<Coords>>,
    gens: Vec<ProPElt>,
    images: Vec<Vec<Coords>>,
    mu_sizes: Vec<usize>,
    torus: Vec<Coords>,
}

/// The group `W~` for a root datum and residue field size `q`. Cheap to clone.
#[derive(Clone)]
pub struct ProPGroup(Arc<Inner>);

impl fmt::Debug for ProPGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ProPGroup({}, q = {})",
            self.root_datum().name(),
            self.0.q
        )
    }
}

impl PartialEq for ProPGroup {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = (self.root_datum(), other.root_datum());
        self.0.q == other.0.q && a.roots() == b.roots() && a.coroots() == b.coroots()
    }
}

impl Eq for ProPGroup {}

impl ProPGroup {
    pub fn new(rd: RootDatum, q: u32) -> Result<ProPGroup> {
        if q < 2 {
            return Err(Error::InvalidField(format!("q = {q} is not a prime power")));
        }
        let weyl = WeylGroup::new(rd);
        let fin = weyl.finite();
        let n = fin.order();
        let rank = weyl.rank();
        let qm1 = (q - 1) as i32;
        let half = if q % 2 == 1 { qm1 / 2 } else { 0 };

        let rd = weyl.root_datum();
        let cocycle: Vec<Vec<Coords>> = (0..n)
            .map(|u| {
                (0..n)
                    .map(|v| {
                        let mut acc: Coords = smallvec![0; rank];
                        let mut x = u;
                        for &s in fin.word(v) {
                            let xs = fin.mul(x, fin.simple(s));
                            if fin.length(xs) < fin.length(x) {
                                // n(x) n_s = n(xs) n_s^2 = (xs)(s^v)(-1) n(xs)
                                for (a, b) in acc.iter_mut().zip(fin.act_cochar(xs, rd.coroot(s))) {
                                    *a = (*a + b).rem_euclid(2);
                                }
                            }
                            x = xs;
                        }
                        acc
                    })
                    .collect()
            })
            .collect();

        let mut torus = vec![Coords::from_elem(0, rank)];
        for i in 0..rank {
            torus = torus
                .iter()
                .flat_map(|t| {
                    (0..qm1).map(move |e| {
                        let mut t = t.clone();
                        t[i] = e;
                        t
                    })
                })
                .collect();
        }
        torus.sort();

        let mut g = Inner {
            weyl,
            q,
            half,
            cocycle,
            gens: vec![],
            images: vec![],
            mu_sizes: vec![],
            torus,
        };
        for a in g.weyl.pi_aff().to_vec() {
            let (img, mu) = coroot_image_of(&g, a.root)?;
            g.images.push(img);
            g.mu_sizes.push(mu);
        }
        let mut group = ProPGroup(Arc::new(g));
        let gens = group.build_generators()?;
        Arc::get_mut(&mut group.0)
            .expect("group is not shared yet")
            .gens = gens;
        Ok(group)
    }

    pub fn weyl(&self) -> &WeylGroup {
        &self.0.weyl
    }

    pub fn root_datum(&self) -> &RootDatum {
        self.0.weyl.root_datum()
    }

    pub fn rank(&self) -> usize {
        self.0.weyl.rank()
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    /// Exponent of `-1` in `F_q^x`.
    pub fn minus_one(&self) -> i32 {
        self.0.half
    }

    pub fn num_s_aff(&self) -> usize {
        self.0.weyl.num_s_aff()
    }

    fn reduce(&self, t: &mut Coords) {
        let m = (self.0.q - 1) as i32;
        for x in t.iter_mut() {
            *x = x.rem_euclid(m);
        }
    }

    pub fn torus_elt(&self, t: &[i32]) -> Coords {
        let mut t = Coords::from_slice(t);
        self.reduce(&mut t);
        t
    }

    pub fn identity(&self) -> ProPElt {
        ProPElt {
            t: smallvec![0; self.rank()],
            w: self.0.weyl.identity(),
        }
    }

    pub fn from_torus(&self, t: &[i32]) -> ProPElt {
        ProPElt {
            t: self.torus_elt(t),
            w: self.0.weyl.identity(),
        }
    }

    /// `t · n(w)` with the torus part reduced.
    pub fn elt(&self, t: &[i32], w: ExtAffWeylElt) -> ProPElt {
        ProPElt {
            t: self.torus_elt(t),
            w,
        }
    }

    /// The section value `n(w) = (0, w)` of the model.
    pub fn section(&self, w: &ExtAffWeylElt) -> ProPElt {
        ProPElt {
            t: smallvec![0; self.rank()],
            w: w.clone(),
        }
    }

    pub fn is_torus(&self, x: &ProPElt) -> bool {
        self.0.weyl.is_identity(&x.w)
    }

    /// All of `T_q`, sorted.
    pub fn torus(&self) -> &[Coords] {
        &self.0.torus
    }

    pub fn cocycle(&self, u: usize, v: usize) -> &[i32] {
        &self.0.cocycle[u][v]
    }

    /// Action of the `W0`-part of `w` on `T_q`; translations act trivially.
    pub fn torus_action(&self, w: &ExtAffWeylElt, t: &[i32]) -> Coords {
        let mut out = self.0.weyl.finite().act_cochar(w.w0, t);
        self.reduce(&mut out);
        out
    }

    pub fn mul(&self, a: &ProPElt, b: &ProPElt) -> ProPElt {
        let fin = self.0.weyl.finite();
        let ut = fin.act_cochar(a.w.w0, &b.t);
        let c = &self.0.cocycle[a.w.w0][b.w.w0];
        let mut t: Coords = (0..self.rank())
            .map(|i| a.t[i] + ut[i] + self.0.half * c[i])
            .collect();
        self.reduce(&mut t);
        ProPElt {
            t,
            w: self.0.weyl.mul(&a.w, &b.w),
        }
    }

    pub fn inv(&self, a: &ProPElt) -> ProPElt {
        let fin = self.0.weyl.finite();
        let u = a.w.w0;
        let ui = fin.inv(u);
        let c = &self.0.cocycle[u][ui];
        let neg: Coords = (0..self.rank())
            .map(|i| -a.t[i] - self.0.half * c[i])
            .collect();
        let mut t = fin.act_cochar(ui, &neg);
        self.reduce(&mut t);
        ProPElt {
            t,
            w: self.0.weyl.inv(&a.w),
        }
    }

    /// `t · x`.
    pub fn torus_mul_left(&self, t: &[i32], x: &ProPElt) -> ProPElt {
        let mut s: Coords = x.t.iter().zip(t).map(|(a, b)| a + b).collect();
        self.reduce(&mut s);
        ProPElt {
            t: s,
            w: x.w.clone(),
        }
    }

    /// `x · t`.
    pub fn torus_mul_right(&self, x: &ProPElt, t: &[i32]) -> ProPElt {
        let ut = self.0.weyl.finite().act_cochar(x.w.w0, t);
        let mut s: Coords = x.t.iter().zip(&ut).map(|(a, b)| a + b).collect();
        self.reduce(&mut s);
        ProPElt {
            t: s,
            w: x.w.clone(),
        }
    }

    pub fn project(&self, x: &ProPElt) -> ExtAffWeylElt {
        x.w.clone()
    }

    pub fn length(&self, x: &ProPElt) -> usize {
        self.0.weyl.length(&x.w)
    }

    /// `α^v([F_q^x])` as a sorted list and the size of the kernel `μ_α^v`.
    pub fn coroot_image(&self, root: usize) -> Result<(Vec<Coords>, usize)> {
        coroot_image_of(&self.0, root)
    }

    /// Image and kernel size for the affine simple reflection `j`.
    pub fn s_image(&self, j: usize) -> (&[Coords], usize) {
        (&self.0.images[j], self.0.mu_sizes[j])
    }

    /// The lift `ñ_s` of the affine simple reflection `j`.
    pub fn gen(&self, j: usize) -> &ProPElt {
        &self.0.gens[j]
    }

    /// `ñ_s · x`.
    pub fn gen_mul_left(&self, j: usize, x: &ProPElt) -> ProPElt {
        self.mul(&self.0.gens[j], x)
    }

    /// `α^v(-1)` for the root of `Pi_aff[j]`.
    pub fn minus_one_coroot(&self, j: usize) -> Coords {
        let a = self.0.weyl.pi_aff()[j];
        let c = self.root_datum().coroot(a.root);
        self.torus_elt(&c.iter().map(|&x| x * self.0.half).collect::<Vec<_>>())
    }

    /// `(0, ω) · ñ_{i1} ⋯ ñ_{il}`.
    pub fn lift_word(&self, omega: &ExtAffWeylElt, word: &[usize]) -> ProPElt {
        word.iter().fold(self.section(omega), |acc, &j| {
            self.mul(&acc, &self.0.gens[j])
        })
    }

    /// Lift of `w` along its canonical reduced word.
    pub fn lift_w(&self, w: &ExtAffWeylElt) -> ProPElt {
        let (omega, word) = self.0.weyl.reduced_word(w);
        self.lift_word(&omega, &word)
    }

    /// `x = ω~ · ñ_{i1} ⋯ ñ_{il}` along the canonical reduced word of the
    /// projection, with `ω~` of length zero.
    pub fn decompose(&self, x: &ProPElt) -> (ProPElt, Vec<usize>) {
        self.decompose_by(x, false)
    }

    pub fn decompose_by(&self, x: &ProPElt, reverse: bool) -> (ProPElt, Vec<usize>) {
        let (_, word) = self.0.weyl.reduced_word_by(&x.w, reverse);
        let mut omega = x.clone();
        for &j in word.iter().rev() {
            omega = self.mul(&omega, &self.inv(&self.0.gens[j]));
        }
        (omega, word)
    }

    pub fn is_right_descent(&self, x: &ProPElt, j: usize) -> bool {
        self.0.weyl.is_right_descent(&x.w, j)
    }

    pub fn is_left_descent(&self, x: &ProPElt, j: usize) -> bool {
        self.0.weyl.is_left_descent(&x.w, j)
    }

    pub fn descents(&self, x: &ProPElt, side: Side) -> Vec<usize> {
        self.0.weyl.descents(&x.w, side)
    }

    /// All `(t, w)` with `ℓ(w) <= max_len`, sorted by length.
    pub fn enumerate(&self, max_len: usize) -> Vec<ProPElt> {
        let ws = self.0.weyl.enumerate(max_len);
        ws.iter()
            .flat_map(|w| {
                self.0.torus.iter().map(move |t| ProPElt {
                    t: t.clone(),
                    w: w.clone(),
                })
            })
            .collect()
    }

    /// The lifts `ω~ = (t, ω)` of `Ω` (all of them when `Ω` is finite).
    pub fn omega_tilde(&self) -> Result<Vec<ProPElt>> {
        let om = self.0.weyl.omega();
        if !om.finite {
            return Err(Error::DecompositionUnavailable("Ω is infinite".into()));
        }
        Ok(om
            .elements
            .iter()
            .flat_map(|w| {
                self.0.torus.iter().map(move |t| ProPElt {
                    t: t.clone(),
                    w: w.clone(),
                })
            })
            .collect())
    }

    fn build_generators(&self) -> Result<Vec<ProPElt>> {
        let weyl = &self.0.weyl;
        let fin = weyl.finite();
        let rd = weyl.root_datum();
        let mut gens = Vec::new();
        for &AffineRoot { root, h } in weyl.pi_aff() {
            // n_α = n(w) n_β n(w)^{-1} for the first w, β with w(β) = α
            let (w, beta) = (0..fin.order())
                .flat_map(|w| rd.simple_indices().map(move |b| (w, b)))
                .find(|&(w, b)| fin.act_root(w, b) == root)
                .expect("every root is conjugate to a simple root");
            let nw = self.section(&weyl.finite_elt(w));
            let nb = self.section(&weyl.finite_elt(fin.simple(beta)));
            let n_alpha = self.mul(&self.mul(&nw, &nb), &self.inv(&nw));
            let shift: Vec<i32> = rd.coroot(root).iter().map(|&c| -c * h as i32).collect();
            gens.push(self.mul(&self.section(&weyl.translation(&shift)), &n_alpha));
        }

        let affine: Vec<usize> = (rd.num_simple()..weyl.num_s_aff()).collect();
        for flips in 0..(1u32 << affine.len()) {
            let mut trial = gens.clone();
            for (b, &j) in affine.iter().enumerate() {
                if flips & (1 << b) != 0 {
                    let m = self.minus_one_coroot(j);
                    trial[j] = self.torus_mul_left(&m, &trial[j]);
                }
            }
            if self.relations_hold(&trial).is_ok() {
                return Ok(trial);
            }
        }
        Err(self.relations_hold(&gens).unwrap_err())
    }

    /// Checks `ñ_s^2 = α^v(-1)`, the projection to `s_A`, and the braid
    /// relations between all pairs of generators of finite order product.
    fn relations_hold(&self, gens: &[ProPElt]) -> Result<()> {
        let weyl = &self.0.weyl;
        for (j, g) in gens.iter().enumerate() {
            if &g.w != weyl.s_aff(j) {
                return Err(Error::SelfCheck(format!(
                    "lift {j} does not project to its reflection"
                )));
            }
            let sq = self.mul(g, g);
            if sq != self.from_torus(&self.minus_one_coroot(j)) {
                return Err(Error::SelfCheck(format!("lift {j} squares to {sq:?}")));
            }
        }
        for j in 0..gens.len() {
            for k in j + 1..gens.len() {
                let st = weyl.mul(weyl.s_aff(j), weyl.s_aff(k));
                let mut p = st.clone();
                let mut m = 1;
                while !weyl.is_identity(&p) && m <= 6 {
                    p = weyl.mul(&p, &st);
                    m += 1;
                }
                if m > 6 {
                    continue;
                }
                let alt = |a: usize, b: usize| {
                    (0..m).fold(self.identity(), |acc, i| {
                        self.mul(&acc, &gens[if i % 2 == 0 { a } else { b }])
                    })
                };
                if alt(j, k) != alt(k, j) {
                    return Err(Error::SelfCheck(format!(
                        "braid relation fails for lifts {j}, {k}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Verifies the generator relations of the model; run at construction.
    pub fn self_check(&self) -> Result<()> {
        self.relations_hold(&self.0.gens)
    }
}

fn coroot_image_of(g: &Inner, root: usize) -> Result<(Vec<Coords>, usize)> {
    let c = g.weyl.root_datum().coroot(root);
    let m = (g.q - 1) as i32;
    let mut img: Vec<Coords> = (0..m)
        .map(|e| c.iter().map(|&x| (x * e).rem_euclid(m)).collect())
        .collect();
    let mu = img.iter().filter(|t| t.iter().all(|&x| x == 0)).count();
    img.sort();
    img.dedup();
    if mu != 1 && mu != 2 {
        return Err(Error::CorootKernel { root, size: mu });
    }
    Ok((img, mu))
}

/// Pairing `Σ λ_i t_i` of a character exponent vector with a torus element.
pub fn char_pairing(lambda: &[i32], t: &[i32]) -> i64 {
    dot(lambda, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::PRESETS;

    fn group(name: &str, q: u32) -> ProPGroup {
        ProPGroup::new(RootDatum::preset(name).unwrap(), q).unwrap()
    }

    #[test]
    fn all_presets_build() {
        for name in PRESETS {
            for q in [2, 3, 4, 5] {
                let g = ProPGroup::new(RootDatum::preset(name).unwrap(), q);
                match g {
                    Ok(g) => g.self_check().unwrap(),
                    Err(e) => panic!("{name} q={q}: {e}"),
                }
            }
        }
    }

    #[test]
    fn sl2_generator_square() {
        let g = group("SL2", 3);
        let n = g.gen(0);
        assert_eq!(n.t.as_slice(), &[0]);
        assert_eq!(g.mul(n, n), g.from_torus(&[1]));
        assert_eq!(g.inv(n), g.elt(&[1], n.w.clone()));
        // the affine lift is torus-free as well
        assert_eq!(g.gen(1).t.as_slice(), &[0]);
    }

    #[test]
    fn torus_action_sl2() {
        let g = group("SL2", 5);
        let s = g.weyl().s_aff(0).clone();
        assert_eq!(g.torus_action(&s, &[1]).as_slice(), &[3]);
    }

    #[test]
    fn coroot_images() {
        let g = group("SL2", 3);
        assert_eq!(
            g.coroot_image(0).unwrap(),
            (vec![Coords::from_slice(&[0]), Coords::from_slice(&[1])], 1)
        );
        let g = group("PGL2", 3);
        assert_eq!(
            g.coroot_image(0).unwrap(),
            (vec![Coords::from_slice(&[0])], 2)
        );
        let g = group("PGL2", 2);
        assert_eq!(g.coroot_image(0).unwrap().1, 1);
    }

    #[test]
    fn sl3_affine_lift_carries_torus_part() {
        // n(s_θ)^2 = 1 in the Tits group of SL3, so the lift of the affine
        // reflection picks up θ^v(-1) relative to the bare section
        let g = group("SL3", 3);
        let n = g.gen(2);
        assert_eq!(g.mul(n, n), g.from_torus(&g.minus_one_coroot(2)));
        g.self_check().unwrap();
    }

    #[test]
    fn inverse_and_decompose() {
        for (name, q) in [
            ("SL2", 3),
            ("SL3", 3),
            ("PGL2", 3),
            ("Sp4", 5),
            ("GL2", 3),
            ("G2sc", 4),
        ] {
            let g = group(name, q);
            for x in g.enumerate(3) {
                assert_eq!(g.mul(&x, &g.inv(&x)), g.identity(), "{name}");
                let (om, word) = g.decompose(&x);
                assert_eq!(g.length(&om), 0);
                assert_eq!(g.mul(&om, &g.lift_word(&g.weyl().identity(), &word)), x);
            }
        }
    }

    #[test]
    fn associative_small() {
        for (name, q) in [
            ("SL2", 3),
            ("SL3", 3),
            ("PGL2", 3),
            ("Sp4", 3),
            ("G2sc", 3),
            ("GL2", 3),
        ] {
            let g = group(name, q);
            let xs = g.enumerate(2);
            for a in &xs {
                for b in &xs {
                    let ab = g.mul(a, b);
                    for c in xs.iter().step_by(3) {
                        assert_eq!(g.mul(&ab, c), g.mul(a, &g.mul(b, c)), "{name}");
                    }
                }
            }
        }
    }

    #[test]
    fn lift_independent_of_reduced_word() {
        for name in ["SL2", "SL3", "PGL2", "Sp4"] {
            let g = group(name, 5);
            for w in g.weyl().enumerate(6) {
                let (om, _) = g.weyl().reduced_word(&w);
                let lifts: Vec<ProPElt> = g
                    .weyl()
                    .all_reduced_words(&w)
                    .iter()
                    .map(|word| g.lift_word(&om, word))
                    .collect();
                assert!(lifts.windows(2).all(|p| p[0] == p[1]), "{name} {w:?}");
            }
        }
    }

    #[test]
    fn conjugation_by_generators() {
        let g = group("Sp4", 5);
        for j in 0..g.num_s_aff() {
            let n = g.gen(j);
            for t in g.torus() {
                let conj = g.mul(&g.mul(n, &g.from_torus(t)), &g.inv(n));
                assert_eq!(conj, g.from_torus(&g.torus_action(&n.w, t)));
            }
        }
    }
}
