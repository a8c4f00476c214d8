//! The finite Weyl group `W0` and the extended affine Weyl group `W = W0 ⋉ Λ`.
//!
//! An element `(w0, mu)` stands for `w0 · t_mu`, acting on the apartment by
//! `x -> w0(x + mu)`.

use std::collections::{HashMap, HashSet};

use smallvec::smallvec;

use crate::error::{Error, Result};
use crate::rootdata::{dot, AffineRoot, Coords, RootDatum};

/// Element `w0 · t_mu` of the extended affine Weyl group.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExtAffWeylElt {
    pub w0: usize,
    pub mu: Coords,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Multiplication table and matrices of `W0`, enumerated breadth first from
/// the identity (index 0) by right multiplication with simple reflections.
#[derive(Clone, Debug)]
pub struct FiniteWeyl {
    rank: usize,
    mats: Vec<Vec<i32>>,
    words: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
    perm: Vec<Vec<usize>>,
    reflection_of_root: Vec<usize>,
}

impl FiniteWeyl {
    pub fn new(rd: &RootDatum) -> FiniteWeyl {
        let r = rd.rank();
        let id: Vec<i32> = (0..r * r).map(|k| i32::from(k / r == k % r)).collect();
        let refl_mat = |a: &[i32], c: &[i32]| -> Vec<i32> {
            // I - c a^T acting on column vectors in X_*
            (0..r * r)
                .map(|k| id[k] - c[k / r] * a[k % r])
                .collect::<Vec<_>>()
        };
        let simple: Vec<Vec<i32>> = rd
            .simple_indices()
            .map(|i| refl_mat(rd.root(i), rd.coroot(i)))
            .collect();

        let mut mats = vec![id.clone()];
        let mut words = vec![vec![]];
        let mut index: HashMap<Vec<i32>, usize> = HashMap::from([(id.clone(), 0)]);
        let mut k = 0;
        while k < mats.len() {
            for (i, s) in simple.iter().enumerate() {
                let m = mat_mul(&mats[k], s, r);
                if !index.contains_key(&m) {
                    index.insert(m.clone(), mats.len());
                    let mut w = words[k].clone();
                    w.push(i);
                    mats.push(m);
                    words.push(w);
                }
            }
            k += 1;
        }
        let n = mats.len();
        let mul: Vec<Vec<usize>> = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| index[&mat_mul(&mats[a], &mats[b], r)])
                    .collect()
            })
            .collect();
        let inv: Vec<usize> = (0..n)
            .map(|a| (0..n).find(|&b| mul[a][b] == 0).unwrap())
            .collect();
        let perm: Vec<Vec<usize>> = mats
            .iter()
            .map(|m| {
                (0..rd.num_roots())
                    .map(|j| {
                        rd.index_of_coroot(&mat_vec(m, rd.coroot(j), r))
                            .expect("W0 permutes coroots")
                    })
                    .collect()
            })
            .collect();
        let reflection_of_root = (0..rd.num_roots())
            .map(|j| index[&refl_mat(rd.root(j), rd.coroot(j))])
            .collect();
        FiniteWeyl {
            rank: r,
            mats,
            words,
            mul,
            inv,
            perm,
            reflection_of_root,
        }
    }

    pub fn order(&self) -> usize {
        self.mats.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// Shortest word in the simple reflections, first in breadth-first order.
    pub fn word(&self, a: usize) -> &[usize] {
        &self.words[a]
    }

    pub fn length(&self, a: usize) -> usize {
        self.words[a].len()
    }

    pub fn from_word(&self, word: &[usize]) -> Result<usize> {
        let n = self.words.iter().filter(|w| w.len() == 1).count();
        word.iter().try_fold(0, |acc, &i| {
            if i >= n {
                return Err(Error::Parse(format!(
                    "simple reflection index {i} out of range"
                )));
            }
            Ok(self.mul[acc][self.simple(i)])
        })
    }

    /// Table index of the simple reflection `s_i`.
    pub fn simple(&self, i: usize) -> usize {
        i + 1
    }

    pub fn reflection(&self, root: usize) -> usize {
        self.reflection_of_root[root]
    }

    /// Index of `w(beta)`.
    pub fn act_root(&self, a: usize, root: usize) -> usize {
        self.perm[a][root]
    }

    pub fn act_cochar(&self, a: usize, v: &[i32]) -> Coords {
        mat_vec(&self.mats[a], v, self.rank).into_iter().collect()
    }

    /// Action on `X^*`: `(w lambda)(xi) = lambda(w^{-1} xi)`.
    pub fn act_char(&self, a: usize, lambda: &[i32]) -> Coords {
        let m = &self.mats[self.inv[a]];
        let r = self.rank;
        (0..r)
            .map(|j| (0..r).map(|i| m[i * r + j] * lambda[i]).sum())
            .collect()
    }

    pub fn matrix(&self, a: usize) -> &[i32] {
        &self.mats[a]
    }
}

fn mat_mul(a: &[i32], b: &[i32], r: usize) -> Vec<i32> {
    (0..r * r)
        .map(|k| (0..r).map(|j| a[(k / r) * r + j] * b[j * r + k % r]).sum())
        .collect()
}

fn mat_vec(m: &[i32], v: &[i32], r: usize) -> Vec<i32> {
    (0..r)
        .map(|i| (0..r).map(|j| m[i * r + j] * v[j]).sum())
        .collect()
}

/// The length-zero subgroup `Ω ≅ Λ / Q^v`.
#[derive(Clone, Debug)]
pub struct Omega {
    pub finite: bool,
    /// All elements when finite (identity first), otherwise generators.
    pub elements: Vec<ExtAffWeylElt>,
    /// Elementary divisors of `Λ / Q^v` (0 for a free factor).
    pub invariants: Vec<i64>,
}

/// Result of the orbit count behind the parity lemma.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvenCheck {
    /// Number of `<w0>`-orbits in `Φ` stable under negation.
    pub n: usize,
    pub finite_length: usize,
    pub length: usize,
    pub parity_ok: bool,
}

#[derive(Clone, Debug)]
pub struct WeylGroup {
    rd: RootDatum,
    fin: FiniteWeyl,
    pi_aff: Vec<AffineRoot>,
    s_aff: Vec<ExtAffWeylElt>,
    omega: Omega,
}

impl WeylGroup {
    pub fn new(rd: RootDatum) -> WeylGroup {
        let fin = FiniteWeyl::new(&rd);
        let pi_aff = rd.pi_aff();
        let s_aff = pi_aff
            .iter()
            .map(|a| {
                let c = rd.coroot(a.root);
                ExtAffWeylElt {
                    w0: fin.reflection(a.root),
                    mu: c.iter().map(|&x| x * a.h as i32).collect(),
                }
            })
            .collect();
        let mut g = WeylGroup {
            rd,
            fin,
            pi_aff,
            s_aff,
            omega: Omega {
                finite: true,
                elements: vec![],
                invariants: vec![],
            },
        };
        g.omega = g.compute_omega();
        g
    }

    pub fn root_datum(&self) -> &RootDatum {
        &self.rd
    }

    pub fn finite(&self) -> &FiniteWeyl {
        &self.fin
    }

    pub fn rank(&self) -> usize {
        self.rd.rank()
    }

    pub fn pi_aff(&self) -> &[AffineRoot] {
        &self.pi_aff
    }

    pub fn num_s_aff(&self) -> usize {
        self.pi_aff.len()
    }

    /// The reflection `s_A = s_alpha t_{h alpha^v}` for `A = Pi_aff[j]`.
    pub fn s_aff(&self, j: usize) -> &ExtAffWeylElt {
        &self.s_aff[j]
    }

    /// Irreducible component containing the affine simple reflection `j`.
    pub fn s_aff_component(&self, j: usize) -> usize {
        self.rd.component_of(self.pi_aff[j].root)
    }

    pub fn omega(&self) -> &Omega {
        &self.omega
    }

    pub fn identity(&self) -> ExtAffWeylElt {
        ExtAffWeylElt {
            w0: 0,
            mu: smallvec![0; self.rank()],
        }
    }

    pub fn translation(&self, mu: &[i32]) -> ExtAffWeylElt {
        ExtAffWeylElt {
            w0: 0,
            mu: Coords::from_slice(mu),
        }
    }

    pub fn finite_elt(&self, w0: usize) -> ExtAffWeylElt {
        ExtAffWeylElt {
            w0,
            mu: smallvec![0; self.rank()],
        }
    }

    pub fn is_identity(&self, w: &ExtAffWeylElt) -> bool {
        w.w0 == 0 && w.mu.iter().all(|&x| x == 0)
    }

    /// `(u, mu)(v, nu) = (uv, v^{-1} mu + nu)`.
    pub fn mul(&self, a: &ExtAffWeylElt, b: &ExtAffWeylElt) -> ExtAffWeylElt {
        let vinv_mu = self.fin.act_cochar(self.fin.inv(b.w0), &a.mu);
        ExtAffWeylElt {
            w0: self.fin.mul(a.w0, b.w0),
            mu: vinv_mu.iter().zip(&b.mu).map(|(x, y)| x + y).collect(),
        }
    }

    /// `(u, mu)^{-1} = (u^{-1}, -u mu)`.
    pub fn inv(&self, a: &ExtAffWeylElt) -> ExtAffWeylElt {
        ExtAffWeylElt {
            w0: self.fin.inv(a.w0),
            mu: self
                .fin
                .act_cochar(a.w0, &a.mu)
                .iter()
                .map(|x| -x)
                .collect(),
        }
    }

    /// `w(alpha, h) = (w0 alpha, h - <mu, alpha>)`.
    pub fn act_affine(&self, w: &ExtAffWeylElt, a: AffineRoot) -> AffineRoot {
        AffineRoot {
            root: self.fin.act_root(w.w0, a.root),
            h: a.h - dot(&w.mu, self.rd.root(a.root)),
        }
    }

    fn delta(&self, root: usize) -> i64 {
        i64::from(!self.rd.is_positive(root))
    }

    /// Number of positive affine roots made negative, by the closed form
    /// `sum_alpha max(0, delta(w0 alpha) + <mu, alpha> - delta(alpha))`.
    pub fn length(&self, w: &ExtAffWeylElt) -> usize {
        (0..self.rd.num_roots())
            .map(|a| {
                let img = self.fin.act_root(w.w0, a);
                let c = self.delta(img) + dot(&w.mu, self.rd.root(a)) - self.delta(a);
                c.max(0) as usize
            })
            .sum()
    }

    /// Direct count of flipped positive affine roots with `|h|` bounded by
    /// `max |<mu, alpha>| + 1`.
    pub fn length_bruteforce(&self, w: &ExtAffWeylElt) -> usize {
        let bound = (0..self.rd.num_roots())
            .map(|a| dot(&w.mu, self.rd.root(a)).abs())
            .max()
            .unwrap_or(0)
            + 1;
        let mut count = 0;
        for a in 0..self.rd.num_roots() {
            for h in -bound..=bound {
                let ar = AffineRoot::new(a, h);
                if self.rd.is_positive_affine(ar)
                    && !self.rd.is_positive_affine(self.act_affine(w, ar))
                {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn is_right_descent(&self, w: &ExtAffWeylElt, j: usize) -> bool {
        !self
            .rd
            .is_positive_affine(self.act_affine(w, self.pi_aff[j]))
    }

    pub fn is_left_descent(&self, w: &ExtAffWeylElt, j: usize) -> bool {
        self.is_right_descent(&self.inv(w), j)
    }

    pub fn descents(&self, w: &ExtAffWeylElt, side: Side) -> Vec<usize> {
        let x = match side {
            Side::Right => w.clone(),
            Side::Left => self.inv(w),
        };
        (0..self.num_s_aff())
            .filter(|&j| self.is_right_descent(&x, j))
            .collect()
    }

    /// `w = omega · s_{i1} ... s_{il}`, stripping the smallest right descent first.
    pub fn reduced_word(&self, w: &ExtAffWeylElt) -> (ExtAffWeylElt, Vec<usize>) {
        self.reduced_word_by(w, false)
    }

    /// Same as [`reduced_word`](Self::reduced_word) but stripping the largest
    /// right descent when `reverse` is set.
    pub fn reduced_word_by(&self, w: &ExtAffWeylElt, reverse: bool) -> (ExtAffWeylElt, Vec<usize>) {
        let mut x = w.clone();
        let mut word = Vec::new();
        loop {
            let mut js = 0..self.num_s_aff();
            let found = if reverse {
                js.rev().find(|&j| self.is_right_descent(&x, j))
            } else {
                js.find(|&j| self.is_right_descent(&x, j))
            };
            match found {
                Some(j) => {
                    x = self.mul(&x, &self.s_aff[j]);
                    word.push(j);
                }
                None => break,
            }
        }
        word.reverse();
        (x, word)
    }

    /// Every reduced word of the `W_aff` part of `w`.
    pub fn all_reduced_words(&self, w: &ExtAffWeylElt) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut suffix = Vec::new();
        self.collect_words(w, &mut suffix, &mut out);
        out.sort();
        out
    }

    fn collect_words(&self, w: &ExtAffWeylElt, suffix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let ds = self.descents(w, Side::Right);
        if ds.is_empty() {
            out.push(suffix.iter().rev().copied().collect());
            return;
        }
        for j in ds {
            suffix.push(j);
            self.collect_words(&self.mul(w, &self.s_aff[j]), suffix, out);
            suffix.pop();
        }
    }

    pub fn from_word(&self, omega: &ExtAffWeylElt, word: &[usize]) -> ExtAffWeylElt {
        word.iter()
            .fold(omega.clone(), |acc, &j| self.mul(&acc, &self.s_aff[j]))
    }

    /// The `Ω`-part in `W = Ω ⋉ W_aff`.
    pub fn omega_part(&self, w: &ExtAffWeylElt) -> ExtAffWeylElt {
        self.reduced_word(w).0
    }

    pub fn in_affine(&self, w: &ExtAffWeylElt) -> bool {
        self.is_identity(&self.omega_part(w))
    }

    fn compute_omega(&self) -> Omega {
        let r = self.rank();
        let cols: Vec<Vec<i64>> = self
            .rd
            .simple_indices()
            .map(|i| self.rd.coroot(i).iter().map(|&x| x as i64).collect())
            .collect();
        let (diag, u_inv) = smith_row_basis(&cols, r);
        let rep = |y: &[i64]| -> ExtAffWeylElt {
            let mu: Coords = (0..r)
                .map(|i| (0..r).map(|k| u_inv[i][k] * y[k]).sum::<i64>() as i32)
                .collect();
            self.omega_part(&self.translation(&mu))
        };
        let invariants: Vec<i64> = (0..r)
            .map(|i| diag.get(i).copied().unwrap_or(0).abs())
            .collect();
        if invariants.iter().all(|&d| d != 0) {
            let mut elements = vec![self.identity()];
            let mut y = vec![0i64; r];
            'outer: loop {
                let e = rep(&y);
                if !elements.contains(&e) {
                    elements.push(e);
                }
                for i in 0..r {
                    y[i] += 1;
                    if y[i] < invariants[i] {
                        continue 'outer;
                    }
                    y[i] = 0;
                }
                break;
            }
            Omega {
                finite: true,
                elements,
                invariants,
            }
        } else {
            let elements = (0..r)
                .filter(|&i| invariants[i] != 1)
                .map(|i| {
                    let mut y = vec![0; r];
                    y[i] = 1;
                    rep(&y)
                })
                .collect();
            Omega {
                finite: false,
                elements,
                invariants,
            }
        }
    }

    /// Elements of `Ω` used for enumeration: all of them when finite, else
    /// the products of generator powers in `{-1, 0, 1}`.
    pub fn omega_window(&self) -> Vec<ExtAffWeylElt> {
        if self.omega.finite {
            return self.omega.elements.clone();
        }
        let mut out = vec![self.identity()];
        for g in &self.omega.elements {
            let gi = self.inv(g);
            let mut next = Vec::new();
            for x in &out {
                next.push(x.clone());
                next.push(self.mul(x, g));
                next.push(self.mul(x, &gi));
            }
            out = next;
        }
        out.sort();
        out.dedup();
        out
    }

    /// All elements of `W_aff` of length at most `max_len`, by length.
    pub fn enumerate_affine(&self, max_len: usize) -> Vec<ExtAffWeylElt> {
        let mut levels = vec![vec![self.identity()]];
        let mut seen: HashSet<ExtAffWeylElt> = HashSet::from([self.identity()]);
        for _ in 0..max_len {
            let mut next = Vec::new();
            for x in levels.last().unwrap() {
                for j in 0..self.num_s_aff() {
                    if !self.is_right_descent(x, j) {
                        let y = self.mul(x, &self.s_aff[j]);
                        if seen.insert(y.clone()) {
                            next.push(y);
                        }
                    }
                }
            }
            next.sort();
            levels.push(next);
        }
        levels.concat()
    }

    /// Elements of `W` of length at most `max_len` (through
    /// [`omega_window`](Self::omega_window) when `Ω` is infinite), sorted by
    /// length and then by value.
    pub fn enumerate(&self, max_len: usize) -> Vec<ExtAffWeylElt> {
        let aff = self.enumerate_affine(max_len);
        let mut out: Vec<(usize, ExtAffWeylElt)> = self
            .omega_window()
            .iter()
            .flat_map(|om| aff.iter().map(move |x| self.mul(om, x)))
            .map(|w| (self.length(&w), w))
            .collect();
        out.sort();
        out.dedup();
        out.into_iter().map(|(_, w)| w).collect()
    }

    /// Orbits of `<w0>` on `Φ` stable under `-1`, against the finite length of `w0`.
    pub fn lemma_even(&self, w: &ExtAffWeylElt) -> EvenCheck {
        let n_roots = self.rd.num_roots();
        let mut seen = vec![false; n_roots];
        let mut n = 0;
        for start in 0..n_roots {
            if seen[start] {
                continue;
            }
            let mut orbit = vec![start];
            seen[start] = true;
            let mut x = self.fin.act_root(w.w0, start);
            while x != start {
                seen[x] = true;
                orbit.push(x);
                x = self.fin.act_root(w.w0, x);
            }
            if orbit.contains(&self.rd.negative(start)) {
                n += 1;
            }
        }
        let finite_length = self.fin.length(w.w0);
        EvenCheck {
            n,
            finite_length,
            length: self.length(w),
            parity_ok: (n + finite_length) % 2 == 0,
        }
    }
}

/// Diagonalizes the `r x n` matrix with the given columns by unimodular row
/// and column operations. Returns the diagonal and the inverse of the row
/// transform, whose columns are a basis of `Z^r` adapted to the column span.
fn smith_row_basis(cols: &[Vec<i64>], r: usize) -> (Vec<i64>, Vec<Vec<i64>>) {
    let n = cols.len();
    let mut a: Vec<Vec<i64>> = (0..r)
        .map(|i| (0..n).map(|j| cols[j][i]).collect())
        .collect();
    let mut u_inv: Vec<Vec<i64>> = (0..r)
        .map(|i| (0..r).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut diag = Vec::new();
    for t in 0..r.min(n) {
        loop {
            let pivot = (t..r)
                .flat_map(|i| (t..n).map(move |j| (i, j)))
                .filter(|&(i, j)| a[i][j] != 0)
                .min_by_key(|&(i, j)| a[i][j].abs());
            let Some((pi, pj)) = pivot else {
                return (diag, u_inv);
            };
            a.swap(t, pi);
            for row in &mut u_inv {
                row.swap(t, pi);
            }
            for row in &mut a {
                row.swap(t, pj);
            }
            let mut clean = true;
            for i in t + 1..r {
                let k = a[i][t] / a[t][t];
                if k != 0 {
                    for j in 0..n {
                        a[i][j] -= k * a[t][j];
                    }
                    for row in &mut u_inv {
                        row[t] += k * row[i];
                    }
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..n {
                let k = a[t][j] / a[t][t];
                if k != 0 {
                    for row in &mut a {
                        row[j] -= k * row[t];
                    }
                }
                clean &= a[t][j] == 0;
            }
            if clean {
                diag.push(a[t][t]);
                break;
            }
        }
    }
    (diag, u_inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::PRESETS;

    fn group(name: &str) -> WeylGroup {
        WeylGroup::new(RootDatum::preset(name).unwrap())
    }

    #[test]
    fn finite_orders() {
        for (name, n) in [
            ("SL2", 2),
            ("SL3", 6),
            ("Sp4", 8),
            ("G2sc", 12),
            ("GL3", 6),
            ("SL2xSL2", 4),
        ] {
            assert_eq!(group(name).finite().order(), n, "{name}");
        }
    }

    #[test]
    fn sl2_examples() {
        let g = group("SL2");
        let t = g.translation(&[1]);
        assert_eq!(
            g.act_affine(&t, AffineRoot::new(0, 0)),
            AffineRoot::new(0, -2)
        );
        let s = g.s_aff(0).clone();
        assert_eq!(
            g.act_affine(&s, AffineRoot::new(0, 0)),
            AffineRoot::new(1, 0)
        );
        assert_eq!(g.length(&s), 1);
        assert_eq!(g.length(&t), 2);
        assert_eq!(g.length_bruteforce(&t), 2);
        assert_eq!(g.descents(&s, Side::Left), vec![0]);
        assert_eq!(g.descents(&s, Side::Right), vec![0]);
        assert_eq!(g.descents(&t, Side::Right), vec![0]);
        let (om, word) = g.reduced_word(&t);
        assert!(g.is_identity(&om));
        assert_eq!(word, vec![1, 0]);
        assert_eq!(g.from_word(&om, &word), t);
        assert_eq!(g.omega().elements.len(), 1);
    }

    #[test]
    fn affine_reflection_convention() {
        // s_(alpha,h) sends (alpha,h) to its negative
        for name in PRESETS {
            let g = group(name);
            for (j, &a) in g.pi_aff().iter().enumerate() {
                let img = g.act_affine(g.s_aff(j), a);
                assert_eq!(
                    img,
                    AffineRoot::new(g.root_datum().negative(a.root), -a.h),
                    "{name}"
                );
            }
        }
    }

    #[test]
    fn pgl2_omega() {
        let g = group("PGL2");
        // the fundamental coweight translation is omega times a reflection
        let t = g.translation(&[1]);
        assert_eq!(g.length(&t), 1);
        let (om, word) = g.reduced_word(&t);
        assert_eq!(word.len(), 1);
        assert_eq!(g.length(&om), 0);
        assert!(!g.is_identity(&om));
        assert_eq!(g.from_word(&om, &word), t);
        assert!(g.omega().finite);
        assert_eq!(g.omega().elements.len(), 2);
    }

    #[test]
    fn gl_omega_is_infinite() {
        for name in ["GL2", "GL3"] {
            let g = group(name);
            assert!(!g.omega().finite);
            assert_eq!(g.omega().elements.len(), 1);
            assert_eq!(g.length(&g.omega().elements[0]), 0);
            assert!(!g.is_identity(&g.omega().elements[0]));
        }
    }

    #[test]
    fn omega_sizes() {
        for (name, n) in [
            ("SL2", 1),
            ("PGL2", 2),
            ("SL3", 1),
            ("Sp4", 1),
            ("G2sc", 1),
            ("SL2xSL2", 1),
        ] {
            let g = group(name);
            assert_eq!(g.omega().elements.len(), n, "{name}");
            for om in &g.omega().elements {
                assert_eq!(g.length(om), 0);
            }
        }
    }

    #[test]
    fn lemma_even_examples() {
        let g = group("SL3");
        let id = g.identity();
        assert_eq!(
            g.lemma_even(&id),
            EvenCheck {
                n: 0,
                finite_length: 0,
                length: 0,
                parity_ok: true
            }
        );
        let s = g.s_aff(0).clone();
        assert_eq!(g.lemma_even(&s).n, 1);
        let cox = g.mul(g.s_aff(0), g.s_aff(1));
        assert!(g.lemma_even(&cox).parity_ok);
    }

    #[test]
    fn enumeration_counts() {
        // affine A1: two elements of each positive length
        let g = group("SL2");
        assert_eq!(g.enumerate(3).len(), 7);
        // affine A2: 3n elements of length n > 0
        let g = group("SL3");
        let counts: Vec<usize> = (0..4)
            .map(|l| g.enumerate(3).iter().filter(|w| g.length(w) == l).count())
            .collect();
        assert_eq!(counts, vec![1, 3, 6, 9]);
    }
}
