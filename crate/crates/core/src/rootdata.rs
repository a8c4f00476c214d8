//! Based root data of split groups, affine roots and the built-in presets.
//!
//! Roots live in `X^*` and coroots in `X_*`, both written in coordinates
//! against a fixed basis of `X_* = Z^r`, so the pairing is the dot product.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Integer coordinate vector; ranks are small so it stays on the stack.
pub type Coords = SmallVec<[i32; 4]>;

pub fn dot(a: &[i32], b: &[i32]) -> i64 {
    a.iter().zip(b).map(|(&x, &y)| x as i64 * y as i64).sum()
}

/// The preset names accepted by [`RootDatum::preset`].
pub const PRESETS: [&str; 8] = ["SL2", "PGL2", "GL2", "SL3", "GL3", "Sp4", "G2sc", "SL2xSL2"];

/// An affine root `(alpha, h)`: the affine function `x -> alpha(x) + h`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffineRoot {
    pub root: usize,
    pub h: i64,
}

impl AffineRoot {
    pub fn new(root: usize, h: i64) -> Self {
        AffineRoot { root, h }
    }
}

/// Group part of a run configuration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Preset {
        preset: String,
    },
    Explicit {
        rank: usize,
        roots: Vec<Vec<i32>>,
        coroots: Vec<Vec<i32>>,
        simple: Vec<usize>,
    },
}

impl GroupSpec {
    pub fn preset(name: &str) -> Self {
        GroupSpec::Preset {
            preset: name.to_string(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RootDatum {
    name: String,
    rank: usize,
    roots: Vec<Coords>,
    coroots: Vec<Coords>,
    /// Coefficients of each root in the basis of simple roots.
    coeffs: Vec<Vec<i32>>,
    n_simple: usize,
    negative_of: Vec<usize>,
    component_of: Vec<usize>,
    n_components: usize,
    minimal: Vec<usize>,
}

impl RootDatum {
    pub fn from_spec(spec: &GroupSpec) -> Result<RootDatum> {
        match spec {
            GroupSpec::Preset { preset } => RootDatum::preset(preset),
            GroupSpec::Explicit {
                rank,
                roots,
                coroots,
                simple,
            } => RootDatum::explicit(*rank, roots, coroots, simple),
        }
    }

    pub fn preset(name: &str) -> Result<RootDatum> {
        let v = |rows: &[&[i32]]| rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>();
        let (roots, coroots) = match name {
            "SL2" => (v(&[&[2]]), v(&[&[1]])),
            "PGL2" => (v(&[&[1]]), v(&[&[2]])),
            "GL2" => (v(&[&[1, -1]]), v(&[&[1, -1]])),
            "SL3" => cartan_columns(&[&[2, -1], &[-1, 2]]),
            "GL3" => (
                v(&[&[1, -1, 0], &[0, 1, -1]]),
                v(&[&[1, -1, 0], &[0, 1, -1]]),
            ),
            "Sp4" => cartan_columns(&[&[2, -2], &[-1, 2]]),
            "G2sc" => cartan_columns(&[&[2, -3], &[-1, 2]]),
            "SL2xSL2" => (v(&[&[2, 0], &[0, 2]]), v(&[&[1, 0], &[0, 1]])),
            _ => return Err(Error::UnknownPreset(name.to_string())),
        };
        let rank = coroots[0].len();
        RootDatum::from_simple(name, rank, &roots, &coroots)
    }

    /// Builds the datum from explicit roots and coroots, checking that the
    /// listed roots are exactly the ones generated by the listed simple ones.
    pub fn explicit(
        rank: usize,
        roots: &[Vec<i32>],
        coroots: &[Vec<i32>],
        simple: &[usize],
    ) -> Result<RootDatum> {
        if roots.len() != coroots.len() {
            return Err(Error::InvalidRootDatum(
                "roots and coroots differ in number".into(),
            ));
        }
        if roots.iter().chain(coroots).any(|x| x.len() != rank) {
            return Err(Error::InvalidRootDatum(format!(
                "all vectors must have length {rank}"
            )));
        }
        for (a, c) in roots.iter().zip(coroots) {
            if dot(a, c) != 2 {
                return Err(Error::InvalidRootDatum(format!("<{c:?}, {a:?}> != 2")));
            }
        }
        if let Some(&i) = simple.iter().find(|&&i| i >= roots.len()) {
            return Err(Error::InvalidRootDatum(format!(
                "simple index {i} out of range"
            )));
        }
        let sr: Vec<_> = simple.iter().map(|&i| roots[i].clone()).collect();
        let sc: Vec<_> = simple.iter().map(|&i| coroots[i].clone()).collect();
        let rd = RootDatum::from_simple("explicit", rank, &sr, &sc)?;
        let mut given: Vec<(Vec<i32>, Vec<i32>)> =
            roots.iter().cloned().zip(coroots.iter().cloned()).collect();
        given.sort();
        given.dedup();
        let mut generated: Vec<(Vec<i32>, Vec<i32>)> = rd
            .roots
            .iter()
            .map(|x| x.to_vec())
            .zip(rd.coroots.iter().map(|x| x.to_vec()))
            .collect();
        generated.sort();
        if given != generated || given.len() != roots.len() {
            return Err(Error::InvalidRootDatum(
                "listed roots are not the root system generated by the simple roots".into(),
            ));
        }
        Ok(rd)
    }

    /// Generates the root system from simple roots and coroots by closing
    /// under simple reflections.
    pub fn from_simple(
        name: &str,
        rank: usize,
        simple_roots: &[Vec<i32>],
        simple_coroots: &[Vec<i32>],
    ) -> Result<RootDatum> {
        let n = simple_roots.len();
        if n == 0 || simple_coroots.len() != n {
            return Err(Error::InvalidRootDatum(
                "need a nonempty set of simple roots".into(),
            ));
        }
        if simple_roots
            .iter()
            .chain(simple_coroots)
            .any(|x| x.len() != rank)
        {
            return Err(Error::InvalidRootDatum(format!(
                "all vectors must have length {rank}"
            )));
        }
        let cartan: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| dot(&simple_coroots[i], &simple_roots[j]))
                    .collect()
            })
            .collect();
        for i in 0..n {
            if cartan[i][i] != 2 {
                return Err(Error::InvalidRootDatum(format!(
                    "<a_{i}^v, a_{i}> = {}",
                    cartan[i][i]
                )));
            }
            for j in 0..n {
                if i != j && (cartan[i][j] > 0 || (cartan[i][j] == 0) != (cartan[j][i] == 0)) {
                    return Err(Error::InvalidRootDatum("not a Cartan matrix".into()));
                }
            }
        }

        // BFS on simple-root coefficient vectors, carrying the coroot along.
        let mut found: BTreeMap<Vec<i32>, Vec<i32>> = BTreeMap::new();
        let mut queue = VecDeque::new();
        for i in 0..n {
            let mut c = vec![0; n];
            c[i] = 1;
            found.insert(c.clone(), simple_coroots[i].clone());
            queue.push_back(c);
        }
        while let Some(c) = queue.pop_front() {
            let cor = found[&c].clone();
            let root = combine(&c, simple_roots, rank);
            for i in 0..n {
                let k = dot(&simple_coroots[i], &root) as i32;
                let mut c2 = c.clone();
                c2[i] -= k;
                if found.contains_key(&c2) {
                    continue;
                }
                let m = dot(&cor, &simple_roots[i]) as i32;
                let cor2: Vec<i32> = cor
                    .iter()
                    .zip(&simple_coroots[i])
                    .map(|(&x, &y)| x - m * y)
                    .collect();
                found.insert(c2.clone(), cor2);
                queue.push_back(c2);
                if found.len() > 1000 {
                    return Err(Error::InvalidRootDatum("root system is not finite".into()));
                }
            }
        }
        for c in found.keys() {
            if c.iter().any(|&x| x > 0) && c.iter().any(|&x| x < 0) {
                return Err(Error::InvalidRootDatum(
                    "root with mixed-sign coefficients".into(),
                ));
            }
            let doubled: Vec<i32> = c.iter().map(|x| 2 * x).collect();
            if found.contains_key(&doubled) {
                return Err(Error::InvalidRootDatum("root system is not reduced".into()));
            }
        }

        // positives by height, then negatives in the same order
        let mut pos: Vec<Vec<i32>> = found
            .keys()
            .filter(|c| c.iter().all(|&x| x >= 0))
            .cloned()
            .collect();
        pos.sort_by_key(|c| (c.iter().sum::<i32>(), std::cmp::Reverse(c.clone())));
        let neg: Vec<Vec<i32>> = pos.iter().map(|c| c.iter().map(|x| -x).collect()).collect();
        let coeffs: Vec<Vec<i32>> = pos.into_iter().chain(neg).collect();
        let np = coeffs.len() / 2;
        let roots: Vec<Coords> = coeffs
            .iter()
            .map(|c| Coords::from_vec(combine(c, simple_roots, rank)))
            .collect();
        let coroots: Vec<Coords> = coeffs
            .iter()
            .map(|c| Coords::from_slice(&found[c]))
            .collect();
        let negative_of: Vec<usize> = (0..2 * np).map(|i| (i + np) % (2 * np)).collect();

        // irreducible components from the Cartan matrix
        let mut comp_simple = vec![usize::MAX; n];
        let mut n_components = 0;
        for start in 0..n {
            if comp_simple[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            comp_simple[start] = n_components;
            while let Some(i) = stack.pop() {
                for j in 0..n {
                    if cartan[i][j] != 0 && comp_simple[j] == usize::MAX {
                        comp_simple[j] = n_components;
                        stack.push(j);
                    }
                }
            }
            n_components += 1;
        }
        let component_of: Vec<usize> = coeffs
            .iter()
            .map(|c| comp_simple[c.iter().position(|&x| x != 0).unwrap()])
            .collect();

        // the minimal root of each component: beta - theta >= 0 for all beta
        let minimal: Vec<usize> = (0..n_components)
            .map(|comp| {
                let members: Vec<usize> = (0..coeffs.len())
                    .filter(|&i| component_of[i] == comp)
                    .collect();
                let mins: Vec<usize> = members
                    .iter()
                    .copied()
                    .filter(|&t| {
                        members
                            .iter()
                            .all(|&b| coeffs[b].iter().zip(&coeffs[t]).all(|(x, y)| x >= y))
                    })
                    .collect();
                assert_eq!(
                    mins.len(),
                    1,
                    "an irreducible root system has one minimal root"
                );
                mins[0]
            })
            .collect();

        Ok(RootDatum {
            name: name.to_string(),
            rank,
            roots,
            coroots,
            coeffs,
            n_simple: n,
            negative_of,
            component_of,
            n_components,
            minimal,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn root(&self, i: usize) -> &[i32] {
        &self.roots[i]
    }

    pub fn coroot(&self, i: usize) -> &[i32] {
        &self.coroots[i]
    }

    pub fn roots(&self) -> &[Coords] {
        &self.roots
    }

    pub fn coroots(&self) -> &[Coords] {
        &self.coroots
    }

    /// Coefficients of root `i` in the simple roots.
    pub fn simple_coeffs(&self, i: usize) -> &[i32] {
        &self.coeffs[i]
    }

    /// Simple roots are the first `num_simple()` roots.
    pub fn num_simple(&self) -> usize {
        self.n_simple
    }

    pub fn simple_indices(&self) -> std::ops::Range<usize> {
        0..self.n_simple
    }

    pub fn is_positive(&self, i: usize) -> bool {
        i < self.roots.len() / 2
    }

    pub fn negative(&self, i: usize) -> usize {
        self.negative_of[i]
    }

    pub fn component_of(&self, i: usize) -> usize {
        self.component_of[i]
    }

    pub fn num_components(&self) -> usize {
        self.n_components
    }

    /// Minimal root (negative of the highest root) of each component.
    pub fn minimal_roots(&self) -> &[usize] {
        &self.minimal
    }

    pub fn index_of_root(&self, v: &[i32]) -> Option<usize> {
        self.roots.iter().position(|r| r.as_slice() == v)
    }

    pub fn index_of_coroot(&self, v: &[i32]) -> Option<usize> {
        self.coroots.iter().position(|r| r.as_slice() == v)
    }

    /// Cartan matrix `a_ij = <alpha_i^v, alpha_j>` on the simple roots.
    pub fn cartan(&self) -> Vec<Vec<i64>> {
        let n = self.n_simple;
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| dot(&self.coroots[i], &self.roots[j]))
                    .collect()
            })
            .collect()
    }

    /// Semisimple iff the coroots span `X_* ⊗ Q`.
    pub fn is_semisimple(&self) -> bool {
        self.n_simple == self.rank
    }

    /// `s_i(xi) = xi - <xi, alpha_i> alpha_i^v` on a cocharacter.
    pub fn reflect_cochar(&self, i: usize, xi: &[i32]) -> Coords {
        let k = dot(xi, &self.roots[i]) as i32;
        xi.iter()
            .zip(&self.coroots[i])
            .map(|(&x, &c)| x - k * c)
            .collect()
    }

    /// `s_i(lambda) = lambda - <alpha_i^v, lambda> alpha_i` on a character.
    pub fn reflect_char(&self, i: usize, lambda: &[i32]) -> Coords {
        let k = dot(lambda, &self.coroots[i]) as i32;
        lambda
            .iter()
            .zip(&self.roots[i])
            .map(|(&x, &c)| x - k * c)
            .collect()
    }

    pub fn is_positive_affine(&self, a: AffineRoot) -> bool {
        a.h > 0 || (a.h == 0 && self.is_positive(a.root))
    }

    /// `Pi_aff`: the simple roots at height 0, then `(theta_min, 1)` per component.
    pub fn pi_aff(&self) -> Vec<AffineRoot> {
        self.simple_indices()
            .map(|i| AffineRoot::new(i, 0))
            .chain(self.minimal.iter().map(|&t| AffineRoot::new(t, 1)))
            .collect()
    }
}

fn combine(c: &[i32], basis: &[Vec<i32>], rank: usize) -> Vec<i32> {
    let mut out = vec![0; rank];
    for (k, b) in c.iter().zip(basis) {
        for (o, x) in out.iter_mut().zip(b) {
            *o += k * x;
        }
    }
    out
}

/// Simply connected datum of a Cartan matrix: simple coroots are the unit
/// vectors and simple root `j` is column `j`.
fn cartan_columns(a: &[&[i32]]) -> (Vec<Vec<i32>>, Vec<Vec<i32>>) {
    let n = a.len();
    let roots = (0..n).map(|j| (0..n).map(|i| a[i][j]).collect()).collect();
    let coroots = (0..n)
        .map(|i| (0..n).map(|j| i32::from(i == j)).collect())
        .collect();
    (roots, coroots)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preset_sizes() {
        let expected = [
            ("SL2", 2, 1),
            ("PGL2", 2, 1),
            ("GL2", 2, 1),
            ("SL3", 6, 1),
            ("GL3", 6, 1),
            ("Sp4", 8, 1),
            ("G2sc", 12, 1),
            ("SL2xSL2", 4, 2),
        ];
        for (name, n, comps) in expected {
            let rd = RootDatum::preset(name).unwrap();
            assert_eq!(rd.num_roots(), n, "{name}");
            assert_eq!(rd.num_components(), comps, "{name}");
            assert_eq!(rd.pi_aff().len(), rd.num_simple() + comps);
        }
        assert!(matches!(
            RootDatum::preset("E8"),
            Err(Error::UnknownPreset(_))
        ));
    }

    #[test]
    fn sl3_cartan_and_pi_aff() {
        let rd = RootDatum::preset("SL3").unwrap();
        assert_eq!(rd.cartan(), vec![vec![2, -1], vec![-1, 2]]);
        let pa = rd.pi_aff();
        assert_eq!(pa[2].h, 1);
        assert_eq!(rd.simple_coeffs(pa[2].root), &[-1, -1]);
    }

    #[test]
    fn pairings_and_reflections() {
        for name in PRESETS {
            let rd = RootDatum::preset(name).unwrap();
            for i in 0..rd.num_roots() {
                assert_eq!(dot(rd.root(i), rd.coroot(i)), 2);
                for j in 0..rd.num_roots() {
                    let r = rd.reflect_char(i, rd.root(j));
                    let c = rd.reflect_cochar(i, rd.coroot(j));
                    let k = rd.index_of_root(&r).expect("reflection permutes roots");
                    assert_eq!(rd.coroot(k), c.as_slice());
                }
            }
        }
    }

    #[test]
    fn sl2_affine_positivity() {
        let rd = RootDatum::preset("SL2").unwrap();
        assert!(rd.is_positive_affine(AffineRoot::new(0, 0)));
        assert!(rd.is_positive_affine(AffineRoot::new(1, 1)));
        assert!(!rd.is_positive_affine(AffineRoot::new(1, 0)));
        assert_eq!(
            rd.pi_aff(),
            vec![AffineRoot::new(0, 0), AffineRoot::new(1, 1)]
        );
    }

    #[test]
    fn explicit_roundtrip() {
        let rd = RootDatum::explicit(
            2,
            &[
                vec![2, -1],
                vec![-1, 2],
                vec![1, 1],
                vec![-2, 1],
                vec![1, -2],
                vec![-1, -1],
            ],
            &[
                vec![1, 0],
                vec![0, 1],
                vec![1, 1],
                vec![-1, 0],
                vec![0, -1],
                vec![-1, -1],
            ],
            &[0, 1],
        )
        .unwrap();
        assert_eq!(rd.num_roots(), 6);
        let bad = RootDatum::explicit(
            2,
            &[vec![2, -1], vec![-1, 2]],
            &[vec![1, 0], vec![0, 1]],
            &[0, 1],
        );
        assert!(matches!(bad, Err(Error::InvalidRootDatum(_))));
    }

    #[test]
    fn spec_json() {
        let g: GroupSpec = serde_json::from_str(r#"{"preset":"SL3"}"#).unwrap();
        assert_eq!(g, GroupSpec::preset("SL3"));
        let g: GroupSpec = serde_json::from_str(
            r#"{"rank":1,"roots":[[2],[-2]],"coroots":[[1],[-1]],"simple":[0]}"#,
        )
        .unwrap();
        assert_eq!(RootDatum::from_spec(&g).unwrap().num_roots(), 2);
    }
}
