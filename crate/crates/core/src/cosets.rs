//! Double-coset calculus at the level of `W~`: supports of `I v I · I w I`,
//! the index `|I / I_w| = q^{ℓ(w)}`, and the root profile `g_w` of `I_w`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::propweyl::{ProPElt, ProPGroup};
use crate::rootdata::AffineRoot;
use crate::weyl::{ExtAffWeylElt, WeylGroup};

/// `I v I · I w I` as a set of double cosets `I u I`.
pub fn support_mul(g: &ProPGroup, v: &ProPElt, w: &ProPElt) -> BTreeSet<ProPElt> {
    support_mul_by(g, v, w, false)
}

/// Same recursion driven by the other reduced-word tie-break of `v`.
pub fn support_mul_by(g: &ProPGroup, v: &ProPElt, w: &ProPElt, reverse: bool) -> BTreeSet<ProPElt> {
    let (omega, word) = g.decompose_by(v, reverse);
    let mut cur = BTreeSet::from([w.clone()]);
    for &j in word.iter().rev() {
        let mut next = BTreeSet::new();
        for x in &cur {
            next.insert(g.gen_mul_left(j, x));
            if g.is_left_descent(x, j) {
                for t in g.s_image(j).0 {
                    next.insert(g.torus_mul_left(t, x));
                }
            }
        }
        cur = next;
    }
    cur.into_iter().map(|x| g.mul(&omega, &x)).collect()
}

/// `q^{ℓ(w)}` as an exact integer.
pub fn index(g: &ProPGroup, w: &ProPElt) -> Result<u128> {
    let l = u32::try_from(g.length(w)).map_err(|_| Error::Overflow("q^l"))?;
    (g.q() as u128).checked_pow(l).ok_or(Error::Overflow("q^l"))
}

/// `g_w(α) = min { m : (α, m) positive and w^{-1}(α, m) positive }`, by
/// scanning upward from the lower bound coming from positivity of `(α, m)`.
pub fn g_profile(weyl: &WeylGroup, w: &ExtAffWeylElt) -> Vec<i64> {
    let rd = weyl.root_datum();
    let winv = weyl.inv(w);
    (0..rd.num_roots())
        .map(|a| {
            let mut m = i64::from(!rd.is_positive(a));
            while !rd.is_positive_affine(weyl.act_affine(&winv, AffineRoot::new(a, m))) {
                m += 1;
            }
            m
        })
        .collect()
}

/// `Σ_α (g_w(α) - g_1(α))`, which equals `ℓ(w)`.
pub fn profile_excess(weyl: &WeylGroup, w: &ExtAffWeylElt) -> i64 {
    let base = g_profile(weyl, &weyl.identity());
    g_profile(weyl, w)
        .iter()
        .zip(&base)
        .map(|(a, b)| a - b)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::RootDatum;

    fn group(name: &str, q: u32) -> ProPGroup {
        ProPGroup::new(RootDatum::preset(name).unwrap(), q).unwrap()
    }

    #[test]
    fn sl2_examples() {
        let g = group("SL2", 3);
        let n = g.gen(0).clone();
        let s = support_mul(&g, &n, &n);
        assert_eq!(s.len(), 3);
        assert!(s.contains(&g.mul(&n, &n)));
        assert_eq!(index(&g, &g.identity()).unwrap(), 1);
        assert_eq!(index(&g, &n).unwrap(), 3);
        let t = g.section(&g.weyl().translation(&[1]));
        assert_eq!(index(&g, &t).unwrap(), 9);
        // ascent: a single coset
        let s = support_mul(&g, g.gen(1), &n);
        assert_eq!(s, BTreeSet::from([g.mul(g.gen(1), &n)]));
    }

    #[test]
    fn profiles() {
        let g = group("SL2", 3);
        let weyl = g.weyl();
        assert_eq!(g_profile(weyl, &weyl.identity()), vec![0, 1]);
        assert_eq!(g_profile(weyl, weyl.s_aff(0)), vec![1, 1]);
        for w in weyl.enumerate(5) {
            assert_eq!(profile_excess(weyl, &w), weyl.length(&w) as i64);
        }
    }

    #[test]
    fn index_overflow() {
        let g = group("SL2", 5);
        let t = g.section(&g.weyl().translation(&[30]));
        assert!(matches!(index(&g, &t), Err(Error::Overflow(_))));
    }
}
