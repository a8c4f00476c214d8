//! JSON encodings of group elements and algebra elements.
//!
//! ```json
//! {"torus":[1], "w":{"w0_word":[0], "mu":[1]}}
//! {"terms":[{"coeff":[2], "elt":{...}}]}
//! ```
//! `E^d` elements carry an extra `"basis":"phi"`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElt};
use crate::lincomb::Comb;
use crate::propweyl::{ProPElt, ProPGroup};
use crate::rootdata::Coords;
use crate::weyl::{ExtAffWeylElt, WeylGroup};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeylJson {
    pub w0_word: Vec<usize>,
    pub mu: Vec<i32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EltJson {
    #[serde(default)]
    pub torus: Vec<i32>,
    pub w: WeylJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub coeff: Vec<u32>,
    pub elt: EltJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CombJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<String>,
    pub terms: Vec<TermJson>,
}

pub fn weyl_to_json(weyl: &WeylGroup, w: &ExtAffWeylElt) -> WeylJson {
    WeylJson {
        w0_word: weyl.finite().word(w.w0).to_vec(),
        mu: w.mu.to_vec(),
    }
}

pub fn weyl_from_json(weyl: &WeylGroup, j: &WeylJson) -> Result<ExtAffWeylElt> {
    if j.mu.len() != weyl.rank() {
        return Err(Error::Mismatch(format!(
            "mu has length {}, rank is {}",
            j.mu.len(),
            weyl.rank()
        )));
    }
    if j.w0_word
        .iter()
        .any(|&i| i >= weyl.root_datum().num_simple())
    {
        return Err(Error::Mismatch(format!(
            "w0_word {:?} uses an unknown simple reflection",
            j.w0_word
        )));
    }
    Ok(ExtAffWeylElt {
        w0: weyl.finite().from_word(&j.w0_word)?,
        mu: Coords::from_slice(&j.mu),
    })
}

pub fn elt_to_json(g: &ProPGroup, x: &ProPElt) -> EltJson {
    EltJson {
        torus: x.t.to_vec(),
        w: weyl_to_json(g.weyl(), &x.w),
    }
}

pub fn elt_from_json(g: &ProPGroup, j: &EltJson) -> Result<ProPElt> {
    let w = weyl_from_json(g.weyl(), &j.w)?;
    let torus = if j.torus.is_empty() {
        vec![0; g.rank()]
    } else {
        j.torus.clone()
    };
    if torus.len() != g.rank() {
        return Err(Error::Mismatch(format!(
            "torus has length {}, rank is {}",
            torus.len(),
            g.rank()
        )));
    }
    Ok(g.elt(&torus, w))
}

pub fn coeff_to_json(k: &Field, c: FieldElt) -> Vec<u32> {
    k.coeffs(c)
}

pub fn coeff_from_json(k: &Field, c: &[u32]) -> Result<FieldElt> {
    k.from_coeffs(c)
}

pub fn comb_to_json<B>(g: &ProPGroup, k: &Field, x: &Comb<B>, basis: Option<&str>) -> CombJson {
    CombJson {
        basis: basis.map(str::to_string),
        terms: x
            .iter()
            .map(|(e, &c)| TermJson {
                coeff: coeff_to_json(k, c),
                elt: elt_to_json(g, e),
            })
            .collect(),
    }
}

pub fn comb_from_json<B>(
    g: &ProPGroup,
    k: &Field,
    j: &CombJson,
    basis: Option<&str>,
) -> Result<Comb<B>> {
    if j.basis.as_deref().unwrap_or("tau") != basis.unwrap_or("tau") {
        return Err(Error::Mismatch(format!(
            "expected basis {:?}, got {:?}",
            basis.unwrap_or("tau"),
            j.basis.as_deref().unwrap_or("tau")
        )));
    }
    let mut out = Comb::zero();
    for t in &j.terms {
        out.add_term(k, elt_from_json(g, &t.elt)?, coeff_from_json(k, &t.coeff)?);
    }
    Ok(out)
}

pub fn to_value<T: Serialize>(x: &T) -> serde_json::Value {
    serde_json::to_value(x).expect("wire types serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldSpec;
    use crate::hecke::HeckeElt;
    use crate::rootdata::RootDatum;

    #[test]
    fn roundtrip() {
        let g = ProPGroup::new(RootDatum::preset("SL3").unwrap(), 3).unwrap();
        let k = Field::new(&FieldSpec::prime(3)).unwrap();
        for x in g.enumerate(3) {
            let j = elt_to_json(&g, &x);
            let s = serde_json::to_string(&j).unwrap();
            let back: EltJson = serde_json::from_str(&s).unwrap();
            assert_eq!(elt_from_json(&g, &back).unwrap(), x);
        }
        let h = HeckeElt::from_terms(&k, g.enumerate(1).into_iter().map(|x| (x, k.from_int(2))));
        let j = comb_to_json(&g, &k, &h, None);
        assert_eq!(
            comb_from_json::<crate::lincomb::Tau>(&g, &k, &j, None).unwrap(),
            h
        );
        assert!(comb_from_json::<crate::lincomb::Tau>(&g, &k, &j, Some("phi")).is_err());
    }

    #[test]
    fn parse_example() {
        let g = ProPGroup::new(RootDatum::preset("SL2").unwrap(), 3).unwrap();
        let j: EltJson =
            serde_json::from_str(r#"{"torus":[1],"w":{"w0_word":[0],"mu":[1]}}"#).unwrap();
        let x = elt_from_json(&g, &j).unwrap();
        assert_eq!(x.w.w0, 1);
        let bad: EltJson =
            serde_json::from_str(r#"{"torus":[1,0],"w":{"w0_word":[0],"mu":[1]}}"#).unwrap();
        assert!(matches!(elt_from_json(&g, &bad), Err(Error::Mismatch(_))));
    }
}
