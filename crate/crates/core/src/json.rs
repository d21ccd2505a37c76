//! JSON encodings.
//!
//! * element: `[{"e": [..], "k": [..], "f": [..], "c": "qrat"}, ...]`
//! * tensor: `[{"left": {"e","k","f"}, "right": {...}, "c": "qrat"}, ...]`
//!
//! `e`/`f` have one entry per positive root in convex order, `k` one entry
//! per simple root. Coefficients use the `num / den` text form of [`QRat`].

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::hopf::TensorElement;
use crate::pbw::{ExpVec, PBWMonomial, UElement};
use crate::rootdata::{RootSystem, SystemKind, Weight};
use crate::scalar::QRat;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialJson {
    pub e: Vec<u16>,
    pub k: Vec<i32>,
    pub f: Vec<u16>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub e: Vec<u16>,
    pub k: Vec<i32>,
    pub f: Vec<u16>,
    pub c: QRat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorTermJson {
    pub left: MonomialJson,
    pub right: MonomialJson,
    pub c: QRat,
}

pub fn monomial_to_json(system: SystemKind, m: &PBWMonomial) -> MonomialJson {
    let rs = RootSystem::get(system);
    MonomialJson {
        e: m.e.0[..rs.n_pos()].to_vec(),
        k: m.k.0[..rs.rank].to_vec(),
        f: m.f.0[..rs.n_pos()].to_vec(),
    }
}

fn exp_from(rs: &RootSystem, v: &[u16]) -> Result<ExpVec> {
    if v.len() != rs.n_pos() {
        return Err(Error::IndexMismatch(v.len(), rs.n_pos()));
    }
    let mut e = [0u16; 3];
    e[..v.len()].copy_from_slice(v);
    Ok(ExpVec(e))
}

fn weight_from(rs: &RootSystem, v: &[i32]) -> Result<Weight> {
    if v.len() != rs.rank {
        return Err(Error::IndexMismatch(v.len(), rs.rank));
    }
    let mut w = [0i32; 2];
    w[..v.len()].copy_from_slice(v);
    Ok(Weight(w))
}

pub fn monomial_from_json(system: SystemKind, m: &MonomialJson) -> Result<PBWMonomial> {
    let rs = RootSystem::get(system);
    Ok(PBWMonomial::new(
        exp_from(rs, &m.e)?,
        weight_from(rs, &m.k)?,
        exp_from(rs, &m.f)?,
    ))
}

pub fn element_terms(x: &UElement) -> Vec<TermJson> {
    x.terms()
        .iter()
        .map(|(m, c)| {
            let mj = monomial_to_json(x.system(), m);
            TermJson {
                e: mj.e,
                k: mj.k,
                f: mj.f,
                c: c.clone(),
            }
        })
        .collect()
}

pub fn element_to_value(x: &UElement) -> Value {
    serde_json::to_value(element_terms(x)).expect("serializable")
}

pub fn element_to_string(x: &UElement) -> String {
    serde_json::to_string(&element_terms(x)).expect("serializable")
}

pub fn element_from_value(system: SystemKind, v: &Value) -> Result<UElement> {
    let terms: Vec<TermJson> = serde_json::from_value(v.clone()).map_err(|e| Error::Data(e.to_string()))?;
    let mut out = UElement::zero(system);
    for t in terms {
        let m = monomial_from_json(system, &MonomialJson { e: t.e, k: t.k, f: t.f })?;
        out.add_term(m, &t.c);
    }
    Ok(out)
}

pub fn element_from_str(system: SystemKind, s: &str) -> Result<UElement> {
    let v: Value = serde_json::from_str(s).map_err(|e| Error::Data(e.to_string()))?;
    element_from_value(system, &v)
}

pub fn tensor_to_value(t: &TensorElement) -> Value {
    let v: Vec<TensorTermJson> = t
        .terms()
        .iter()
        .map(|((l, r), c)| TensorTermJson {
            left: monomial_to_json(t.system(), l),
            right: monomial_to_json(t.system(), r),
            c: c.clone(),
        })
        .collect();
    serde_json::to_value(v).expect("serializable")
}

pub fn tensor_from_value(system: SystemKind, v: &Value) -> Result<TensorElement> {
    let terms: Vec<TensorTermJson> = serde_json::from_value(v.clone()).map_err(|e| Error::Data(e.to_string()))?;
    let mut out = TensorElement::zero(system);
    for t in terms {
        out.add_term(
            monomial_from_json(system, &t.left)?,
            monomial_from_json(system, &t.right)?,
            &t.c,
        );
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse_element, Substitution};

    #[test]
    fn element_round_trip() {
        let x = parse_element(
            SystemKind::A2,
            "E[ab]*K[-a-b] + (1 - q^-2)*E[b]*K[-a-b] - q^3/(q^2+1)*F[a]*F[b]",
            &Substitution::new(),
        )
        .unwrap();
        let s = element_to_string(&x);
        assert_eq!(element_from_str(SystemKind::A2, &s).unwrap(), x);
        assert_eq!(element_to_string(&element_from_str(SystemKind::A2, &s).unwrap()), s);
    }

    #[test]
    fn wrong_lengths_rejected() {
        let s = r#"[{"e":[1],"k":[0],"f":[0],"c":"1"}]"#;
        assert!(element_from_str(SystemKind::A2, s).is_err());
        assert!(element_from_str(SystemKind::A1, s).is_ok());
    }
}
