//! JSON documents: map specs, fibration specs, the catalog, and reports.
//!
//! Field elements are strings, "n/d" or "[c0, c1, ...]" in the power basis
//! of the generator. Parameters may also be expressions in the generator `a`.
//! Output goes through `serde_json::Value`, whose maps keep keys sorted.

pub mod fixture;

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::arith::expr::eval_expr;
use crate::arith::{APoly, Field, FieldElem, HPoly, NumberField, Rat, UPoly};
use crate::classifier::{CaseLabel, CatalogEntry};
use crate::entropy::GrowthClass;
use crate::error::{Error, Result};
use crate::fibrations::{Fibration, Mobius};
use crate::maps::{make_family_a, make_family_b, BiMap, Family, PPoint};

/// A modulus coefficient, written as an integer or a rational string.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coef {
    Int(i64),
    Text(String),
}

impl Coef {
    fn to_rat(&self) -> Result<Rat> {
        match self {
            Coef::Int(n) => Ok(Rat::int(*n)),
            Coef::Text(s) => s.parse(),
        }
    }
}

/// One term c·x0^e0·x1^e1·x2^e2 of a homogeneous component.
pub type HTerm = ([u32; 3], String);

/// One term c·x^ex·y^ey of an affine polynomial.
pub type ATerm = (u32, u32, String);

/// `{"modulus": [...]}`: lowest coefficient first, monic.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub modulus: Vec<Coef>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    /// "A", "B" or "raw".
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    /// Absent means ℚ.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<Vec<HTerm>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inverse: Option<Vec<Vec<HTerm>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub indeterminacy: Option<Vec<[String; 3]>>,
}

fn json_error(e: serde_json::Error) -> Error {
    Error::parse(format!("line {} column {}", e.line(), e.column()), e.to_string())
}

pub fn parse_field(spec: &Option<FieldSpec>) -> Result<Arc<NumberField>> {
    match spec {
        None => Ok(NumberField::rationals()),
        Some(fs) => {
            let rs = fs.modulus.iter().map(Coef::to_rat).collect::<Result<Vec<_>>>()?;
            NumberField::from_rats(rs).map_err(|e| Error::validation("field.modulus", e.to_string()))
        }
    }
}

fn field_spec(k: &NumberField) -> Option<FieldSpec> {
    (!k.is_rational()).then(|| FieldSpec { modulus: k.modulus_strings().into_iter().map(Coef::Text).collect() })
}

/// "n/d", "[c0, ...]" or an expression in the generator `a`.
pub fn parse_elem(k: &Arc<NumberField>, s: &str) -> Result<FieldElem> {
    if s.trim_start().starts_with('[') {
        return FieldElem::parse(k, s);
    }
    let mut vars = BTreeMap::new();
    if !k.is_rational() {
        vars.insert("a".to_string(), FieldElem::generator(k));
    }
    eval_expr(s, k, &vars)
}

fn hpoly(k: &Arc<NumberField>, terms: &[HTerm], what: &str) -> Result<HPoly<FieldElem>> {
    let deg = terms.first().map(|(e, _)| e.iter().sum()).unwrap_or(0);
    let ts = terms
        .iter()
        .map(|(e, c)| Ok((*e, parse_elem(k, c)?)))
        .collect::<Result<Vec<_>>>()?;
    HPoly::from_terms(ts, deg, k).map_err(|e| Error::validation(what, e.to_string()))
}

fn triple(k: &Arc<NumberField>, cs: &[Vec<HTerm>], what: &str) -> Result<[HPoly<FieldElem>; 3]> {
    if cs.len() != 3 {
        return Err(Error::validation(what, format!("expected 3 components, got {}", cs.len())));
    }
    Ok([hpoly(k, &cs[0], what)?, hpoly(k, &cs[1], what)?, hpoly(k, &cs[2], what)?])
}

fn hterms(p: &HPoly<FieldElem>) -> Vec<HTerm> {
    p.terms().iter().map(|(e, c)| (*e, c.to_string())).collect()
}

impl MapSpec {
    pub fn field(&self) -> Result<Arc<NumberField>> {
        parse_field(&self.field)
    }

    pub fn build(&self) -> Result<BiMap> {
        let k = self.field()?;
        let raw_only = |key: &str, present: bool| {
            if present {
                Err(Error::validation(key, format!("not allowed for family {}", self.family)))
            } else {
                Ok(())
            }
        };
        match self.family.as_str() {
            "A" | "B" => {
                raw_only("components", self.components.is_some())?;
                raw_only("inverse", self.inverse.is_some())?;
                raw_only("indeterminacy", self.indeterminacy.is_some())?;
                let third = if self.family == "A" { "gamma0" } else { "beta2" };
                let params = self.params.as_ref().ok_or_else(|| Error::validation("params", "missing"))?;
                if let Some(extra) = params.keys().find(|n| !["alpha0", "alpha1", third].contains(&n.as_str())) {
                    return Err(Error::validation(format!("params.{extra}"), "unknown parameter"));
                }
                let get = |n: &str| -> Result<FieldElem> {
                    let s = params.get(n).ok_or_else(|| Error::validation(format!("params.{n}"), "missing"))?;
                    parse_elem(&k, s).map_err(|e| Error::validation(format!("params.{n}"), e.to_string()))
                };
                let (a0, a1, c) = (get("alpha0")?, get("alpha1")?, get(third)?);
                if a1.is_zero() {
                    return Err(Error::validation("params.alpha1", "alpha1 must be nonzero"));
                }
                if self.family == "A" {
                    make_family_a(&a0, &a1, &c)
                } else {
                    make_family_b(&a0, &a1, &c)
                }
            }
            "raw" => {
                raw_only("params", self.params.is_some())?;
                let comps = self.components.as_ref().ok_or_else(|| Error::validation("components", "missing"))?;
                let comps = triple(&k, comps, "components")?;
                let inverse = self.inverse.as_ref().map(|i| triple(&k, i, "inverse")).transpose()?;
                let ind = self
                    .indeterminacy
                    .as_ref()
                    .map(|pts| {
                        pts.iter()
                            .map(|c| {
                                let v = [parse_elem(&k, &c[0])?, parse_elem(&k, &c[1])?, parse_elem(&k, &c[2])?];
                                PPoint::new(v)
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .transpose()?;
                BiMap::raw(&k, comps, inverse, ind).map_err(|e| Error::validation("components", e.to_string()))
            }
            other => Err(Error::validation("family", format!("unknown family {other:?}"))),
        }
    }

    pub fn from_map(f: &BiMap) -> MapSpec {
        let params = |a0: &FieldElem, a1: &FieldElem, n: &str, c: &FieldElem| {
            Some(BTreeMap::from([
                ("alpha0".to_string(), a0.to_string()),
                ("alpha1".to_string(), a1.to_string()),
                (n.to_string(), c.to_string()),
            ]))
        };
        let mut spec = MapSpec {
            family: String::new(),
            name: None,
            field: field_spec(f.field()),
            params: None,
            components: None,
            inverse: None,
            indeterminacy: None,
        };
        match f.family() {
            Family::A { alpha0, alpha1, gamma0 } => {
                spec.family = "A".into();
                spec.params = params(alpha0, alpha1, "gamma0", gamma0);
            }
            Family::B { alpha0, alpha1, beta2 } => {
                spec.family = "B".into();
                spec.params = params(alpha0, alpha1, "beta2", beta2);
            }
            Family::Raw => {
                spec.family = "raw".into();
                spec.components = Some(f.components().iter().map(hterms).collect());
                spec.inverse = f.inverse_components().map(|i| i.iter().map(hterms).collect());
                spec.indeterminacy = f.indeterminacy().map(|pts| {
                    pts.iter().map(|p| p.coords().clone().map(|c| c.to_string())).collect()
                });
            }
        }
        spec
    }

    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("map specs serialize")
    }
}

/// Parses and validates a map document.
pub fn parse_map_spec(text: &str) -> Result<MapSpec> {
    let spec: MapSpec = serde_json::from_str(text).map_err(json_error)?;
    spec.build()?;
    Ok(spec)
}

pub fn parse_map(text: &str) -> Result<BiMap> {
    let spec: MapSpec = serde_json::from_str(text).map_err(json_error)?;
    spec.build()
}

/// V = P/Q with optional ψ and claims to check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FibrationSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<MapSpec>,
    /// Used when no map is embedded.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldSpec>,
    #[serde(rename = "P")]
    pub p: Vec<ATerm>,
    #[serde(rename = "Q")]
    pub q: Vec<ATerm>,
    /// [ω1, ω2, ω3, ω4] with ψ(t) = (ω1 t + ω2)/(ω3 t + ω4).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mobius: Option<[String; 4]>,
    /// ψ has this finite order and the induced first integral is claimed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_integral_order: Option<usize>,
    /// Stem of another fixture in the same directory claimed transverse to this one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transverse_to: Option<String>,
}

fn apoly(k: &Arc<NumberField>, terms: &[ATerm]) -> Result<APoly<FieldElem>> {
    let ts = terms.iter().map(|(i, j, c)| Ok(((*i, *j), parse_elem(k, c)?))).collect::<Result<Vec<_>>>()?;
    Ok(APoly::from_terms(ts, k))
}

fn aterms(p: &APoly<FieldElem>) -> Vec<ATerm> {
    p.terms().map(|((i, j), c)| (i, j, c.to_string())).collect()
}

impl FibrationSpec {
    /// The field of the embedded map, else the stated modulus.
    pub fn field(&self) -> Result<Arc<NumberField>> {
        match &self.map {
            Some(m) => m.field(),
            None => parse_field(&self.field),
        }
    }

    pub fn fibration_in(&self, k: &Arc<NumberField>) -> Result<Fibration> {
        Fibration::new(apoly(k, &self.p)?, apoly(k, &self.q)?)
    }

    pub fn mobius_in(&self, k: &Arc<NumberField>) -> Result<Option<Mobius>> {
        self.mobius
            .as_ref()
            .map(|w| {
                let v = [parse_elem(k, &w[0])?, parse_elem(k, &w[1])?, parse_elem(k, &w[2])?, parse_elem(k, &w[3])?];
                Mobius::new(v)
            })
            .transpose()
    }

    pub fn from_parts(map: Option<&BiMap>, v: &Fibration, psi: Option<&Mobius>) -> FibrationSpec {
        FibrationSpec {
            map: map.map(MapSpec::from_map),
            field: if map.is_some() { None } else { field_spec(v.field()) },
            p: aterms(&v.p),
            q: aterms(&v.q),
            mobius: psi.map(|m| m.w.clone().map(|c| c.to_string())),
            first_integral_order: None,
            transverse_to: None,
        }
    }

    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("fibration specs serialize")
    }
}

pub fn parse_fibration_spec(text: &str) -> Result<FibrationSpec> {
    let spec: FibrationSpec = serde_json::from_str(text).map_err(json_error)?;
    let k = spec.field()?;
    spec.fibration_in(&k)?;
    spec.mobius_in(&k)?;
    Ok(spec)
}

pub fn elem_strings(p: &UPoly<Rat>) -> Vec<String> {
    p.coeffs().iter().map(|c| c.to_string()).collect()
}

pub fn growth_value(g: &GrowthClass) -> Value {
    match g {
        GrowthClass::Bounded { period } => json!({"class": g.name(), "period": period}),
        GrowthClass::Exponential { lo, hi, poly } => json!({
            "class": g.name(),
            "delta": {"lo": lo.to_string(), "hi": hi.to_string()},
            "factor": elem_strings(poly),
        }),
        _ => json!({"class": g.name()}),
    }
}

pub fn label_value(l: &CaseLabel) -> Value {
    json!({
        "family": l.family.to_string(),
        "k": l.k,
        "p": l.p,
        "class": l.growth.name(),
        "growth": growth_value(&l.growth),
        "case": l.case.map(|c| c.name()),
        "charpoly": elem_strings(&l.charpoly),
        "degrees": l.degrees,
        "notes": l.notes,
    })
}

/// Owned form of a catalog entry, as stored in fixtures/catalog.json.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogRecord {
    pub name: String,
    pub case: String,
    pub family: String,
    pub modulus: Option<Vec<i64>>,
    pub params: BTreeMap<String, String>,
    pub zero: Vec<String>,
    pub nonzero: Vec<String>,
    pub growth: String,
    pub period: Option<usize>,
    pub fibrations: Vec<String>,
}

impl From<&CatalogEntry> for CatalogRecord {
    fn from(e: &CatalogEntry) -> Self {
        let third = match e.family() {
            crate::classifier::FamilyKind::A => "gamma0",
            crate::classifier::FamilyKind::B => "beta2",
        };
        let names = ["alpha0", "alpha1", third];
        CatalogRecord {
            name: e.name.into(),
            case: e.case.name().into(),
            family: e.family().to_string(),
            modulus: e.modulus.map(|m| m.to_vec()),
            params: names.iter().zip(e.params).map(|(n, v)| (n.to_string(), v.to_string())).collect(),
            zero: e.zero.iter().map(|s| s.to_string()).collect(),
            nonzero: e.nonzero.iter().map(|s| s.to_string()).collect(),
            growth: e.growth.into(),
            period: e.period,
            fibrations: e.fibrations.iter().map(|s| s.to_string()).collect(),
        }
    }
}

impl CatalogRecord {
    /// The representative as a map document.
    pub fn map_spec(&self) -> MapSpec {
        MapSpec {
            family: self.family.clone(),
            name: Some(self.name.clone()),
            field: self.modulus.as_ref().map(|m| FieldSpec { modulus: m.iter().map(|&c| Coef::Int(c)).collect() }),
            params: Some(self.params.clone()),
            components: None,
            inverse: None,
            indeterminacy: None,
        }
    }
}

pub fn catalog_value(entries: &[CatalogEntry]) -> Value {
    let recs: Vec<CatalogRecord> = entries.iter().map(CatalogRecord::from).collect();
    serde_json::to_value(recs).expect("catalog serializes")
}

pub fn parse_catalog(text: &str) -> Result<Vec<CatalogRecord>> {
    serde_json::from_str(text).map_err(json_error)
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn to_json_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_a_document() {
        let f = parse_map(r#"{"family":"A","params":{"alpha0":"1","alpha1":"2","gamma0":"3"}}"#).unwrap();
        let spec = MapSpec::from_map(&f);
        let back = parse_map_spec(&to_json_string(&spec.to_value())).unwrap();
        assert_eq!(back, spec);
    }

    #[test]
    fn number_field_parameters() {
        let text = r#"{"family":"A","field":{"modulus":[1,0,0,1,0,0,1]},
            "params":{"alpha0":"-2*a^5 + a^3 - a^2 - a","alpha1":"a","gamma0":"a + a^4"}}"#;
        let f = parse_map(text).unwrap();
        assert_eq!(f.field().degree(), 6);
        let spec = MapSpec::from_map(&f);
        assert_eq!(spec.params.as_ref().unwrap()["alpha1"], "[0, 1, 0, 0, 0, 0]");
        assert_eq!(parse_map_spec(&to_json_string(&spec.to_value())).unwrap(), spec);
    }

    #[test]
    fn rejects_bad_documents() {
        let zero = parse_map(r#"{"family":"A","params":{"alpha0":"1","alpha1":"0","gamma0":"3"}}"#);
        assert!(matches!(zero, Err(Error::Validation { ref field, .. }) if field == "params.alpha1"));
        let unknown = parse_map(r#"{"family":"A","params":{"alpha0":"1","alpha1":"2","gamma0":"3"},"colour":1}"#);
        assert!(matches!(unknown, Err(Error::Parse { .. })));
        let extra = parse_map(r#"{"family":"B","params":{"alpha0":"1","alpha1":"2","gamma0":"3"}}"#);
        assert!(matches!(extra, Err(Error::Validation { .. })));
        let Err(Error::Parse { location, .. }) = parse_map("{\n\"family\": }") else { panic!() };
        assert!(location.starts_with("line 2"), "{location}");
    }

    #[test]
    fn raw_round_trip() {
        let k = NumberField::rationals();
        let j = BiMap::involution(&k);
        let spec = MapSpec::from_map(&j);
        assert_eq!(spec.family, "raw");
        let back = parse_map_spec(&to_json_string(&spec.to_value())).unwrap();
        assert_eq!(back, spec);
    }

    #[test]
    fn fibration_document() {
        let text = r#"{"P":[[0,0,"1"],[1,0,"-2"],[0,1,"3"],[0,2,"2"]],"Q":[[0,0,"1"],[0,1,"1"]],"mobius":["-1","0","0","1"]}"#;
        let spec = parse_fibration_spec(text).unwrap();
        let k = spec.field().unwrap();
        let v = spec.fibration_in(&k).unwrap();
        assert_eq!(v.degree(), 2);
        let psi = spec.mobius_in(&k).unwrap().unwrap();
        let again = FibrationSpec::from_parts(None, &v, Some(&psi));
        assert_eq!(again.fibration_in(&k).unwrap(), v);
    }
}
