//! JSON encodings. Big integers are decimal strings, rationals are `"p/q"`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use roofcalc_core::bundles::{BundleExpr, CohomologyTable};
use roofcalc_core::bwb::{BundleFactor, CohomologyResult};
use roofcalc_core::hodge::MiddleDecomposition;
use roofcalc_core::koszul::{FamilyDimension, KoszulPage, RestrictionCohomology};
use roofcalc_core::motivic::{
    conclusion_text, FormalRelation, LEquivalenceCertificate, LPoly, Symbol,
};
use roofcalc_core::pluecker::{ExactMatrix, ProbeReport};
use roofcalc_core::symfunc::{DimensionGap, SchurExpansion, Witness};
use roofcalc_core::{GeneralizedWeight, Partition};
use serde_json::{json, Map, Value};
use thiserror::Error;

pub const SCHEMA: u64 = 1;

/// Adds `"schema": 1` to an object.
pub fn with_schema(v: Value) -> Value {
    match v {
        Value::Object(mut m) => {
            m.insert("schema".into(), json!(SCHEMA));
            Value::Object(m)
        }
        other => json!({ "schema": SCHEMA, "value": other }),
    }
}

pub fn partition(p: &Partition) -> Value {
    json!(p.parts())
}

pub fn weight(w: &GeneralizedWeight) -> Value {
    json!({ "entries": w.entries(), "rank": w.rank() })
}

pub fn cohomology_result(r: &CohomologyResult) -> Value {
    match r {
        CohomologyResult::Zero => json!({ "result": "zero" }),
        CohomologyResult::Nonzero {
            degree,
            dominant,
            dimension,
        } => json!({
            "degree": degree,
            "dominant": dominant.entries(),
            "dim": dimension.to_string(),
        }),
    }
}

pub fn factor(f: &BundleFactor) -> Value {
    json!({
        "label": f.to_string(),
        "u": partition(f.u_part()),
        "q": partition(f.q_part()),
        "twist": f.twist(),
    })
}

pub fn expr(e: &BundleExpr) -> Value {
    let summands: Vec<Value> = e
        .summands()
        .iter()
        .map(|(f, m)| {
            let mut v = factor(f);
            v["multiplicity"] = json!(m.to_string());
            v
        })
        .collect();
    json!({ "n": e.n(), "rank": e.rank().to_string(), "summands": summands })
}

pub fn table(t: &CohomologyTable) -> Value {
    let entries: Vec<Value> = t
        .entries()
        .iter()
        .map(|(d, dim)| json!({ "degree": d, "dim": dim.to_string() }))
        .collect();
    json!(entries)
}

pub fn page(p: &KoszulPage) -> Value {
    let cells: Vec<Value> = p
        .cells
        .iter()
        .map(|(&(l, q), d)| json!({ "l": l, "q": q, "dim": d.to_string() }))
        .collect();
    json!({ "n": p.n, "dim_y": p.dim_y(), "cells": cells, "euler_characteristic": p.euler_characteristic().to_string() })
}

pub fn restriction(r: &RestrictionCohomology) -> Value {
    match r {
        RestrictionCohomology::Determinate {
            table: t,
            cancellations,
        } => {
            let c: Vec<Value> = cancellations
                .iter()
                .map(|c| {
                    json!({
                        "source": [c.source.0, c.source.1],
                        "target": [c.target.0, c.target.1],
                        "killed": [c.killed.0, c.killed.1],
                        "survivor_dim": c.survivor_dim.to_string(),
                    })
                })
                .collect();
            json!({
                "status": "determinate",
                "cohomology": table(t),
                "euler_characteristic": t.euler_characteristic().to_string(),
                "cancellations": c,
            })
        }
        RestrictionCohomology::Indeterminate { conflicts } => {
            let c: Vec<Value> = conflicts
                .iter()
                .map(|(a, b)| json!([[a.0, a.1], [b.0, b.1]]))
                .collect();
            json!({ "status": "indeterminate", "conflicts": c })
        }
    }
}

pub fn family_dimension(n: usize, f: &FamilyDimension) -> Value {
    match f {
        FamilyDimension::Certified {
            value,
            h0_normal,
            h0_tangent,
            h1_tangent,
            assumptions,
        } => json!({
            "n": n,
            "status": "certified",
            "value": value.to_string(),
            "h0_normal": h0_normal.to_string(),
            "h0_tangent": h0_tangent.to_string(),
            "h1_tangent": h1_tangent.to_string(),
            "assumptions": assumptions,
        }),
        FamilyDimension::CannotCertify { reason } => {
            json!({ "n": n, "status": "cannot_certify", "reason": reason })
        }
    }
}

pub fn lpoly(p: &LPoly) -> Value {
    let coeffs: Vec<String> = p.dense().iter().map(BigInt::to_string).collect();
    json!({ "coeffs": coeffs, "text": p.to_string() })
}

pub fn relation(r: &FormalRelation) -> Value {
    let mut terms = Map::new();
    for s in [Symbol::M, Symbol::YMinus, Symbol::YPlus] {
        let c = r.coefficient(s);
        if !c.is_zero() {
            terms.insert(s.as_str().into(), lpoly(&c));
        }
    }
    json!({ "terms": terms, "constant": lpoly(&r.constant), "text": r.to_string() })
}

pub fn certificate(c: &LEquivalenceCertificate) -> Value {
    json!({
        "n": c.n,
        "class_minus": lpoly(&c.class_minus),
        "class_plus": lpoly(&c.class_plus),
        "base_difference": lpoly(&c.base_difference),
        "flag_minus": lpoly(&c.flag_minus),
        "flag_plus": lpoly(&c.flag_plus),
        "hyperplane_minus": relation(&c.hyperplane_minus),
        "hyperplane_plus": relation(&c.hyperplane_plus),
        "conclusion": relation(&c.conclusion),
        "conclusion_text": conclusion_text(c),
        "verified": c.verified,
    })
}

pub fn middle(m: &MiddleDecomposition) -> Value {
    let summands: Vec<Value> = m
        .summands
        .iter()
        .map(|s| json!({ "degree": s.degree, "rank": s.rank.to_string() }))
        .collect();
    json!({
        "n": m.n,
        "d": m.d,
        "r": m.r,
        "dim_y": m.dim_y,
        "dim_m": m.dim_m,
        "summands": summands,
        "all_vanish": m.all_vanish,
        "conclusion": m.conclusion,
        "flags": m.flags,
    })
}

pub fn schur_expansion(e: &SchurExpansion) -> Value {
    let terms: Vec<Value> = e
        .sorted_terms()
        .into_iter()
        .map(|(mu, c)| json!({ "mu": partition(mu), "coeff": c.to_string() }))
        .collect();
    json!({ "nvars": e.nvars, "terms": terms })
}

pub fn witness(w: Option<&Witness>) -> Value {
    match w {
        Some(w) => json!({
            "found": true,
            "lambda": partition(&w.lambda),
            "k": w.k,
            "multiplicity": w.multiplicity.to_string(),
        }),
        None => json!({ "found": false }),
    }
}

pub fn gap(n: usize, g: &DimensionGap) -> Value {
    json!({
        "n": n,
        "flag_dim": g.flag_dim.to_string(),
        "group_dim": g.group_dim.to_string(),
        "gap_holds": g.gap_holds,
    })
}

pub fn probe(r: &ProbeReport) -> Value {
    json!({ "n": r.n, "trials": r.trials, "seed": r.seed, "incidences": r.incidences })
}

pub fn rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn matrix(m: &ExactMatrix) -> Value {
    let rows: Vec<Vec<String>> = m
        .to_rows()
        .iter()
        .map(|r| r.iter().map(rational).collect())
        .collect();
    json!(rows)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("matrix must be a JSON array of rows")]
    NotRows,
    #[error("entry ({0}, {1}) is not a rational: {2}")]
    BadEntry(usize, usize, String),
    #[error("entry ({0}, {1}) has a zero denominator")]
    ZeroDenominator(usize, usize),
    #[error(transparent)]
    Shape(#[from] roofcalc_core::Error),
}

fn parse_rational(v: &Value) -> Option<Result<BigRational, ()>> {
    let text = match v {
        Value::String(s) => s.trim().to_string(),
        Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
        _ => return None,
    };
    let (num, den) = match text.split_once('/') {
        Some((a, b)) => (
            a.trim().parse::<BigInt>().ok()?,
            b.trim().parse::<BigInt>().ok()?,
        ),
        None => (text.parse::<BigInt>().ok()?, BigInt::one()),
    };
    if den.is_zero() {
        return Some(Err(()));
    }
    Some(Ok(BigRational::new(num, den)))
}

/// Reads `[["1", "1/2"], ["0", 3]]`. Integers may be JSON numbers.
pub fn parse_matrix(v: &Value) -> Result<ExactMatrix, MatrixError> {
    let rows = v.as_array().ok_or(MatrixError::NotRows)?;
    let mut out = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_array().ok_or(MatrixError::NotRows)?;
        let mut r = Vec::with_capacity(row.len());
        for (j, e) in row.iter().enumerate() {
            match parse_rational(e) {
                Some(Ok(q)) => r.push(q),
                Some(Err(())) => return Err(MatrixError::ZeroDenominator(i, j)),
                None => return Err(MatrixError::BadEntry(i, j, e.to_string())),
            }
        }
        out.push(r);
    }
    Ok(ExactMatrix::from_rows(out)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use roofcalc_core::bwb::cohomology;

    #[test]
    fn cohomology_shapes() {
        let z = BundleFactor::line(3, -1).unwrap();
        assert_eq!(
            cohomology_result(&cohomology(&z)),
            json!({ "result": "zero" })
        );
        let o1 = BundleFactor::line(2, 1).unwrap();
        assert_eq!(
            cohomology_result(&cohomology(&o1)),
            json!({ "degree": 0, "dominant": [1, 1, 0, 0, 0], "dim": "10" })
        );
    }

    #[test]
    fn matrix_round_trip() {
        let v = json!([["1", "-1/2"], [3, "4/6"]]);
        let m = parse_matrix(&v).unwrap();
        assert_eq!(matrix(&m), json!([["1", "-1/2"], ["3", "2/3"]]));
        assert_eq!(
            parse_matrix(&json!([["1/0"]])),
            Err(MatrixError::ZeroDenominator(0, 0))
        );
        assert!(matches!(
            parse_matrix(&json!([["x"]])),
            Err(MatrixError::BadEntry(0, 0, _))
        ));
        assert_eq!(parse_matrix(&json!({})), Err(MatrixError::NotRows));
        assert!(matches!(
            parse_matrix(&json!([["1", "2"], ["3"]])),
            Err(MatrixError::Shape(_))
        ));
    }

    #[test]
    fn schema_tag() {
        assert_eq!(
            with_schema(json!({ "a": 1 })),
            json!({ "a": 1, "schema": 1 })
        );
    }
}
