//! JSON documents for curves, diagrams and transforms, and number
//! formatting for CSV output.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::boundary::{BoundaryCurve, CurveKind};
use crate::diagram::{BarType, DimDiagram, ExtendedDiagram, Interval};
use crate::error::{Error, Result};
use crate::geometry::Direction;
use crate::transform::Xpht;

#[derive(Serialize, Deserialize)]
struct CurveDoc {
    kind: CurveKind,
    component: usize,
    vertices: Vec<[f64; 2]>,
}

#[derive(Serialize, Deserialize)]
struct CurvesDoc {
    curves: Vec<CurveDoc>,
}

#[derive(Serialize, Deserialize, Default)]
struct DimDoc {
    ord: Vec<[f64; 2]>,
    rel: Vec<[f64; 2]>,
    ess_pos: Vec<[f64; 2]>,
    ess_neg: Vec<[f64; 2]>,
}

#[derive(Serialize, Deserialize)]
struct DiagramDoc {
    direction: [f64; 2],
    dims: BTreeMap<String, DimDoc>,
}

#[derive(Serialize, Deserialize)]
struct TransformDoc {
    #[serde(rename = "K")]
    count: usize,
    translation: [f64; 2],
    #[serde(default)]
    centered: bool,
    diagrams: Vec<DiagramDoc>,
}

fn parse_err(e: serde_json::Error) -> Error {
    Error::Decode(e.to_string())
}

pub fn curves_to_json(curves: &[BoundaryCurve]) -> String {
    let doc = CurvesDoc {
        curves: curves
            .iter()
            .map(|c| CurveDoc { kind: c.kind, component: c.component, vertices: c.vertices.clone() })
            .collect(),
    };
    serde_json::to_string(&doc).expect("curves serialize")
}

pub fn curves_from_json(text: &str) -> Result<Vec<BoundaryCurve>> {
    let doc: CurvesDoc = serde_json::from_str(text).map_err(parse_err)?;
    Ok(doc
        .curves
        .into_iter()
        .map(|c| BoundaryCurve { vertices: c.vertices, kind: c.kind, component: c.component })
        .collect())
}

fn dim_doc(d: &DimDiagram) -> DimDoc {
    let pairs = |ty| d.bars(ty).iter().map(|i: &Interval| [i.birth.value, i.death.value]).collect();
    DimDoc {
        ord: pairs(BarType::Ord),
        rel: pairs(BarType::Rel),
        ess_pos: pairs(BarType::EssPos),
        ess_neg: pairs(BarType::EssNeg),
    }
}

fn dim_from_doc(doc: &DimDoc) -> DimDiagram {
    let bars = |pairs: &[[f64; 2]], make: fn(f64, f64) -> Interval| pairs.iter().map(|p| make(p[0], p[1])).collect();
    DimDiagram {
        ord: bars(&doc.ord, Interval::ord),
        rel: bars(&doc.rel, Interval::rel),
        ess_pos: bars(&doc.ess_pos, Interval::ess),
        ess_neg: bars(&doc.ess_neg, Interval::ess),
    }
}

fn diagram_doc(v: Direction, d: &ExtendedDiagram) -> DiagramDoc {
    let dims = (0..2).map(|k| (k.to_string(), dim_doc(d.dim(k)))).collect();
    DiagramDoc { direction: v.components(), dims }
}

fn diagram_from_doc(doc: &DiagramDoc) -> Result<(Direction, ExtendedDiagram)> {
    let v = Direction::new(doc.direction[0], doc.direction[1])?;
    let mut diagram = ExtendedDiagram::default();
    for (key, dim) in &doc.dims {
        let k: usize = match key.as_str() {
            "0" => 0,
            "1" => 1,
            other => return Err(Error::InvalidDiagram(format!("unknown dimension {other:?}"))),
        };
        diagram.dims[k] = dim_from_doc(dim);
    }
    Ok((v, diagram))
}

/// Diagram document: `{"direction":[vx,vy],"dims":{"0":{...},"1":{...}}}`.
/// Each bar is `[birth_value, death_value]`; phases follow from its list.
pub fn diagram_to_json(v: Direction, diagram: &ExtendedDiagram) -> String {
    serde_json::to_string(&diagram_doc(v, diagram)).expect("diagram serialize")
}

pub fn diagram_from_json(text: &str) -> Result<(Direction, ExtendedDiagram)> {
    diagram_from_doc(&serde_json::from_str(text).map_err(parse_err)?)
}

/// Transform document: `{"K":..,"translation":[a,b],"centered":..,"diagrams":[..]}`.
pub fn xpht_to_json(x: &Xpht) -> String {
    let doc = TransformDoc {
        count: x.len(),
        translation: x.translation,
        centered: x.centered,
        diagrams: x.directions.iter().zip(&x.diagrams).map(|(&v, d)| diagram_doc(v, d)).collect(),
    };
    serde_json::to_string(&doc).expect("transform serialize")
}

pub fn xpht_from_json(text: &str, source: &str) -> Result<Xpht> {
    let doc: TransformDoc = serde_json::from_str(text).map_err(parse_err)?;
    if doc.count != doc.diagrams.len() {
        return Err(Error::Incompatible(format!("K = {} but {} diagrams", doc.count, doc.diagrams.len())));
    }
    let (directions, diagrams) =
        doc.diagrams.iter().map(diagram_from_doc).collect::<Result<Vec<_>>>()?.into_iter().unzip();
    Ok(Xpht {
        directions,
        diagrams,
        source: source.to_string(),
        centered: doc.centered,
        translation: doc.translation,
        filtration_passes: 0,
    })
}

/// `x` with `digits` significant digits, in the style of C's `%.{digits}g`.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", trim_zeros(mantissa), sign, exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
