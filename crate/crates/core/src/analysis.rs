//! One report per map: certificates, separation, obstruction, and the
//! exit status derived from them.

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::obstruction::{obstruction_report_in, partial_obstruction_report, ObstructionReport};
use crate::separation::{
    certificates, image_homology_identity_in, separation_report_in, small_self_intersection_in, Certificates,
    Codim1Setting, ImageHomologyRecord, SeparationReport, SmallIntersectionRecord,
};
use crate::simmap::SimplicialMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SelfIntersectionSummary {
    #[serde(rename = "dim_A")]
    pub dim_a: i64,
    #[serde(rename = "dim_B")]
    pub dim_b: i64,
    pub is_embedding: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Refused,
    Precondition,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub map: String,
    pub domain: String,
    pub codomain: String,
    pub subdivisions: usize,
    pub certificates: Certificates,
    pub self_intersection: Option<SelfIntersectionSummary>,
    pub separation: Option<SeparationReport>,
    pub obstruction: ObstructionReport,
    pub small_self_intersection: Option<SmallIntersectionRecord>,
    pub image_homology_identity: Option<ImageHomologyRecord>,
    pub status: Status,
    /// The failing hypothesis, or the failed precondition.
    pub refusal: Option<String>,
    pub exit_code: i32,
}

impl AnalysisReport {
    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("serializable")
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("serializable");
        out.push('\n');
        out
    }
}

/// `k` barycentric subdivisions of the map and both complexes.
pub fn subdivided(f: &SimplicialMap, k: usize) -> Result<SimplicialMap> {
    let mut g = f.clone();
    for _ in 0..k {
        g = g.subdivide()?;
    }
    Ok(g)
}

/// Analyses `f` after `subdivisions` barycentric subdivisions.
///
/// Hypothesis refusals and failed preconditions are part of the report
/// (exit code 1); failed assertions and bad input are errors.
pub fn analyze(f: &SimplicialMap, subdivisions: usize) -> Result<AnalysisReport> {
    let g = subdivided(f, subdivisions)?;
    let certs = certificates(&g);
    let base = |obstruction, status, refusal: Option<String>| AnalysisReport {
        map: g.name().to_owned(),
        domain: g.domain().name().to_owned(),
        codomain: g.codomain().name().to_owned(),
        subdivisions,
        certificates: certs.clone(),
        self_intersection: None,
        separation: None,
        obstruction,
        small_self_intersection: None,
        image_homology_identity: None,
        status,
        refusal,
        exit_code: if status == Status::Ok { 0 } else { 1 },
    };
    let setting = match Codim1Setting::with_certificates(&g, &certs) {
        Ok(s) => s,
        Err(Error::Precondition(msg)) => {
            let obstruction = partial_obstruction_report(&g, &msg)?;
            return Ok(base(obstruction, Status::Precondition, Some(msg)));
        }
        Err(e) => return Err(e),
    };
    let separation = separation_report_in(&setting)?;
    if separation.agreement == Some(false) {
        return Err(Error::assertion(format!(
            "{}: formula gives {:?} components, oracle {}",
            g.name(),
            separation.beta0_formula,
            separation.beta0_oracle
        )));
    }
    let obstruction = obstruction_report_in(&setting)?;
    let h1_zero = setting.h1_codomain == 0;
    let small_self_intersection = if h1_zero { Some(small_self_intersection_in(&setting)?) } else { None };
    let image_homology_identity = if h1_zero { Some(image_homology_identity_in(&setting)?) } else { None };
    if let Some(r) = image_homology_identity {
        if !r.holds {
            return Err(Error::assertion(format!(
                "{}: β₀ = {} but dim H^n(f(X)) = {}",
                g.name(),
                r.beta0_oracle,
                r.dim_hn_image
            )));
        }
    }
    let refusal = separation.refusal().map(str::to_owned);
    let status = if refusal.is_some() { Status::Refused } else { Status::Ok };
    let si = &setting.self_intersection;
    Ok(AnalysisReport {
        self_intersection: Some(SelfIntersectionSummary {
            dim_a: si.a.signed_dim(),
            dim_b: si.b.signed_dim(),
            is_embedding: si.is_embedding,
        }),
        separation: Some(separation),
        small_self_intersection,
        image_homology_identity,
        ..base(obstruction, status, refusal)
    })
}
