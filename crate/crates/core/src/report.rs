//! Machine-readable reports of surgery operations.

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::format::{JsonInt, ManifoldFile};
use crate::lattice::LatticeVector;
use crate::manifold::{BasicClass, FourManifold, SurfaceEmbedding};
use crate::surgery::{self, BasisRole, GluedLatticePresentation, UndeterminedPair};

pub const BLOW_UP_CONVENTION: &str =
    "blow-up convention: both K+E and K-E inherit the SW value of K";
pub const FIBER_TOTAL_CONVENTION: &str =
    "fiber-total convention: each glued class carries the product sw(k1)*sw(k2), the total over its gluing fiber";

#[derive(Debug, Clone, Serialize)]
pub struct InputDigest {
    pub label: String,
    pub sha256: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProvenanceRow {
    pub index: usize,
    pub role: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct AuditRow {
    pub coords: Vec<JsonInt>,
    pub sw: JsonInt,
    pub characteristic: bool,
    pub square_condition: bool,
    pub dot_sigma: Option<JsonInt>,
    pub surface_bound: Option<bool>,
}

impl AuditRow {
    pub fn passes(&self) -> bool {
        self.characteristic && self.square_condition && self.surface_bound.unwrap_or(true)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct UndeterminedRow {
    pub index1: usize,
    pub index2: usize,
    pub class1: Vec<JsonInt>,
    pub class2: Vec<JsonInt>,
    pub dot_sigma: JsonInt,
    pub reason: &'static str,
}

impl From<&UndeterminedPair> for UndeterminedRow {
    fn from(p: &UndeterminedPair) -> Self {
        UndeterminedRow {
            index1: p.index1,
            index2: p.index2,
            class1: to_json(&p.class1.k),
            class2: to_json(&p.class2.k),
            dot_sigma: JsonInt(p.dot_sigma.clone()),
            reason: UndeterminedPair::REASON,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SurgeryReport {
    pub operation: String,
    pub input_digests: Vec<InputDigest>,
    pub output: serde_json::Value,
    pub provenance: Vec<ProvenanceRow>,
    pub audit: Vec<AuditRow>,
    pub undetermined: Vec<UndeterminedRow>,
    pub conventions: Vec<String>,
}

fn to_json(v: &LatticeVector) -> Vec<JsonInt> {
    v.coords().iter().cloned().map(JsonInt).collect()
}

/// Audit of one class; the surface, when given, must be normalized.
pub fn audit_class(
    x: &FourManifold,
    class: &BasicClass,
    surface: Option<&SurfaceEmbedding>,
    presentation: Option<&GluedLatticePresentation>,
) -> Result<AuditRow> {
    let l = &x.lattice;
    let characteristic = l.is_characteristic(&class.k)?;
    let square_condition = l.square(&class.k)? == x.canonical_square();
    let (dot_sigma, surface_bound) = match surface {
        Some(s) if l.square(&s.surface_class)? == BigInt::from(0) => {
            let dot = l.pair(&class.k, &s.surface_class)?;
            (Some(JsonInt(dot)), Some(surgery::surface_bound_filter(l, s, &class.k, presentation)?))
        }
        Some(s) => (Some(JsonInt(l.pair(&class.k, &s.surface_class)?)), None),
        None => (None, None),
    };
    Ok(AuditRow {
        coords: to_json(&class.k),
        sw: JsonInt(class.sw.clone()),
        characteristic,
        square_condition,
        dot_sigma,
        surface_bound,
    })
}

impl SurgeryReport {
    /// Report for a blow-up (possibly repeated, possibly on a surface).
    pub fn for_blow_up(
        input: &ManifoldFile,
        output: &ManifoldFile,
        surface: Option<&SurfaceEmbedding>,
    ) -> Result<Self> {
        let old = input.manifold.b2();
        let new = output.manifold.b2();
        let provenance = (0..new)
            .map(|i| {
                let role = if i < old { BasisRole::Inherited(i) } else { BasisRole::Exceptional(i - old) };
                ProvenanceRow { index: i, role: role.to_string() }
            })
            .collect();
        let audit = output
            .manifold
            .basic_classes
            .iter()
            .map(|c| audit_class(&output.manifold, c, surface, None))
            .collect::<Result<Vec<_>>>()?;
        let report = SurgeryReport {
            operation: "blowup".into(),
            input_digests: vec![InputDigest { label: input.manifold.name.clone(), sha256: input.digest() }],
            output: output.to_json_value(),
            provenance,
            audit,
            undetermined: Vec::new(),
            conventions: vec![BLOW_UP_CONVENTION.into()],
        };
        report.ensure_passing()?;
        Ok(report)
    }

    pub fn for_fiber_sum(
        inputs: [&ManifoldFile; 2],
        result: &surgery::FiberSum,
        output: &ManifoldFile,
        normalizing_blow_ups: [usize; 2],
    ) -> Result<Self> {
        let provenance = result
            .presentation
            .roles
            .iter()
            .enumerate()
            .map(|(index, role)| ProvenanceRow { index, role: role.to_string() })
            .collect();
        let audit = result
            .manifold
            .basic_classes
            .iter()
            .map(|c| audit_class(&result.manifold, c, Some(&result.surface), Some(&result.presentation)))
            .collect::<Result<Vec<_>>>()?;
        let mut conventions = vec![FIBER_TOTAL_CONVENTION.to_string()];
        if normalizing_blow_ups.iter().any(|&n| n > 0) {
            conventions.push(format!(
                "surfaces normalized by {} and {} blow-ups; {BLOW_UP_CONVENTION}",
                normalizing_blow_ups[0], normalizing_blow_ups[1]
            ));
        }
        let report = SurgeryReport {
            operation: "fibersum".into(),
            input_digests: inputs
                .iter()
                .map(|f| InputDigest { label: f.manifold.name.clone(), sha256: f.digest() })
                .collect(),
            output: output.to_json_value(),
            provenance,
            audit,
            undetermined: result.undetermined.iter().map(UndeterminedRow::from).collect(),
            conventions,
        };
        report.ensure_passing()?;
        Ok(report)
    }

    /// Fails unless every audit row passes.
    pub fn ensure_passing(&self) -> Result<()> {
        match self.audit.iter().position(|r| !r.passes()) {
            None => Ok(()),
            Some(i) => Err(Error::Inconsistency(format!("audit row {i} of the {} report fails", self.operation))),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
