//! Serialisable report payloads. Every rational is written as a
//! numerator/denominator string pair and every collection in a fixed order,
//! so equal results serialise to identical bytes.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::graph::Edge;
use crate::partition::VertexPartition;
use crate::rational::{ExactRational, Rational};
use crate::refinement::SrlResult;
use crate::regularity::PartitionRegularity;
use crate::removal::{CleanResult, RemovalResult};
use crate::roth::{classification_table, unique_triangles_check, RothAuxReport, RothInstance};
use crate::tower::{digit_count, TowerBound};
use crate::triangles::{CountingCertificate, Triangle, TriangleCensus};

pub type ExactValues = BTreeMap<String, ExactRational>;

fn exact(r: &Rational) -> ExactRational {
    ExactRational::from(r)
}

fn parts_of(p: &VertexPartition) -> Vec<Vec<usize>> {
    p.iter().map(|part| part.iter().copied().collect()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularityPayload {
    pub regular: bool,
    pub defect: ExactRational,
    pub threshold: ExactRational,
    /// Ordered pairs of part indices.
    pub irregular_pairs: Vec<(usize, usize)>,
}

impl From<&PartitionRegularity> for RegularityPayload {
    fn from(r: &PartitionRegularity) -> Self {
        RegularityPayload {
            regular: r.regular,
            defect: exact(&r.defect),
            threshold: exact(&r.threshold),
            irregular_pairs: r.irregular.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TowerPayload {
    /// Decimal digits of the bound.
    Exact { value: String, digits: usize },
    TooLarge { digit_limit: usize, steps: u64, total: u64 },
}

impl From<&TowerBound> for TowerPayload {
    fn from(t: &TowerBound) -> Self {
        match t {
            TowerBound::Exact(v) => TowerPayload::Exact { value: v.to_string(), digits: digit_count(v) },
            TowerBound::TooLarge { digit_limit, steps, total } => {
                TowerPayload::TooLarge { digit_limit: *digit_limit, steps: *steps, total: *total }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionPayload {
    pub epsilon: ExactRational,
    pub iterations: u64,
    pub certified: bool,
    pub parts: Vec<Vec<usize>>,
    pub energy_trajectory: Vec<ExactRational>,
    pub part_bound: TowerPayload,
    pub regularity: RegularityPayload,
}

impl From<&SrlResult> for PartitionPayload {
    fn from(r: &SrlResult) -> Self {
        PartitionPayload {
            epsilon: exact(&r.epsilon),
            iterations: r.iterations,
            certified: r.certified,
            parts: parts_of(&r.partition),
            energy_trajectory: r.energy_trajectory.iter().map(exact).collect(),
            part_bound: (&r.part_bound).into(),
            regularity: (&r.regularity).into(),
        }
    }
}

impl PartitionPayload {
    pub fn exact_values(&self) -> ExactValues {
        let mut out = ExactValues::new();
        out.insert("epsilon".into(), self.epsilon.clone());
        out.insert("defect".into(), self.regularity.defect.clone());
        out.insert("threshold".into(), self.regularity.threshold.clone());
        if let Some(last) = self.energy_trajectory.last() {
            out.insert("final_energy".into(), last.clone());
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusPayload {
    pub vertices: usize,
    pub edges: usize,
    pub ordered_triples: usize,
    pub triangle_count: usize,
    pub triangles: Vec<Triangle>,
}

impl CensusPayload {
    pub fn new(vertices: usize, edges: usize, census: &TriangleCensus) -> Self {
        CensusPayload {
            vertices,
            edges,
            ordered_triples: census.ordered_count,
            triangle_count: census.unordered.len(),
            triangles: census.unordered.iter().copied().collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BudgetPayload {
    pub class: String,
    pub removed: usize,
    pub budget: ExactRational,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CleanPayload {
    pub epsilon: ExactRational,
    pub partition_epsilon: ExactRational,
    pub density_floor: ExactRational,
    pub size_floor: ExactRational,
    pub refinement_rounds: u64,
    pub parts: Vec<Vec<usize>>,
    pub removed_irregular: Vec<Edge>,
    pub removed_sparse: Vec<Edge>,
    pub removed_small: Vec<Edge>,
    pub budgets: Vec<BudgetPayload>,
}

impl From<&CleanResult> for CleanPayload {
    fn from(c: &CleanResult) -> Self {
        let names = ["irregular", "sparse", "small_part", "total"];
        CleanPayload {
            epsilon: exact(&c.parameters.epsilon),
            partition_epsilon: exact(&c.parameters.partition_epsilon),
            density_floor: exact(&c.parameters.density_floor),
            size_floor: exact(&c.parameters.size_floor),
            refinement_rounds: c.refinement_rounds,
            parts: parts_of(&c.partition_used),
            removed_irregular: c.removed_irregular.iter().copied().collect(),
            removed_sparse: c.removed_sparse.iter().copied().collect(),
            removed_small: c.removed_small.iter().copied().collect(),
            budgets: c
                .budgets
                .iter()
                .zip(names)
                .map(|(b, name)| BudgetPayload {
                    class: name.into(),
                    removed: b.removed,
                    budget: exact(&b.budget),
                    holds: b.holds(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificatePayload {
    pub epsilon: ExactRational,
    pub regular: [bool; 3],
    pub densities: Vec<ExactRational>,
    pub hypotheses_ok: bool,
    pub bound: ExactRational,
    pub actual: usize,
    pub holds: bool,
}

impl From<&CountingCertificate> for CertificatePayload {
    fn from(c: &CountingCertificate) -> Self {
        CertificatePayload {
            epsilon: exact(&c.epsilon),
            regular: c.regular,
            densities: c.densities.iter().map(exact).collect(),
            hypotheses_ok: c.hypotheses_ok,
            bound: exact(&c.bound),
            actual: c.actual,
            holds: c.holds(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RemovalPayload {
    pub epsilon: ExactRational,
    pub removed: usize,
    pub bound: ExactRational,
    pub within_bound: bool,
    pub original_triangles: usize,
    pub triangle_free: bool,
    pub delta: Option<ExactRational>,
    pub guarantee_applies: bool,
    pub contrapositive_holds: bool,
    pub certificate: Option<CertificatePayload>,
    pub clean: Option<CleanPayload>,
    pub cleaned_edges: usize,
}

impl From<&RemovalResult> for RemovalPayload {
    fn from(r: &RemovalResult) -> Self {
        RemovalPayload {
            epsilon: exact(&r.epsilon),
            removed: r.removed,
            bound: exact(&r.bound),
            within_bound: r.within_bound(),
            original_triangles: r.original_triangles,
            triangle_free: r.triangle_free,
            delta: r.delta.as_ref().map(exact),
            guarantee_applies: r.guarantee_applies(),
            contrapositive_holds: r.contrapositive_holds(),
            certificate: r.certificate.as_ref().map(Into::into),
            clean: r.clean.as_ref().map(Into::into),
            cleaned_edges: r.cleaned.edge_count(),
        }
    }
}

impl RemovalPayload {
    pub fn exact_values(&self) -> ExactValues {
        let mut out = ExactValues::new();
        out.insert("epsilon".into(), self.epsilon.clone());
        out.insert("removal_bound".into(), self.bound.clone());
        if let Some(delta) = &self.delta {
            out.insert("delta".into(), delta.clone());
        }
        if let Some(cert) = &self.certificate {
            out.insert("counting_bound".into(), cert.bound.clone());
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifiedTriangle {
    pub triangle: Triangle,
    /// `(i, a)`, absent for triangles outside the canonical family.
    pub class: Option<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RothPayload {
    pub n: usize,
    pub a: Vec<usize>,
    pub m: usize,
    pub vertices: usize,
    pub edges: usize,
    /// `XY`, `YZ`, `XZ`.
    pub edge_class_sizes: [usize; 3],
    pub triangle_count: usize,
    pub unique_triangles: bool,
    pub progression: Option<(usize, usize)>,
    pub classification: Vec<ClassifiedTriangle>,
}

impl From<&RothInstance> for RothPayload {
    fn from(inst: &RothInstance) -> Self {
        let table = classification_table(inst);
        RothPayload {
            n: inst.n,
            a: inst.a.iter().copied().collect(),
            m: inst.m,
            vertices: inst.graph.vertex_count(),
            edges: inst.graph.edge_count(),
            edge_class_sizes: [0, 1, 2].map(|k| inst.edge_classes[k].len()),
            triangle_count: table.len(),
            unique_triangles: unique_triangles_check(&inst.graph).holds,
            progression: crate::roth::find_progression3(&inst.a),
            classification: table.into_iter().map(|(triangle, class)| ClassifiedTriangle { triangle, class }).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RothAuxPayload {
    pub n: usize,
    pub m: usize,
    pub epsilon: ExactRational,
    pub subsets_checked: usize,
    pub progression_free: usize,
    pub max_progression_free: usize,
    pub witness: Vec<usize>,
    pub eps_n: ExactRational,
    pub max_below_eps_n: bool,
    pub failures: Vec<Vec<usize>>,
}

impl From<&RothAuxReport> for RothAuxPayload {
    fn from(r: &RothAuxReport) -> Self {
        RothAuxPayload {
            n: r.n,
            m: r.m,
            epsilon: exact(&r.epsilon),
            subsets_checked: r.subsets_checked,
            progression_free: r.progression_free,
            max_progression_free: r.max_progression_free,
            witness: r.witness.iter().copied().collect(),
            eps_n: exact(&r.eps_n),
            max_below_eps_n: r.max_below_eps_n,
            failures: r.failures.clone(),
        }
    }
}
