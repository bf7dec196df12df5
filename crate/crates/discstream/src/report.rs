//! Serializable views of core results. Rationals render as `"p/q"`,
//! canonical codes as lowercase hex. Nothing here records wall-clock time,
//! so equal inputs give byte-identical reports.

use std::collections::BTreeMap;

use discstream_core::analysis::lemmas::{ExactLemmaReport, LemmaCheck, LemmaReport};
use discstream_core::analysis::params::{rational_string, Params};
use discstream_core::analysis::reach::{CstReport, McCstReport, Method, ReachEstimate, VAlphaReport};
use discstream_core::analysis::exact::Distribution;
use discstream_core::{canonical_code, Decision, RootedDisc, Verdict, VertexId, Witness};
use num_rational::BigRational;
use serde::Serialize;

pub fn rational(r: &BigRational) -> String {
    rational_string(r)
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct DiscJson {
    pub root: VertexId,
    /// `[vertex, depth]` pairs in vertex order.
    pub depths: Vec<(VertexId, u32)>,
    pub edges: Vec<(VertexId, VertexId)>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub colors: BTreeMap<VertexId, u32>,
    /// Absent when the disc is too large to canonicalize.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub code: Option<String>,
}

impl From<&RootedDisc> for DiscJson {
    fn from(d: &RootedDisc) -> Self {
        DiscJson {
            root: d.root(),
            depths: d.depths().iter().map(|(&v, &l)| (v, l)).collect(),
            edges: d.edges().iter().map(|e| (e.0, e.1)).collect(),
            colors: d.colors().clone(),
            code: canonical_code(d).ok().map(|c| c.to_hex()),
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessJson {
    Path { vertices: Vec<VertexId> },
    Star { center: VertexId, edges: Vec<(VertexId, VertexId)> },
    Embedding { pattern: usize, map: BTreeMap<VertexId, VertexId> },
}

impl From<&Witness> for WitnessJson {
    fn from(w: &Witness) -> Self {
        match w {
            Witness::Path(p) => WitnessJson::Path { vertices: p.clone() },
            Witness::Star { center, edges } => WitnessJson::Star {
                center: *center,
                edges: edges.iter().map(|e| (e.0, e.1)).collect(),
            },
            Witness::Embedding { pattern, map } => WitnessJson::Embedding {
                pattern: *pattern,
                map: map.clone(),
            },
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct TrialRecord {
    pub trial: u64,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order_seed: Option<u64>,
    pub decision: &'static str,
    pub witness: Option<WitnessJson>,
    pub queries: u64,
    pub space_words: u64,
    pub roots: usize,
    pub explored_vertices: usize,
    pub explored_edges: usize,
    pub whole_graph: bool,
}

impl TrialRecord {
    pub fn new(trial: u64, seed: u64, order_seed: Option<u64>, v: &Verdict) -> Self {
        TrialRecord {
            trial,
            seed,
            order_seed,
            decision: match v.decision {
                Decision::Accept => "accept",
                Decision::Reject => "reject",
            },
            witness: v.witness.as_ref().map(WitnessJson::from),
            queries: v.transcript.queries,
            space_words: v.transcript.space_words,
            roots: v.transcript.roots.len(),
            explored_vertices: v.transcript.explored_vertices,
            explored_edges: v.transcript.explored_edges,
            whole_graph: v.transcript.whole_graph,
        }
    }

    pub fn rejected(&self) -> bool {
        self.decision == "reject"
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct TestAggregate {
    pub trials: u64,
    pub rejections: u64,
    pub rejection_frequency: f64,
    /// `reject` when strictly more than half of the trials rejected.
    pub majority: &'static str,
    pub max_queries: u64,
    pub max_space_words: u64,
}

impl TestAggregate {
    pub fn from_records(records: &[TrialRecord]) -> Self {
        let trials = records.len() as u64;
        let rejections = records.iter().filter(|r| r.rejected()).count() as u64;
        TestAggregate {
            trials,
            rejections,
            rejection_frequency: if trials == 0 { 0.0 } else { rejections as f64 / trials as f64 },
            majority: if 2 * rejections > trials { "reject" } else { "accept" },
            max_queries: records.iter().map(|r| r.queries).max().unwrap_or(0),
            max_space_words: records.iter().map(|r| r.space_words).max().unwrap_or(0),
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct ReachJson {
    pub vertex: VertexId,
    pub value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
    pub trials: u64,
    pub stderr: f64,
    pub method: &'static str,
}

impl ReachJson {
    pub fn new(vertex: VertexId, e: &ReachEstimate) -> Self {
        ReachJson {
            vertex,
            value: e.value,
            exact: e.exact.as_ref().map(rational),
            trials: e.trials,
            stderr: e.stderr,
            method: match e.method {
                Method::MonteCarlo => "monte_carlo",
                Method::Exact => "exact",
            },
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct VAlphaJson {
    pub alpha: f64,
    pub members: Vec<(VertexId, f64)>,
    pub estimates: Vec<ReachJson>,
}

impl From<&VAlphaReport> for VAlphaJson {
    fn from(r: &VAlphaReport) -> Self {
        VAlphaJson {
            alpha: r.alpha,
            members: r.members.clone(),
            estimates: r.estimates.iter().map(|(&v, e)| ReachJson::new(v, e)).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct LemmaCheckJson {
    pub name: &'static str,
    pub statement: &'static str,
    pub value: f64,
    pub bound: f64,
    pub slack: f64,
    pub margin: f64,
    pub applicable: bool,
    pub holds: bool,
}

impl From<&LemmaCheck> for LemmaCheckJson {
    fn from(c: &LemmaCheck) -> Self {
        LemmaCheckJson {
            name: c.name,
            statement: c.statement,
            value: c.value,
            bound: c.bound,
            slack: c.slack,
            margin: c.margin,
            applicable: c.applicable,
            holds: c.holds,
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct LemmaReportJson {
    pub q: u32,
    pub alpha: f64,
    pub n: usize,
    pub trials: u64,
    pub v_alpha: VAlphaJson,
    pub checks: Vec<LemmaCheckJson>,
    pub all_passed: bool,
}

impl From<&LemmaReport> for LemmaReportJson {
    fn from(r: &LemmaReport) -> Self {
        LemmaReportJson {
            q: r.q,
            alpha: r.alpha,
            n: r.n,
            trials: r.trials,
            v_alpha: (&r.v_alpha).into(),
            checks: r.checks.iter().map(Into::into).collect(),
            all_passed: r.all_passed(),
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct ExactLemmaJson {
    pub q: u32,
    pub alpha: String,
    pub v_alpha: Vec<VertexId>,
    pub size_bound: String,
    pub size_holds: bool,
    pub degree_floor: String,
    pub degree_violations: Vec<VertexId>,
    pub holds: bool,
}

impl From<&ExactLemmaReport> for ExactLemmaJson {
    fn from(r: &ExactLemmaReport) -> Self {
        ExactLemmaJson {
            q: r.q,
            alpha: rational(&r.alpha),
            v_alpha: r.v_alpha.clone(),
            size_bound: rational(&r.size_bound),
            size_holds: r.size_holds,
            degree_floor: rational(&r.degree_floor),
            degree_violations: r.degree_violations.clone(),
            holds: r.holds(),
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct RootRatioJson {
    pub root: VertexId,
    pub discs_checked: usize,
    pub min_ratio: String,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct CstReportJson {
    pub q: u32,
    pub per_root: Vec<RootRatioJson>,
    pub min_ratio: Option<String>,
    pub support_contained: bool,
}

impl From<&CstReport> for CstReportJson {
    fn from(r: &CstReport) -> Self {
        CstReportJson {
            q: r.q,
            per_root: r
                .per_root
                .iter()
                .map(|x| RootRatioJson {
                    root: x.root,
                    discs_checked: x.discs_checked,
                    min_ratio: rational(&x.min_ratio),
                })
                .collect(),
            min_ratio: r.min_ratio.as_ref().map(rational),
            support_contained: r.support_contained,
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct TypeCheckJson {
    pub code: String,
    pub reach: f64,
    pub mean_q: f64,
    pub success_rate: f64,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct McCstJson {
    pub q: u32,
    pub samples: usize,
    pub delta: f64,
    pub cst: f64,
    pub repetitions: u64,
    pub types: Vec<TypeCheckJson>,
    pub all_types_rate: f64,
}

impl From<&McCstReport> for McCstJson {
    fn from(r: &McCstReport) -> Self {
        McCstJson {
            q: r.q,
            samples: r.samples,
            delta: r.delta,
            cst: r.cst,
            repetitions: r.repetitions,
            types: r
                .types
                .iter()
                .map(|t| TypeCheckJson {
                    code: t.code.to_hex(),
                    reach: t.reach,
                    mean_q: t.mean_q,
                    success_rate: t.success_rate,
                })
                .collect(),
            all_types_rate: r.all_types_rate,
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct ParamsJson {
    pub q: u32,
    pub c_q: String,
    pub q_2q: String,
    pub c_prime_q: String,
    pub hq_size: String,
    pub hq_is_bound: bool,
    pub delta: String,
    pub alpha: String,
    pub cst: String,
    pub s_min: String,
    pub n0: String,
    pub note: &'static str,
}

impl From<&Params> for ParamsJson {
    fn from(p: &Params) -> Self {
        ParamsJson {
            q: p.q,
            c_q: p.c_q.to_string(),
            q_2q: p.q_2q.to_string(),
            c_prime_q: p.c_prime_q.to_string(),
            hq_size: p.hq_size.to_string(),
            hq_is_bound: p.hq_is_bound,
            delta: rational(&p.delta),
            alpha: rational(&p.alpha),
            cst: rational(&p.cst),
            s_min: p.s_min.to_string(),
            n0: rational(&p.n0),
            note: "theoretical values are astronomically large; experiments should use practical overrides",
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct OutcomeJson {
    pub disc: DiscJson,
    pub probability: String,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct TypeMassJson {
    pub code: String,
    pub probability: String,
}

pub fn distribution_json(d: &Distribution) -> Vec<OutcomeJson> {
    d.iter()
        .map(|(disc, p)| OutcomeJson {
            disc: disc.into(),
            probability: rational(p),
        })
        .collect()
}

/// Wraps any payload with the resolved configuration that produced it.
#[derive(Debug, Clone, Serialize)]
pub struct Report<C: Serialize, T: Serialize> {
    pub command: &'static str,
    pub config: C,
    pub result: T,
}

/// CSV summary with one row per trial.
pub fn trials_csv(records: &[TrialRecord]) -> Result<String, csv::Error> {
    #[derive(Serialize)]
    struct Row<'a> {
        trial: u64,
        seed: u64,
        order_seed: Option<u64>,
        decision: &'a str,
        queries: u64,
        space_words: u64,
        roots: usize,
        explored_vertices: usize,
        explored_edges: usize,
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in records {
        w.serialize(Row {
            trial: r.trial,
            seed: r.seed,
            order_seed: r.order_seed,
            decision: r.decision,
            queries: r.queries,
            space_words: r.space_words,
            roots: r.roots,
            explored_vertices: r.explored_vertices,
            explored_edges: r.explored_edges,
        })?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Generic CSV from serializable rows.
pub fn rows_csv<R: Serialize>(rows: &[R]) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use discstream_core::{Edge, Graph};

    #[test]
    fn disc_json_shape() {
        let d = RootedDisc::from_edges(0, [Edge::new(0, 1)].into_iter().collect());
        let j = serde_json::to_value(DiscJson::from(&d)).unwrap();
        assert_eq!(j["root"], 0);
        assert_eq!(j["edges"], serde_json::json!([[0, 1]]));
        assert_eq!(j["depths"], serde_json::json!([[0, 0], [1, 1]]));
        assert!(j["code"].as_str().unwrap().chars().all(|c| c.is_ascii_hexdigit() && !c.is_ascii_uppercase()));
        assert!(j.get("colors").is_none());
    }

    #[test]
    fn rationals_as_strings() {
        let r = BigRational::new(3.into(), 6.into());
        assert_eq!(rational(&r), "1/2");
        let p = discstream_core::analysis::params::theoretical_params(
            2,
            discstream_core::analysis::params::HqSize::Override(10u32.into()),
            None,
        )
        .unwrap();
        let j = ParamsJson::from(&p);
        assert_eq!(j.delta, "1/2000");
        assert_eq!(j.c_prime_q, "4369");
    }

    #[test]
    fn witness_tags() {
        let w = Witness::Path(vec![0, 1, 2]);
        let j = serde_json::to_string(&WitnessJson::from(&w)).unwrap();
        assert_eq!(j, r#"{"kind":"path","vertices":[0,1,2]}"#);
    }

    #[test]
    fn aggregate_majority() {
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        let fam = discstream_core::ForbiddenFamily::pk_free(1).unwrap();
        let p = discstream_core::TesterParams::amplified(1, 3, 4, 0.1, discstream_core::Mode::Neighbor).unwrap();
        let v = discstream_core::stream_test(&discstream_core::random_order(&g, 0), &p, &fam, 0).unwrap();
        let recs = vec![TrialRecord::new(0, 0, Some(0), &v)];
        let agg = TestAggregate::from_records(&recs);
        assert_eq!((agg.rejections, agg.majority), (1, "reject"));
        let csv = trials_csv(&recs).unwrap();
        assert!(csv.starts_with("trial,seed,order_seed,decision"));
    }
}
