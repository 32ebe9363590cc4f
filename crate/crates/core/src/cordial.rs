//! The cordiality predicate `ℓ(x) - ℓ(η(x)) = ⟨2ρ, ν_x⟩ - def(b_x)` and the
//! family classifiers built on it, evaluated by two independent methods
//! that must agree wherever both apply:
//!
//! - the definition oracle, which computes `ν_x` by brute force over the
//!   Bruhat lower set, and
//! - the superregular graph criterion `d_Γ(w⁻¹v, v) = ℓ(v⁻¹wv)`.
//!
//! The inequality `lhs ≤ rhs` is checked on every evaluation; a violation
//! anywhere is an error rather than a report, since it can only mean a bug.

use num_rational::Rational64;
use serde::Serialize;
use thiserror::Error;

use crate::affine::{AffineElement, AffineGroup, DominantDecomposition};
use crate::newton::{
    defect_with_kottwitz, generic_newton_qbg, Defect, NewtonError, NewtonPoint,
    SigmaClassInvariants,
};
use crate::qbg::QuantumBruhatGraph;
use crate::rootsys::Coweight;
use crate::weyl::WeylElement;

#[derive(Debug, Error)]
pub enum CordialError {
    #[error(transparent)]
    Newton(#[from] NewtonError),
    #[error(
        "cordiality inequality violated: ℓ(x) - ℓ(η(x)) = {lhs} > {rhs} = ⟨2ρ,ν_x⟩ - def; \
         this indicates a bug"
    )]
    InequalityViolated { lhs: i64, rhs: Rational64 },
    #[error(
        "graph criterion ({graph}) and length comparison ({lengths}) disagree on {element}; \
         this indicates a bug"
    )]
    EtaPathMismatch {
        element: String,
        graph: bool,
        lengths: bool,
    },
    #[error(
        "definition oracle says {oracle:?} but the graph criterion says {graph:?} on {element}"
    )]
    MethodDisagreement {
        element: String,
        oracle: Verdict,
        graph: Verdict,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Cordial,
    NotCordial,
    Indeterminate,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Cordial => write!(f, "true"),
            Verdict::NotCordial => write!(f, "false"),
            Verdict::Indeterminate => write!(f, "indeterminate"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Method {
    #[serde(rename = "oracle")]
    DefinitionOracle,
    #[serde(rename = "qbg")]
    QbgSuperregular,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Method::DefinitionOracle => write!(f, "oracle"),
            Method::QbgSuperregular => write!(f, "qbg"),
        }
    }
}

/// Membership in the classified families of cordial elements. The families
/// may overlap; an element may also be cordial without lying in any.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Families {
    /// Canonical `v = w0`.
    pub antidominant: bool,
    /// `η(x)` is a standard parabolic Coxeter element.
    pub spc_eta: bool,
    /// Canonical `v = 1` and `w` is small-height-avoiding.
    pub dominant_sha: bool,
}

impl Families {
    pub fn is_empty(&self) -> bool {
        !(self.antidominant || self.spc_eta || self.dominant_sha)
    }

    pub fn labels(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.antidominant {
            out.push("antidominant");
        }
        if self.spc_eta {
            out.push("spc-eta");
        }
        if self.dominant_sha {
            out.push("dominant-sha");
        }
        out
    }
}

impl std::fmt::Display for Families {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_empty() {
            write!(f, "none")
        } else {
            write!(f, "{}", self.labels().join(";"))
        }
    }
}

/// Everything one evaluation of the predicate produced.
#[derive(Debug, Clone)]
pub struct CordialityReport {
    pub element: AffineElement,
    pub decomposition: DominantDecomposition,
    pub verdict: Verdict,
    pub method: Method,
    /// `ℓ(x) - ℓ(η(x))`.
    pub lhs: i64,
    /// `⟨2ρ, ν_x⟩ - def(b_x)`, when the defect is determinate.
    pub rhs: Option<Rational64>,
    pub nu_x: Option<NewtonPoint>,
    pub defect: Defect,
    pub families: Families,
    pub superregular: bool,
    /// Reason for an indeterminate verdict.
    pub note: Option<String>,
}

/// Evaluation context: the affine group, the validated graph, the lower-set
/// bound for the oracle, and the inclusive superregularity threshold for
/// the graph route.
pub struct CordialityChecker<'a> {
    pub affine: &'a AffineGroup,
    pub qbg: &'a QuantumBruhatGraph,
    pub lower_set_bound: u32,
    pub min_pairing: i64,
}

impl<'a> CordialityChecker<'a> {
    pub fn new(affine: &'a AffineGroup, qbg: &'a QuantumBruhatGraph) -> Self {
        let name = affine.weyl().root_system().name().to_string();
        CordialityChecker {
            affine,
            qbg,
            lower_set_bound: crate::newton::DEFAULT_LOWER_SET_BOUND,
            min_pairing: crate::newton::default_min_pairing(&name),
        }
    }

    pub fn classify_family(&self, x: &AffineElement) -> Families {
        let weyl = self.affine.weyl();
        let d = self.affine.decompose_dominant(x);
        let eta = self.affine.eta(x);
        Families {
            antidominant: d.v == weyl.longest_element(),
            spc_eta: weyl.is_standard_parabolic_coxeter(eta),
            dominant_sha: d.v == weyl.identity() && weyl.is_small_height_avoiding(d.w),
        }
    }

    pub fn is_superregular(&self, lambda: &Coweight) -> bool {
        self.affine.weyl().root_system().min_simple_pairing(lambda)
            >= Rational64::from_integer(self.min_pairing)
    }

    pub fn is_cordial(
        &self,
        x: &AffineElement,
        method: Method,
    ) -> Result<CordialityReport, CordialError> {
        match method {
            Method::DefinitionOracle => self.by_oracle(x),
            Method::QbgSuperregular => self.by_graph(x),
        }
    }

    /// Evaluate by both methods and insist they agree; returns the oracle
    /// report (which carries the Newton point and defect).
    pub fn is_cordial_both(&self, x: &AffineElement) -> Result<CordialityReport, CordialError> {
        let oracle = self.by_oracle(x)?;
        let graph = self.by_graph(x)?;
        if oracle.verdict != graph.verdict {
            return Err(CordialError::MethodDisagreement {
                element: self.describe(x),
                oracle: oracle.verdict,
                graph: graph.verdict,
            });
        }
        Ok(oracle)
    }

    fn describe(&self, x: &AffineElement) -> String {
        let weyl = self.affine.weyl();
        format!("t^{}·{}", x.translation, weyl.format_element(x.finite))
    }

    fn by_oracle(&self, x: &AffineElement) -> Result<CordialityReport, CordialError> {
        let weyl = self.affine.weyl();
        let rs = weyl.root_system();
        let d = self.affine.decompose_dominant(x);
        let eta = self.affine.eta(x);
        let lhs = self.affine.length(x) as i64 - weyl.length(eta) as i64;
        let inv = SigmaClassInvariants::generic_of(self.affine, x, self.lower_set_bound)?;
        let families = self.classify_family(x);
        let superregular = self.is_superregular(&d.lambda);
        match inv.defect {
            Defect::Known(def) => {
                let rhs = rs.two_rho_pair_coweight(inv.newton.coweight())
                    - Rational64::from_integer(def as i64);
                if Rational64::from_integer(lhs) > rhs {
                    return Err(CordialError::InequalityViolated { lhs, rhs });
                }
                let verdict = if Rational64::from_integer(lhs) == rhs {
                    Verdict::Cordial
                } else {
                    Verdict::NotCordial
                };
                Ok(CordialityReport {
                    element: x.clone(),
                    decomposition: d,
                    verdict,
                    method: Method::DefinitionOracle,
                    lhs,
                    rhs: Some(rhs),
                    nu_x: Some(inv.newton),
                    defect: inv.defect,
                    families,
                    superregular,
                    note: None,
                })
            }
            Defect::Indeterminate => Ok(CordialityReport {
                element: x.clone(),
                decomposition: d,
                verdict: Verdict::Indeterminate,
                method: Method::DefinitionOracle,
                lhs,
                rhs: None,
                nu_x: Some(inv.newton),
                defect: Defect::Indeterminate,
                families,
                superregular,
                note: Some(
                    "defect of a non-integral Newton point outside type A is indeterminate"
                        .to_string(),
                ),
            }),
        }
    }

    fn by_graph(&self, x: &AffineElement) -> Result<CordialityReport, CordialError> {
        let weyl = self.affine.weyl();
        let rs = weyl.root_system();
        let d = self.affine.decompose_dominant(x);
        let eta = self.affine.eta(x);
        let lhs = self.affine.length(x) as i64 - weyl.length(eta) as i64;
        let nu = generic_newton_qbg(self.affine, self.qbg, x, self.min_pairing, false)?;
        // Superregular λ makes ν_x a lattice point in the Kottwitz class of
        // x, so this is the class of an integral translation and the defect
        // vanishes.
        let def = defect_with_kottwitz(rs, &self.affine.kottwitz(x), &nu);
        let Defect::Known(dval) = def else {
            return Err(CordialError::Newton(NewtonError::IndeterminateDefect));
        };
        let rhs = rs.two_rho_pair_coweight(nu.coweight()) - Rational64::from_integer(dval as i64);
        if Rational64::from_integer(lhs) > rhs {
            return Err(CordialError::InequalityViolated { lhs, rhs });
        }
        let from = weyl.multiply(weyl.inverse(d.w), d.v);
        let by_graph = self.qbg.distance(from, d.v) == weyl.length(eta);
        let by_lengths = Rational64::from_integer(lhs) == rhs;
        if by_graph != by_lengths {
            return Err(CordialError::EtaPathMismatch {
                element: self.describe(x),
                graph: by_graph,
                lengths: by_lengths,
            });
        }
        Ok(CordialityReport {
            element: x.clone(),
            decomposition: d,
            verdict: if by_graph {
                Verdict::Cordial
            } else {
                Verdict::NotCordial
            },
            method: Method::QbgSuperregular,
            lhs,
            rhs: Some(rhs),
            nu_x: Some(nu),
            defect: def,
            families: self.classify_family(x),
            superregular: true,
            note: None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SurveyMethod {
    Oracle,
    Qbg,
    Both,
}

/// Inputs to a survey run. `vs`/`ws` default to the whole group.
pub struct SurveyRequest {
    pub lambdas: Vec<Coweight>,
    pub vs: Option<Vec<WeylElement>>,
    pub ws: Option<Vec<WeylElement>>,
    pub method: SurveyMethod,
}

/// One row of survey output; all provenance included so the table is
/// self-describing. Rows that fail to evaluate keep their position with
/// `cordial = "error"`; the reason is carried by `error` (present in the
/// JSON form, not in the fixed-column CSV).
#[derive(Debug, Clone, Serialize)]
pub struct SurveyRow {
    pub group: String,
    pub lattice: String,
    pub v: String,
    pub w: String,
    pub lambda: String,
    pub length_x: u32,
    pub eta: String,
    pub length_eta: u32,
    pub nu_x: Option<String>,
    pub defect: String,
    pub lhs: i64,
    pub rhs: Option<String>,
    pub cordial: String,
    pub families: String,
    pub method: String,
    pub min_pairing: i64,
    pub error: Option<String>,
}

pub fn survey(checker: &CordialityChecker<'_>, request: &SurveyRequest) -> Vec<SurveyRow> {
    let weyl = checker.affine.weyl();
    let rs = weyl.root_system();
    let all: Vec<WeylElement> = weyl.elements().collect();
    let vs = request.vs.clone().unwrap_or_else(|| all.clone());
    let ws = request.ws.clone().unwrap_or_else(|| all.clone());
    let mut rows = Vec::with_capacity(vs.len() * ws.len() * request.lambdas.len());
    for &v in &vs {
        for &w in &ws {
            for lambda in &request.lambdas {
                let mu = weyl.act_on_coweight(v, lambda);
                let x = AffineElement {
                    translation: mu,
                    finite: w,
                };
                let lambda_str = rs
                    .lattice_coords(lambda)
                    .map(|cs| {
                        cs.iter()
                            .map(|c| c.to_string())
                            .collect::<Vec<_>>()
                            .join(",")
                    })
                    .unwrap_or_else(|| lambda.to_string());
                let eta = checker.affine.eta(&x);
                let d = checker.affine.decompose_dominant(&x);
                let mut row = SurveyRow {
                    group: rs.name().to_string(),
                    lattice: rs.lattice().to_string(),
                    v: weyl.format_element(v),
                    w: weyl.format_element(w),
                    lambda: lambda_str,
                    length_x: checker.affine.length(&x),
                    eta: weyl.format_element(eta),
                    length_eta: weyl.length(eta),
                    nu_x: None,
                    defect: String::new(),
                    lhs: checker.affine.length(&x) as i64 - weyl.length(eta) as i64,
                    rhs: None,
                    cordial: "error".to_string(),
                    families: checker.classify_family(&x).to_string(),
                    method: String::new(),
                    min_pairing: checker.min_pairing,
                    error: None,
                };
                let result = match request.method {
                    SurveyMethod::Oracle => checker.is_cordial(&x, Method::DefinitionOracle),
                    SurveyMethod::Qbg => checker.is_cordial(&x, Method::QbgSuperregular),
                    SurveyMethod::Both => {
                        // fall back to whichever method applies when the
                        // other is out of range
                        let superregular = checker.is_superregular(&d.lambda);
                        let in_bound = checker.affine.length(&x) <= checker.lower_set_bound;
                        match (superregular, in_bound) {
                            (true, true) => checker.is_cordial_both(&x),
                            (true, false) => checker.is_cordial(&x, Method::QbgSuperregular),
                            (false, true) => checker.is_cordial(&x, Method::DefinitionOracle),
                            (false, false) => checker.is_cordial(&x, Method::DefinitionOracle),
                        }
                    }
                };
                match result {
                    Ok(report) => {
                        row.nu_x = report.nu_x.as_ref().map(|n| n.to_string());
                        row.defect = report.defect.to_string();
                        row.rhs = report.rhs.as_ref().map(crate::newton::ratio_string);
                        row.cordial = report.verdict.to_string();
                        row.method = report.method.to_string();
                    }
                    Err(e) => {
                        row.error = Some(e.to_string());
                    }
                }
                rows.push(row);
            }
        }
    }
    rows
}

const CSV_HEADER: &str =
    "type,lattice,v,w,lambda,length_x,eta,length_eta,nu_x,defect,lhs,rhs,cordial,families,method,M";

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn survey_to_csv(rows: &[SurveyRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let cells = [
            r.group.clone(),
            r.lattice.clone(),
            r.v.clone(),
            r.w.clone(),
            r.lambda.clone(),
            r.length_x.to_string(),
            r.eta.clone(),
            r.length_eta.to_string(),
            r.nu_x.clone().unwrap_or_else(|| "-".to_string()),
            r.defect.clone(),
            r.lhs.to_string(),
            r.rhs.clone().unwrap_or_else(|| "-".to_string()),
            r.cordial.clone(),
            r.families.clone(),
            r.method.clone(),
            r.min_pairing.to_string(),
        ];
        let line: Vec<String> = cells.iter().map(|c| csv_field(c)).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

pub fn survey_to_json(rows: &[SurveyRow]) -> serde_json::Value {
    serde_json::to_value(rows).expect("rows serialize")
}

/// Counts for a survey footer.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SurveySummary {
    pub rows: usize,
    pub cordial: usize,
    pub not_cordial: usize,
    pub indeterminate: usize,
    pub errors: usize,
    pub in_any_family: usize,
}

pub fn summarize(rows: &[SurveyRow]) -> SurveySummary {
    let mut s = SurveySummary {
        rows: rows.len(),
        ..Default::default()
    };
    for r in rows {
        match r.cordial.as_str() {
            "true" => s.cordial += 1,
            "false" => s.not_cordial += 1,
            "indeterminate" => s.indeterminate += 1,
            _ => {}
        }
        if r.error.is_some() {
            s.errors += 1;
        }
        if r.families != "none" {
            s.in_any_family += 1;
        }
    }
    s
}
