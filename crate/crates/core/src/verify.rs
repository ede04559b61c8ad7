//! Catalog of lift, structure and connection identities, checked over
//! seeded random inputs.
//!
//! Each suite draws `3 + cases` inputs: the degenerate shapes (zero,
//! constant, frame) followed by `cases` random ones. Every identity reduces to
//! a list of component pairs that must agree as canonical expressions; each
//! pair is also evaluated at random points, and a mismatch between the two
//! verdicts is reported as an internal-consistency error.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::chart::Chart;
use crate::connection::{
    complete_lift_connection, corrected_connection, covariant_derivative_endo,
    covariant_derivative_vector, nijenhuis_table, q_correction, q_formula, torsion,
    torsion_of_fields, Connection, Table3,
};
use crate::error::GeometryError;
use crate::expr::Expr;
use crate::field::{EndoField, OneForm, ScalarField, VectorField};
use crate::geometry::{
    differential, from_real_frame, lie_bracket, nijenhuis, para_structure, real_frame_components,
};
use crate::lift::{
    clift_endo, clift_oneform, clift_para, clift_scalar, clift_vector, tangent_chart,
    vlift_oneform, vlift_scalar, vlift_vector,
};
use crate::oracle::{Oracle, Verdict};
use crate::random::{case_seed, Generator, Shape};
use crate::split::SplitComplex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CaseSpec {
    pub m: usize,
    pub max_degree: u32,
    pub max_terms: usize,
    pub seed: u64,
    pub cases: usize,
}

impl Default for CaseSpec {
    fn default() -> Self {
        Self {
            m: 1,
            max_degree: 2,
            max_terms: 3,
            seed: 0,
            cases: 25,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("invalid case spec: {0}")]
    InvalidSpec(String),
}

impl CaseSpec {
    pub fn validate(&self) -> Result<(), VerifyError> {
        if self.m < 1 {
            return Err(VerifyError::InvalidSpec("m must be at least 1".into()));
        }
        if self.max_degree < 1 {
            return Err(VerifyError::InvalidSpec("max_degree must be at least 1".into()));
        }
        if self.max_terms < 1 {
            return Err(VerifyError::InvalidSpec("max_terms must be at least 1".into()));
        }
        if self.cases < 1 {
            return Err(VerifyError::InvalidSpec("cases must be at least 1".into()));
        }
        Ok(())
    }

    fn chart(&self) -> Result<Chart, VerifyError> {
        self.validate()?;
        Ok(Chart::base(self.m))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
        })
    }
}

/// A failing case: the first component pair that differs, and a point at
/// which the two sides evaluate differently.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub case: usize,
    pub component: usize,
    pub left: String,
    pub right: String,
    pub assignment: String,
    pub left_value: String,
    pub right_value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityResult {
    pub suite: String,
    pub identity: String,
    pub anchor: String,
    /// Random cases run; the degenerate cases are counted separately.
    pub cases: usize,
    pub degenerate: usize,
    pub comparisons: usize,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub suite: String,
    pub spec: CaseSpec,
    pub results: Vec<IdentityResult>,
    pub notes: Vec<String>,
    pub consistency_failures: usize,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.status == Status::Pass)
    }

    pub fn result(&self, identity: &str) -> Option<&IdentityResult> {
        self.results.iter().find(|r| r.identity == identity)
    }

    /// One JSON record per identity, newline separated.
    pub fn to_machine(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            out.push_str(&serde_json::to_string(r).expect("report serializes"));
            out.push('\n');
        }
        out
    }

    pub fn to_text(&self) -> String {
        let s = &self.spec;
        let mut out = format!(
            "suite {} (m={}, seed={}, cases={} + {} degenerate, max_degree={}, max_terms={})\n",
            self.suite,
            s.m,
            s.seed,
            s.cases,
            Shape::DEGENERATE,
            s.max_degree,
            s.max_terms
        );
        for r in &self.results {
            out.push_str(&format!(
                "  {:<5} {:<28} {}  [{} comparisons]\n",
                r.status.to_string(),
                r.identity,
                r.anchor,
                r.comparisons
            ));
            if let Some(w) = &r.witness {
                out.push_str(&format!(
                    "        case {} component {}: {} != {}\n        at {}: {} != {}\n",
                    w.case, w.component, w.left, w.right, w.assignment, w.left_value, w.right_value
                ));
            }
            if let Some(e) = &r.error {
                out.push_str(&format!("        error: {e}\n"));
            }
        }
        for n in &self.notes {
            out.push_str(&format!("  note: {n}\n"));
        }
        out
    }
}

/// Maps each anchor (a displayed formula) to the identities that check it.
pub fn coverage(reports: &[IdentityReport]) -> BTreeMap<String, Vec<String>> {
    let mut map: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for rep in reports {
        for r in &rep.results {
            map.entry(r.anchor.clone())
                .or_default()
                .push(format!("{}/{}", r.suite, r.identity));
        }
    }
    map
}

pub fn coverage_text(reports: &[IdentityReport]) -> String {
    let mut out = String::from("coverage\n");
    for (anchor, ids) in coverage(reports) {
        out.push_str(&format!("  {anchor}  <-  {}\n", ids.join(", ")));
    }
    out
}

/// Left and right hand sides of one identity, flattened to components.
pub struct Sides {
    lhs: Vec<Expr>,
    rhs: Vec<Expr>,
}

impl Sides {
    pub fn new(lhs: Vec<Expr>, rhs: Vec<Expr>) -> Result<Self, GeometryError> {
        if lhs.len() != rhs.len() {
            return Err(GeometryError::ComponentCount {
                expected: lhs.len(),
                got: rhs.len(),
            });
        }
        Ok(Self { lhs, rhs })
    }

    fn charts(a: Chart, b: Chart) -> Result<(), GeometryError> {
        if a == b {
            Ok(())
        } else {
            Err(GeometryError::ChartMismatch { left: a, right: b })
        }
    }

    pub fn scalars(a: &ScalarField, b: &ScalarField) -> Result<Self, GeometryError> {
        Self::charts(a.chart(), b.chart())?;
        Self::new(vec![a.value().clone()], vec![b.value().clone()])
    }

    pub fn vectors(a: &VectorField, b: &VectorField) -> Result<Self, GeometryError> {
        Self::charts(a.chart(), b.chart())?;
        Self::new(a.components().to_vec(), b.components().to_vec())
    }

    pub fn oneforms(a: &OneForm, b: &OneForm) -> Result<Self, GeometryError> {
        Self::charts(a.chart(), b.chart())?;
        Self::new(a.components().to_vec(), b.components().to_vec())
    }

    pub fn endos(a: &EndoField, b: &EndoField) -> Result<Self, GeometryError> {
        Self::charts(a.chart(), b.chart())?;
        Self::new(a.entries().cloned().collect(), b.entries().cloned().collect())
    }

    pub fn tables(a: &Table3, b: &Table3) -> Result<Self, GeometryError> {
        Self::charts(a.chart(), b.chart())?;
        Self::new(a.values().to_vec(), b.values().to_vec())
    }

    pub fn vanishes(a: Vec<Expr>) -> Self {
        let n = a.len();
        Self {
            lhs: a,
            rhs: vec![Expr::zero(); n],
        }
    }

    pub fn concat(parts: Vec<Sides>) -> Self {
        let mut out = Sides {
            lhs: Vec::new(),
            rhs: Vec::new(),
        };
        for p in parts {
            out.lhs.extend(p.lhs);
            out.rhs.extend(p.rhs);
        }
        out
    }
}

type Check<I> = fn(&I) -> Result<Sides, GeometryError>;

pub struct Identity<I> {
    pub id: &'static str,
    pub anchor: &'static str,
    pub check: Check<I>,
}

enum Outcome {
    Pass(usize),
    Fail(Witness),
    Error(String, bool),
}

fn compare(oracle: &Oracle, case: usize, sides: &Sides) -> Outcome {
    for (i, (l, r)) in sides.lhs.iter().zip(&sides.rhs).enumerate() {
        match oracle.compare(l, r) {
            Ok(Verdict::Equal) => {}
            Ok(Verdict::Differ(point)) => {
                let lv = l.evaluate(&point).map(|v| v.to_string()).unwrap_or_default();
                let rv = r.evaluate(&point).map(|v| v.to_string()).unwrap_or_default();
                return Outcome::Fail(Witness {
                    case,
                    component: i,
                    left: l.to_string(),
                    right: r.to_string(),
                    assignment: point.to_string(),
                    left_value: lv,
                    right_value: rv,
                });
            }
            Err(e) => return Outcome::Error(e.to_string(), true),
        }
    }
    Outcome::Pass(sides.lhs.len())
}

/// Runs every identity on every case. Cases run in parallel; results are
/// assembled in case order, so reports do not depend on scheduling.
pub fn run_suite<I, G>(
    suite: &str,
    spec: &CaseSpec,
    identities: &[Identity<I>],
    generate: G,
) -> Result<IdentityReport, VerifyError>
where
    I: Send,
    G: Fn(&mut Generator, Shape) -> I + Sync,
{
    spec.validate()?;
    let oracle = Oracle::with_seed(spec.seed);
    let total = Shape::DEGENERATE + spec.cases;
    let per_case: Vec<Vec<Outcome>> = (0..total)
        .into_par_iter()
        .map(|k| {
            let mut g = Generator::new(case_seed(spec.seed, suite, k), spec.max_degree, spec.max_terms);
            let input = generate(&mut g, Shape::for_case(k));
            identities
                .iter()
                .map(|id| match (id.check)(&input) {
                    Ok(sides) => compare(&oracle, k, &sides),
                    Err(GeometryError::Consistency(e)) => Outcome::Error(e.to_string(), true),
                    Err(e) => Outcome::Error(format!("case {k}: {e}"), false),
                })
                .collect()
        })
        .collect();

    let mut consistency_failures = 0;
    let results = identities
        .iter()
        .enumerate()
        .map(|(n, id)| {
            let mut comparisons = 0;
            let mut witness = None;
            let mut error = None;
            for outcomes in &per_case {
                match &outcomes[n] {
                    Outcome::Pass(c) => comparisons += c,
                    Outcome::Fail(w) => {
                        if witness.is_none() {
                            witness = Some(w.clone());
                        }
                    }
                    Outcome::Error(e, consistency) => {
                        if *consistency {
                            consistency_failures += 1;
                        }
                        if error.is_none() {
                            error = Some(e.clone());
                        }
                    }
                }
            }
            let status = match (&error, &witness) {
                (Some(_), _) => Status::Error,
                (None, Some(_)) => Status::Fail,
                (None, None) => Status::Pass,
            };
            IdentityResult {
                suite: suite.to_string(),
                identity: id.id.to_string(),
                anchor: id.anchor.to_string(),
                cases: spec.cases,
                degenerate: Shape::DEGENERATE,
                comparisons,
                status,
                witness,
                error,
            }
        })
        .collect();
    Ok(IdentityReport {
        suite: suite.to_string(),
        spec: *spec,
        results,
        notes: Vec::new(),
        consistency_failures,
    })
}

fn tm(c: &Chart) -> Chart {
    Chart::tangent_of(*c)
}

fn scalar_on(chart: Chart, e: Expr) -> ScalarField {
    ScalarField::new(chart, e).expect("expression over chart")
}

// ---------------------------------------------------------------- functions

pub struct FunctionCase {
    pub f: ScalarField,
    pub g: ScalarField,
}

fn product(f: &ScalarField, g: &ScalarField) -> ScalarField {
    scalar_on(f.chart(), f.value() * g.value())
}

fn sum(f: &ScalarField, g: &ScalarField) -> ScalarField {
    scalar_on(f.chart(), f.value() + g.value())
}

pub fn function_identities() -> Vec<Identity<FunctionCase>> {
    vec![
        Identity {
            id: "vertical.product",
            anchor: "(f.g)^v = f^v.g^v",
            check: |c| Sides::scalars(&vlift_scalar(&product(&c.f, &c.g))?, &product(&vlift_scalar(&c.f)?, &vlift_scalar(&c.g)?)),
        },
        Identity {
            id: "vertical.sum",
            anchor: "(f+g)^v = f^v+g^v",
            check: |c| Sides::scalars(&vlift_scalar(&sum(&c.f, &c.g))?, &sum(&vlift_scalar(&c.f)?, &vlift_scalar(&c.g)?)),
        },
        Identity {
            id: "vertical.projection",
            anchor: "f^v = f o tau_M",
            check: |c| {
                let fv = vlift_scalar(&c.f)?;
                let fiber_free = fv.value().symbols().iter().all(|s| !s.kind.is_fiber());
                let lhs = if fiber_free { fv.value().clone() } else { Expr::one() + fv.value().clone() };
                Sides::new(vec![lhs], vec![c.f.value().clone()])
            },
        },
        Identity {
            id: "complete.formula",
            anchor: "f^c = u^a (df/dz^a)^v + ub^a (df/dzb^a)^v",
            check: |c| {
                let base = c.f.chart();
                let df = differential(&c.f);
                let rhs: Expr = df
                    .components()
                    .iter()
                    .enumerate()
                    .map(|(a, d)| &Expr::symbol(base.symbol(a).fiber().expect("base symbol")) * d)
                    .sum();
                Sides::new(vec![clift_scalar(&c.f)?.into_value()], vec![rhs])
            },
        },
        Identity {
            id: "complete.product",
            anchor: "(f.g)^c = f^c.g^v + f^v.g^c",
            check: |c| {
                let (fc, gc) = (clift_scalar(&c.f)?, clift_scalar(&c.g)?);
                let (fv, gv) = (vlift_scalar(&c.f)?, vlift_scalar(&c.g)?);
                Sides::scalars(&clift_scalar(&product(&c.f, &c.g))?, &sum(&product(&fc, &gv), &product(&fv, &gc)))
            },
        },
        Identity {
            id: "complete.sum",
            anchor: "(f+g)^c = f^c+g^c",
            check: |c| Sides::scalars(&clift_scalar(&sum(&c.f, &c.g))?, &sum(&clift_scalar(&c.f)?, &clift_scalar(&c.g)?)),
        },
    ]
}

pub fn verify_function_lifts(spec: &CaseSpec) -> Result<IdentityReport, VerifyError> {
    let chart = spec.chart()?;
    run_suite("function-lifts", spec, &function_identities(), |g, shape| {
        let f = g.scalar(&chart, shape);
        let g2 = match shape {
            Shape::Frame => scalar_on(chart, Expr::symbol(chart.symbol(chart.m()))),
            s => g.scalar(&chart, s),
        };
        FunctionCase { f, g: g2 }
    })
}

// ------------------------------------------------------------------ vectors

pub struct VectorCase {
    pub x: VectorField,
    pub y: VectorField,
    pub f: ScalarField,
}

pub fn vector_identities() -> Vec<Identity<VectorCase>> {
    vec![
        Identity {
            id: "vertical.sum",
            anchor: "(X+Y)^v = X^v+Y^v",
            check: |c| Sides::vectors(&vlift_vector(&c.x.add(&c.y)?)?, &vlift_vector(&c.x)?.add(&vlift_vector(&c.y)?)?),
        },
        Identity {
            id: "complete.sum",
            anchor: "(X+Y)^c = X^c+Y^c",
            check: |c| Sides::vectors(&clift_vector(&c.x.add(&c.y)?)?, &clift_vector(&c.x)?.add(&clift_vector(&c.y)?)?),
        },
        Identity {
            id: "vertical.scale",
            anchor: "(fX)^v = f^v X^v",
            check: |c| Sides::vectors(&vlift_vector(&c.x.scale(&c.f)?)?, &vlift_vector(&c.x)?.scale(&vlift_scalar(&c.f)?)?),
        },
        Identity {
            id: "complete.scale",
            anchor: "(fX)^c = f^c X^v + f^v X^c",
            check: |c| {
                let lhs = clift_vector(&c.x.scale(&c.f)?)?;
                let rhs = vlift_vector(&c.x)?
                    .scale(&clift_scalar(&c.f)?)?
                    .add(&clift_vector(&c.x)?.scale(&vlift_scalar(&c.f)?)?)?;
                Sides::vectors(&lhs, &rhs)
            },
        },
        Identity {
            id: "vertical.on-vertical",
            anchor: "X^v(f^v) = 0",
            check: |c| Ok(Sides::vanishes(vec![vlift_vector(&c.x)?.derive(&vlift_scalar(&c.f)?)?.into_value()])),
        },
        Identity {
            id: "complete.on-vertical",
            anchor: "X^c(f^v) = (Xf)^v",
            check: |c| Sides::scalars(&clift_vector(&c.x)?.derive(&vlift_scalar(&c.f)?)?, &vlift_scalar(&c.x.derive(&c.f)?)?),
        },
        Identity {
            id: "vertical.on-complete",
            anchor: "X^v(f^c) = (Xf)^v",
            check: |c| Sides::scalars(&vlift_vector(&c.x)?.derive(&clift_scalar(&c.f)?)?, &vlift_scalar(&c.x.derive(&c.f)?)?),
        },
        Identity {
            id: "complete.on-complete",
            anchor: "X^c(f^c) = (Xf)^c",
            check: |c| Sides::scalars(&clift_vector(&c.x)?.derive(&clift_scalar(&c.f)?)?, &clift_scalar(&c.x.derive(&c.f)?)?),
        },
        Identity {
            id: "bracket.vertical-vertical",
            anchor: "[X^v,Y^v] = 0",
            check: |c| Ok(Sides::vanishes(lie_bracket(&vlift_vector(&c.x)?, &vlift_vector(&c.y)?)?.components().to_vec())),
        },
        Identity {
            id: "bracket.vertical-complete",
            anchor: "[X^v,Y^c] = [X,Y]^v",
            check: |c| Sides::vectors(&lie_bracket(&vlift_vector(&c.x)?, &clift_vector(&c.y)?)?, &vlift_vector(&lie_bracket(&c.x, &c.y)?)?),
        },
        Identity {
            id: "bracket.complete-vertical",
            anchor: "[X^c,Y^v] = [X,Y]^v",
            check: |c| Sides::vectors(&lie_bracket(&clift_vector(&c.x)?, &vlift_vector(&c.y)?)?, &vlift_vector(&lie_bracket(&c.x, &c.y)?)?),
        },
        Identity {
            id: "bracket.complete-complete",
            anchor: "[X^c,Y^c] = [X,Y]^c",
            check: |c| Sides::vectors(&lie_bracket(&clift_vector(&c.x)?, &clift_vector(&c.y)?)?, &clift_vector(&lie_bracket(&c.x, &c.y)?)?),
        },
        Identity {
            id: "frames.complete",
            anchor: "(d/dz^a)^c = d/dz^a, (d/dzb^a)^c = d/dzb^a",
            check: |c| {
                let base = c.x.chart();
                let parts = (0..base.dim())
                    .map(|a| Sides::vectors(&clift_vector(&VectorField::frame(base, a))?, &VectorField::frame(tm(&base), a)))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Sides::concat(parts))
            },
        },
        Identity {
            id: "frames.vertical",
            anchor: "(d/dz^a)^v = d/du^a, (d/dzb^a)^v = d/dub^a",
            check: |c| {
                let base = c.x.chart();
                let t = tm(&base);
                let parts = (0..base.dim())
                    .map(|a| Sides::vectors(&vlift_vector(&VectorField::frame(base, a))?, &VectorField::frame(t, t.fiber_index(a))))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Sides::concat(parts))
            },
        },
        Identity {
            id: "components.complete",
            anchor: "Z^c = (Z^a)^v d/dz^a + (Zb^a)^v d/dzb^a + (Z^a)^c d/du^a + (Zb^a)^c d/dub^a",
            check: |c| {
                // Z^c is determined by its action on complete lifts of the coordinates
                let base = c.x.chart();
                let xc = clift_vector(&c.x)?;
                let mut lhs = Vec::new();
                let mut rhs = Vec::new();
                for a in 0..base.dim() {
                    let coord = scalar_on(base, Expr::symbol(base.symbol(a)));
                    lhs.push(xc.derive(&vlift_scalar(&coord)?)?.into_value());
                    rhs.push(c.x.component(a).clone());
                    lhs.push(xc.derive(&clift_scalar(&coord)?)?.into_value());
                    rhs.push(clift_scalar(&scalar_on(base, c.x.component(a).clone()))?.into_value());
                }
                Sides::new(lhs, rhs)
            },
        },
    ]
}

pub fn verify_vector_lifts(spec: &CaseSpec) -> Result<IdentityReport, VerifyError> {
    let chart = spec.chart()?;
    run_suite("vector-lifts", spec, &vector_identities(), |g, shape| VectorCase {
        x: g.vector(&chart, shape),
        y: g.vector(&chart, shape),
        f: g.scalar(&chart, if shape == Shape::Frame { Shape::Random } else { shape }),
    })
}

// ---------------------------------------------------------------- one-forms

pub struct OneFormCase {
    pub w: OneForm,
    pub theta: OneForm,
    pub z: VectorField,
    pub f: ScalarField,
}

pub fn oneform_identities() -> Vec<Identity<OneFormCase>> {
    vec![
        Identity {
            id: "vertical.scale",
            anchor: "(f w)^v = f^v w^v",
            check: |c| Sides::oneforms(&vlift_oneform(&c.w.scale(&c.f)?)?, &vlift_oneform(&c.w)?.scale(&vlift_scalar(&c.f)?)?),
        },
        Identity {
            id: "complete.scale",
            anchor: "(f w)^c = f^c w^v + f^v w^c",
            check: |c| {
                let lhs = clift_oneform(&c.w.scale(&c.f)?)?;
                let rhs = vlift_oneform(&c.w)?
                    .scale(&clift_scalar(&c.f)?)?
                    .add(&clift_oneform(&c.w)?.scale(&vlift_scalar(&c.f)?)?)?;
                Sides::oneforms(&lhs, &rhs)
            },
        },
        Identity {
            id: "vertical.sum",
            anchor: "(w+theta)^v = w^v+theta^v",
            check: |c| Sides::oneforms(&vlift_oneform(&c.w.add(&c.theta)?)?, &vlift_oneform(&c.w)?.add(&vlift_oneform(&c.theta)?)?),
        },
        Identity {
            id: "complete.sum",
            anchor: "(w+theta)^c = w^c+theta^c",
            check: |c| Sides::oneforms(&clift_oneform(&c.w.add(&c.theta)?)?, &clift_oneform(&c.w)?.add(&clift_oneform(&c.theta)?)?),
        },
        Identity {
            id: "vertical.on-vertical",
            anchor: "w^v(Z^v) = 0",
            check: |c| Ok(Sides::vanishes(vec![vlift_oneform(&c.w)?.apply(&vlift_vector(&c.z)?)?.into_value()])),
        },
        Identity {
            id: "complete.on-vertical",
            anchor: "w^c(Z^v) = (wZ)^v",
            check: |c| Sides::scalars(&clift_oneform(&c.w)?.apply(&vlift_vector(&c.z)?)?, &vlift_scalar(&c.w.apply(&c.z)?)?),
        },
        Identity {
            id: "vertical.on-complete",
            anchor: "w^v(Z^c) = (wZ)^v",
            check: |c| Sides::scalars(&vlift_oneform(&c.w)?.apply(&clift_vector(&c.z)?)?, &vlift_scalar(&c.w.apply(&c.z)?)?),
        },
        Identity {
            id: "complete.on-complete",
            anchor: "w^c(Z^c) = (wZ)^c",
            check: |c| Sides::scalars(&clift_oneform(&c.w)?.apply(&clift_vector(&c.z)?)?, &clift_scalar(&c.w.apply(&c.z)?)?),
        },
        Identity {
            id: "differentials.complete",
            anchor: "(dz^a)^c = d(u^a), (dzb^a)^c = d(ub^a)",
            check: |c| {
                let base = c.w.chart();
                let t = tm(&base);
                let parts = (0..base.dim())
                    .map(|a| {
                        let u = scalar_on(t, Expr::symbol(t.symbol(t.fiber_index(a))));
                        Sides::oneforms(&clift_oneform(&OneForm::coordinate(base, a))?, &differential(&u))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Sides::concat(parts))
            },
        },
        Identity {
            id: "differentials.vertical",
            anchor: "(dz^a)^v = d(z^a), (dzb^a)^v = d(zb^a)",
            check: |c| {
                let base = c.w.chart();
                let t = tm(&base);
                let parts = (0..base.dim())
                    .map(|a| {
                        let z = scalar_on(t, Expr::symbol(t.symbol(a)));
                        Sides::oneforms(&vlift_oneform(&OneForm::coordinate(base, a))?, &differential(&z))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Sides::concat(parts))
            },
        },
    ]
}

pub fn verify_oneform_lifts(spec: &CaseSpec) -> Result<IdentityReport, VerifyError> {
    let chart = spec.chart()?;
    run_suite("oneform-lifts", spec, &oneform_identities(), |g, shape| OneFormCase {
        w: g.oneform(&chart, shape),
        theta: g.oneform(&chart, shape),
        z: g.vector(&chart, shape),
        f: g.scalar(&chart, if shape == Shape::Frame { Shape::Random } else { shape }),
    })
}

// ------------------------------------------------------------- (1,1) fields

pub struct EndoCase {
    pub f: EndoField,
    pub z: VectorField,
}

/// The lifted table written out from the block display, valid for fields
/// without mixed `z`/`zb` entries.
fn displayed_endo_lift(f: &EndoField) -> EndoField {
    let base = f.chart();
    let t = tm(&base);
    let n = base.dim();
    let same_type = |b: usize, a: usize| base.is_holomorphic_slot(b) == base.is_holomorphic_slot(a);
    EndoField::from_fn(t, |b, a| {
        let (bb, ab) = (b % n, a % n);
        if !same_type(bb, ab) {
            return Expr::zero();
        }
        let g = f.get(bb, ab);
        match (b >= n, a >= n) {
            (false, false) | (true, true) => g.clone(),
            (true, false) => clift_scalar(&scalar_on(base, g.clone())).expect("base").into_value(),
            (false, true) => Expr::zero(),
        }
    })
}

fn without_mixed_blocks(f: &EndoField) -> EndoField {
    let c = f.chart();
    EndoField::from_fn(c, |b, a| {
        if c.is_holomorphic_slot(b) == c.is_holomorphic_slot(a) {
            f.get(b, a).clone()
        } else {
            Expr::zero()
        }
    })
}

pub fn endo_identities() -> Vec<Identity<EndoCase>> {
    vec![
        Identity {
            id: "complete.defining-law",
            anchor: "F^c(Z^c) = (FZ)^c",
            check: |c| Sides::vectors(&clift_endo(&c.f)?.apply(&clift_vector(&c.z)?)?, &clift_vector(&c.f.apply(&c.z)?)?),
        },
        Identity {
            id: "complete.on-vertical",
            anchor: "F^c(Z^c) = (FZ)^c",
            check: |c| Sides::vectors(&clift_endo(&c.f)?.apply(&vlift_vector(&c.z)?)?, &vlift_vector(&c.f.apply(&c.z)?)?),
        },
        Identity {
            id: "complete.block-display",
            anchor: "F^c = (F^b_a)^v d/dz^b (x) dz^a + (F^b_a)^c d/du^b (x) dz^a + (F^b_a)^v d/du^b (x) du^a + conj.",
            check: |c| {
                let f = without_mixed_blocks(&c.f);
                Sides::endos(&clift_endo(&f)?, &displayed_endo_lift(&f))
            },
        },
    ]
}

pub fn verify_endo_lift(spec: &CaseSpec) -> Result<IdentityReport, VerifyError> {
    let chart = spec.chart()?;
    run_suite("endo-lift", spec, &endo_identities(), |g, shape| EndoCase {
        f: g.endo(&chart, if shape == Shape::Frame { Shape::Random } else { shape }),
        z: g.vector(&chart, shape),
    })
}

// --------------------------------------------------------------- structures

pub struct ParaCase {
    pub chart: Chart,
    pub x: VectorField,
    pub y: VectorField,
    pub w: OneForm,
    /// Constant real-frame coefficients `(a, b)` of `a d/dx^i + b d/dy^i`.
    pub real: Vec<(Expr, Expr)>,
}

pub fn para_identities() -> Vec<Identity<ParaCase>> {
    vec![
        Identity {
            id: "structure.involution",
            anchor: "J^2 = I",
            check: |c| {
                let j = para_structure(&c.chart)?;
                Sides::endos(&j.compose(&j)?, &EndoField::identity(c.chart))
            },
        },
        Identity {
            id: "structure.frames",
            anchor: "J(d/dz^a) = -j d/dz^a, J(d/dzb^a) = j d/dzb^a",
            check: |c| {
                let j = para_structure(&c.chart)?;
                let parts = (0..c.chart.dim())
                    .map(|a| {
                        let sign = if c.chart.is_holomorphic_slot(a) { -1 } else { 1 };
                        let e = VectorField::frame(c.chart, a);
                        Sides::vectors(&j.apply(&e)?, &e.scale_const(&SplitComplex::from_ints(0, sign)))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Sides::concat(parts))
            },
        },
        Identity {
            id: "dual.involution",
            anchor: "J*^2 = I",
            check: |c| {
                let js = crate::geometry::dual_para_structure(&c.chart)?;
                Sides::oneforms(&js.apply_dual(&js.apply_dual(&c.w)?)?, &c.w)
            },
        },
        Identity {
            id: "dual.coframes",
            anchor: "J*(dz^a) = -j dz^a, J*(dzb^a) = j dzb^a",
            check: |c| {
                let js = crate::geometry::dual_para_structure(&c.chart)?;
                let parts = (0..c.chart.dim())
                    .map(|a| {
                        let sign = if c.chart.is_holomorphic_slot(a) { -1 } else { 1 };
                        let d = OneForm::coordinate(c.chart, a);
                        let expected = OneForm::new(c.chart, d.components().iter().map(|e| e.scale(&SplitComplex::from_ints(0, sign))).collect())?;
                        Sides::oneforms(&js.apply_dual(&d)?, &expected)
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Sides::concat(parts))
            },
        },
        Identity {
            id: "dual.pairing",
            anchor: "(J*w)(Z) = w(JZ)",
            check: |c| {
                let j = para_structure(&c.chart)?;
                let js = crate::geometry::dual_para_structure(&c.chart)?;
                Sides::scalars(&js.apply_dual(&c.w)?.apply(&c.x)?, &c.w.apply(&j.apply(&c.x)?)?)
            },
        },
        Identity {
            id: "lifted.involution",
            anchor: "(J^c)^2 = I",
            check: |c| {
                let jc = clift_para(&c.chart)?;
                Sides::endos(&jc.compose(&jc)?, &EndoField::identity(tm(&c.chart)))
            },
        },
        Identity {
            id: "lifted.on-complete",
            anchor: "F^c(Z^c) = (FZ)^c",
            check: |c| {
                let j = para_structure(&c.chart)?;
                Sides::vectors(&clift_para(&c.chart)?.apply(&clift_vector(&c.x)?)?, &clift_vector(&j.apply(&c.x)?)?)
            },
        },
        Identity {
            id: "lifted.on-vertical",
            anchor: "F^c(Z^c) = (FZ)^c",
            check: |c| {
                let j = para_structure(&c.chart)?;
                Sides::vectors(&clift_para(&c.chart)?.apply(&vlift_vector(&c.x)?)?, &vlift_vector(&j.apply(&c.x)?)?)
            },
        },
        Identity {
            id: "real.frames",
            anchor: "J(d/dx^a) = d/dy^a, J(d/dy^a) = d/dx^a",
            check: |c| {
                let j = para_structure(&c.chart)?;
                let m = c.chart.m();
                let mut parts = Vec::new();
                for i in 0..m {
                    let unit = |k: usize| -> Vec<(Expr, Expr)> {
                        (0..m)
                            .map(|l| match (l == i, k) {
                                (true, 0) => (Expr::one(), Expr::zero()),
                                (true, _) => (Expr::zero(), Expr::one()),
                                _ => (Expr::zero(), Expr::zero()),
                            })
                            .collect()
                    };
                    let dx = from_real_frame(&c.chart, &unit(0))?;
                    let dy = from_real_frame(&c.chart, &unit(1))?;
                    parts.push(Sides::vectors(&j.apply(&dx)?, &dy)?);
                    parts.push(Sides::vectors(&j.apply(&dy)?, &dx)?);
                }
                Ok(Sides::concat(parts))
            },
        },
        Identity {
            id: "real.bridge",
            anchor: "z^a = x^a + j y^a",
            check: |c| {
                // J(a d/dx + b d/dy) has real-frame parts (b, a), both free of j
                let j = para_structure(&c.chart)?;
                let v = from_real_frame(&c.chart, &c.real)?;
                let parts = real_frame_components(&j.apply(&v)?)?;
                let mut lhs = Vec::new();
                let mut rhs = Vec::new();
                for ((x, y), (a, b)) in parts.iter().zip(&c.real) {
                    let (xr, xj) = x.split_parts();
                    let (yr, yj) = y.split_parts();
                    lhs.extend([xr, xj, yr, yj]);
                    rhs.extend([b.clone(), Expr::zero(), a.clone(), Expr::zero()]);
                }
                Sides::new(lhs, rhs)
            },
        },
        Identity {
            id: "nijenhuis.integrable",
            anchor: "N_J(Z,W) = [Z,W] - J[JZ,W] - J[Z,JW] + [JZ,JW]",
            check: |c| {
                let j = para_structure(&c.chart)?;
                Ok(Sides::vanishes(nijenhuis(&j, &c.x, &c.y)?.components().to_vec()))
            },
        },
    ]
}

pub fn verify_para_structures(spec: &CaseSpec) -> Result<IdentityReport, VerifyError> {
    let chart = spec.chart()?;
    run_suite("para-structures", spec, &para_identities(), |g, shape| {
        let real = (0..chart.m())
            .map(|_| {
                let mut r = || Expr::int(g.coefficient().re.to_integer().try_into().unwrap_or(1));
                (r(), r())
            })
            .collect();
        ParaCase {
            chart,
            x: g.vector(&chart, shape),
            y: g.vector(&chart, shape),
            w: g.oneform(&chart, shape),
            real,
        }
    })
}

// --------------------------------------------------------------- theorem 1

/// Which correction builds `∇~`. `Flipped` uses `∇ - Q` and exists to show
/// that the harness can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum QVariant {
    #[default]
    Standard,
    Flipped,
}

pub struct TheoremCase {
    pub nabla: Connection,
    /// Involution the correction is built for.
    pub j: EndoField,
    pub x: VectorField,
    pub y: VectorField,
    pub f: ScalarField,
    pub variant: QVariant,
    corrected: OnceLock<Result<Connection, GeometryError>>,
}

impl TheoremCase {
    fn corrected(&self) -> Result<&Connection, GeometryError> {
        self.corrected.get_or_init(|| self.build_corrected()).as_ref().map_err(Clone::clone)
    }

    fn build_corrected(&self) -> Result<Connection, GeometryError> {
        match self.variant {
            QVariant::Standard => corrected_connection(&self.nabla, &self.j),
            QVariant::Flipped => {
                let q = q_correction(&self.nabla, &self.j)?;
                let minus = q.table.scale_const(&SplitComplex::from_ints(-1, 0));
                Ok(Connection::new(self.nabla.christoffels().add(&minus)?))
            }
        }
    }

    /// `(∇_X J)Y` for the uncorrected connection.
    fn nabla_j(&self, x: &VectorField, y: &VectorField) -> Result<VectorField, GeometryError> {
        covariant_derivative_endo(&self.nabla, x, &self.j)?.apply(y)
    }

    /// `A(X,Y) = Q(X,JY) - J Q(X,Y)`.
    fn a_term(&self) -> Result<VectorField, GeometryError> {
        let jy = self.j.apply(&self.y)?;
        let q_xjy = q_formula(&self.nabla, &self.j, &self.x, &jy)?;
        let q_xy = q_formula(&self.nabla, &self.j, &self.x, &self.y)?;
        q_xjy.sub(&self.j.apply(&q_xy)?)
    }
}

fn parallel_components(nabla: &Connection, j: &EndoField) -> Result<Sides, GeometryError> {
    let chart = nabla.chart();
    let mut all = Vec::new();
    for a in 0..chart.dim() {
        let d = covariant_derivative_endo(nabla, &VectorField::frame(chart, a), j)?;
        all.extend(d.entries().cloned());
    }
    Ok(Sides::vanishes(all))
}

fn four() -> SplitComplex {
    SplitComplex::from_ints(4, 0)
}

fn minus_one() -> SplitComplex {
    SplitComplex::from_ints(-1, 0)
}

pub fn theorem_identities() -> Vec<Identity<TheoremCase>> {
    vec![
        Identity {
            id: "corrected.parallel",
            anchor: "(~nabla_X J)Y = 0",
            check: |c| parallel_components(c.corrected()?, &c.j),
        },
        Identity {
            id: "corrected.parallel-fields",
            anchor: "(~nabla_X J)Y = 0",
            check: |c| Ok(Sides::vanishes(covariant_derivative_endo(c.corrected()?, &c.x, &c.j)?.apply(&c.y)?.components().to_vec())),
        },
        Identity {
            id: "torsion.nijenhuis",
            anchor: "N_J = -4T",
            check: |c| {
                let t = torsion(c.corrected()?).table.scale_const(&four());
                let n = nijenhuis_table(&c.j)?.table.scale_const(&minus_one());
                Sides::tables(&t, &n)
            },
        },
        Identity {
            id: "torsion.nijenhuis-fields",
            anchor: "N_J = -4T",
            check: |c| {
                let t = torsion_of_fields(c.corrected()?, &c.x, &c.y)?.scale_const(&four());
                let n = nijenhuis(&c.j, &c.x, &c.y)?.neg();
                Sides::vectors(&t, &n)
            },
        },
        Identity {
            id: "proof.corrected-split",
            anchor: "(~nabla_X J)Y = (nabla_X J)Y + A(X,Y)",
            check: |c| {
                let lhs = covariant_derivative_endo(c.corrected()?, &c.x, &c.j)?.apply(&c.y)?;
                Sides::vectors(&lhs, &c.nabla_j(&c.x, &c.y)?.add(&c.a_term()?)?)
            },
        },
        Identity {
            id: "proof.a-term",
            anchor: "A(X,Y) = Q(X,JY) - J Q(X,Y) = -(nabla_X J)Y",
            check: |c| Sides::vectors(&c.a_term()?, &c.nabla_j(&c.x, &c.y)?.neg()),
        },
        Identity {
            id: "proof.j-nabla-j",
            anchor: "J((nabla_X J)JY) = -(nabla_X J)Y",
            check: |c| {
                let jy = c.j.apply(&c.y)?;
                Sides::vectors(&c.j.apply(&c.nabla_j(&c.x, &jy)?)?, &c.nabla_j(&c.x, &c.y)?.neg())
            },
        },
        Identity {
            id: "q.table-matches-formula",
            anchor: "4Q(X,Y) = (nabla_JY J)X + J((nabla_Y J)X) + 2J((nabla_X J)Y)",
            check: |c| {
                let q = q_correction(&c.nabla, &c.j)?;
                Sides::vectors(&q.apply(&c.x, &c.y)?, &q_formula(&c.nabla, &c.j, &c.x, &c.y)?)
            },
        },
        Identity {
            id: "q.tensorial",
            anchor: "4Q(X,Y) = (nabla_JY J)X + J((nabla_Y J)X) + 2J((nabla_X J)Y)",
            check: |c| {
                let fx = c.x.scale(&c.f)?;
                let lhs = q_formula(&c.nabla, &c.j, &fx, &c.y)?;
                Sides::vectors(&lhs, &q_formula(&c.nabla, &c.j, &c.x, &c.y)?.scale(&c.f)?)
            },
        },
        Identity {
            id: "corrected.definition",
            anchor: "~nabla_X Y = nabla_X Y + Q(X,Y)",
            check: |c| {
                let lhs = covariant_derivative_vector(c.corrected()?, &c.x, &c.y)?;
                let q = q_formula(&c.nabla, &c.j, &c.x, &c.y)?;
                let q = if c.variant == QVariant::Flipped { q.neg() } else { q };
                Sides::vectors(&lhs, &covariant_derivative_vector(&c.nabla, &c.x, &c.y)?.add(&q)?)
            },
        },
    ]
}

fn theorem_case(g: &mut Generator, shape: Shape, chart: &Chart, j: EndoField, variant: QVariant) -> TheoremCase {
    let nabla = g.torsion_free_connection(chart, if shape == Shape::Frame { Shape::Random } else { shape });
    TheoremCase {
        nabla,
        j,
        x: g.vector(chart, shape),
        y: g.vector(chart, shape),
        f: g.scalar(chart, if shape == Shape::Frame { Shape::Random } else { shape }),
        variant,
        corrected: OnceLock::new(),
    }
}

/// Checks the construction for the paracomplex structure `J` and, as a
/// second suite section, for random non-constant involutions whose
/// Nijenhuis tensor does not vanish.
pub fn verify_theorem1(spec: &CaseSpec) -> Result<IdentityReport, VerifyError> {
    verify_theorem1_with(spec, QVariant::Standard)
}

pub fn verify_theorem1_with(spec: &CaseSpec, variant: QVariant) -> Result<IdentityReport, VerifyError> {
    let chart = spec.chart()?;
    let standard = para_structure(&chart).expect("base chart");
    let mut report = run_suite("theorem1", spec, &theorem_identities(), |g, shape| {
        theorem_case(g, shape, &chart, standard.clone(), variant)
    })?;
    let generic = run_suite("theorem1-involution", spec, &theorem_identities(), |g, shape| {
        let j = g.involution(&chart);
        theorem_case(g, shape, &chart, j, variant)
    })?;
    for mut r in generic.results {
        r.identity = format!("involution.{}", r.identity);
        report.results.push(r);
    }
    report.consistency_failures += generic.consistency_failures;
    report.notes.push("convention: J(d/dz^a) = -j d/dz^a, J(d/dzb^a) = +j d/dzb^a".into());
    report.notes.push(sign_note(spec, variant));
    Ok(report)
}

/// Which of `4T = -N_J` or `4T = +N_J` holds on the first random input
/// with a non-vanishing Nijenhuis tensor.
fn sign_note(spec: &CaseSpec, variant: QVariant) -> String {
    let chart = Chart::base(spec.m);
    for k in Shape::DEGENERATE..Shape::DEGENERATE + spec.cases {
        let mut g = Generator::new(case_seed(spec.seed, "theorem1-involution", k), spec.max_degree, spec.max_terms);
        let j = g.involution(&chart);
        let case = theorem_case(&mut g, Shape::Random, &chart, j, variant);
        let (Ok(n), Ok(nabla)) = (nijenhuis_table(&case.j), case.corrected()) else {
            continue;
        };
        if n.is_zero() {
            continue;
        }
        let t4 = torsion(nabla).table.scale_const(&four());
        let minus_n = n.table.scale_const(&minus_one());
        return if t4 == minus_n {
            format!("sign pairing held: 4T = -N_J (case {k})")
        } else if t4 == n.table {
            format!("sign pairing held: 4T = +N_J (case {k}), opposite to the asserted -N_J")
        } else {
            format!("neither 4T = -N_J nor 4T = +N_J held (case {k})")
        };
    }
    if spec.m == 1 {
        "N_J vanished for every drawn involution, as it must for m = 1 (rank-one eigendistributions are integrable)".into()
    } else {
        "no random involution with nonzero Nijenhuis tensor was drawn".into()
    }
}

// ---------------------------------------------------------------- corollary

pub struct CorollaryCase {
    pub nabla: Connection,
    pub x: VectorField,
    pub y: VectorField,
}

struct Lifted {
    lifted: Connection,
    jc: EndoField,
    corrected: Connection,
}

impl CorollaryCase {
    fn pipeline(&self) -> Result<Lifted, GeometryError> {
        let lifted = complete_lift_connection(&self.nabla)?;
        let jc = clift_para(&self.nabla.chart())?;
        let corrected = corrected_connection(&lifted, &jc)?;
        Ok(Lifted { lifted, jc, corrected })
    }
}

pub fn corollary_identities() -> Vec<Identity<CorollaryCase>> {
    vec![
        Identity {
            id: "lift.complete-complete",
            anchor: "nabla^c_{X^c} Y^c = (nabla_X Y)^c",
            check: |c| {
                let l = complete_lift_connection(&c.nabla)?;
                let lhs = covariant_derivative_vector(&l, &clift_vector(&c.x)?, &clift_vector(&c.y)?)?;
                Sides::vectors(&lhs, &clift_vector(&covariant_derivative_vector(&c.nabla, &c.x, &c.y)?)?)
            },
        },
        Identity {
            id: "lift.mixed",
            anchor: "nabla^c_{X^c} Y^v = nabla^c_{X^v} Y^c = (nabla_X Y)^v",
            check: |c| {
                let l = complete_lift_connection(&c.nabla)?;
                let rhs = vlift_vector(&covariant_derivative_vector(&c.nabla, &c.x, &c.y)?)?;
                let a = covariant_derivative_vector(&l, &clift_vector(&c.x)?, &vlift_vector(&c.y)?)?;
                let b = covariant_derivative_vector(&l, &vlift_vector(&c.x)?, &clift_vector(&c.y)?)?;
                Ok(Sides::concat(vec![Sides::vectors(&a, &rhs)?, Sides::vectors(&b, &rhs)?]))
            },
        },
        Identity {
            id: "lift.vertical-vertical",
            anchor: "nabla^c_{X^v} Y^v = 0",
            check: |c| {
                let l = complete_lift_connection(&c.nabla)?;
                let v = covariant_derivative_vector(&l, &vlift_vector(&c.x)?, &vlift_vector(&c.y)?)?;
                Ok(Sides::vanishes(v.components().to_vec()))
            },
        },
        Identity {
            id: "lift.torsion-free",
            anchor: "T^c(Z^c,W^c) = nabla^c_{Z^c} W^c - nabla^c_{W^c} Z^c - [Z^c,W^c] = 0",
            check: |c| Ok(Sides::vanishes(torsion(&c.pipeline()?.lifted).table.values().to_vec())),
        },
        Identity {
            id: "structure.involution",
            anchor: "(J^c)^2 = I",
            check: |c| {
                let jc = c.pipeline()?.jc;
                Sides::endos(&jc.compose(&jc)?, &EndoField::identity(jc.chart()))
            },
        },
        Identity {
            id: "corrected.torsion-free",
            anchor: "admits a para-complex torsion-free affine connection",
            check: |c| Ok(Sides::vanishes(torsion(&c.pipeline()?.corrected).table.values().to_vec())),
        },
        Identity {
            id: "corrected.parallel",
            anchor: "admits a para-complex torsion-free affine connection",
            check: |c| {
                let p = c.pipeline()?;
                parallel_components(&p.corrected, &p.jc)
            },
        },
        Identity {
            id: "nijenhuis.lifted",
            anchor: "N^c_{J^c} = -4T^c",
            check: |c| {
                let p = c.pipeline()?;
                let (xc, yc) = (clift_vector(&c.x)?, clift_vector(&c.y)?);
                let t = torsion_of_fields(&p.corrected, &xc, &yc)?.scale_const(&four());
                Sides::vectors(&t, &nijenhuis(&p.jc, &xc, &yc)?.neg())
            },
        },
    ]
}

pub fn verify_corollary(spec: &CaseSpec) -> Result<IdentityReport, VerifyError> {
    let chart = spec.chart()?;
    let mut report = run_suite("corollary", spec, &corollary_identities(), |g, shape| CorollaryCase {
        nabla: g.torsion_free_connection(&chart, if shape == Shape::Frame { Shape::Random } else { shape }),
        x: g.vector(&chart, shape),
        y: g.vector(&chart, shape),
    })?;
    let t = tangent_chart(&chart).expect("base chart");
    report.notes.push(format!(
        "tangent chart {t}: {} coordinates, {} Christoffel entries per connection",
        t.dim(),
        t.dim().pow(3)
    ));
    Ok(report)
}

/// All seven suites in a fixed order.
pub fn verify_all(spec: &CaseSpec) -> Result<Vec<IdentityReport>, VerifyError> {
    Ok(vec![
        verify_function_lifts(spec)?,
        verify_vector_lifts(spec)?,
        verify_oneform_lifts(spec)?,
        verify_endo_lift(spec)?,
        verify_para_structures(spec)?,
        verify_theorem1(spec)?,
        verify_corollary(spec)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> CaseSpec {
        CaseSpec {
            cases: 3,
            ..CaseSpec::default()
        }
    }

    #[test]
    fn invalid_specs_are_rejected() {
        for bad in [
            CaseSpec { m: 0, ..small() },
            CaseSpec { cases: 0, ..small() },
            CaseSpec { max_degree: 0, ..small() },
            CaseSpec { max_terms: 0, ..small() },
        ] {
            assert!(verify_function_lifts(&bad).is_err());
        }
    }

    #[test]
    fn function_suite_passes() {
        let r = verify_function_lifts(&small()).unwrap();
        assert!(r.passed(), "{}", r.to_text());
        assert!(r.results.iter().all(|x| x.cases == 3 && x.degenerate == 3));
    }

    #[test]
    fn a_broken_identity_fails_with_numeric_witness() {
        let ids: Vec<Identity<FunctionCase>> = vec![Identity {
            id: "broken",
            anchor: "(f.g)^c = f^c.g^c",
            check: |c| {
                let lhs = clift_scalar(&product(&c.f, &c.g))?;
                Sides::scalars(&lhs, &product(&clift_scalar(&c.f)?, &clift_scalar(&c.g)?))
            },
        }];
        let chart = Chart::base(1);
        let r = run_suite("broken", &small(), &ids, |g, s| FunctionCase {
            f: g.scalar(&chart, s),
            g: g.scalar(&chart, s),
        })
        .unwrap();
        let res = &r.results[0];
        assert_eq!(res.status, Status::Fail);
        let w = res.witness.as_ref().unwrap();
        assert_ne!(w.left_value, w.right_value);
        assert_eq!(r.consistency_failures, 0);
    }

    #[test]
    fn machine_format_has_one_record_per_identity() {
        let r = verify_endo_lift(&small()).unwrap();
        let text = r.to_machine();
        assert_eq!(text.lines().count(), r.results.len());
        for line in text.lines() {
            let v: serde_json::Value = serde_json::from_str(line).unwrap();
            assert_eq!(v["suite"], "endo-lift");
            assert_eq!(v["status"], "pass");
            assert!(v.get("witness").is_none());
        }
    }
}
