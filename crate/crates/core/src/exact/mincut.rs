//! Exact surjective solving for 2-monotone Boolean templates via s-t min cut.
//!
//! Node `F` (source) and `T` (sink) stand for the values 0 and 1; every
//! instance element gets a node, and every constraint adds gadget nodes:
//!
//! * positive part `x_1 ∧ … ∧ x_p`: node `e_C`, arcs `x_i → e_C` of cost ∞;
//! * negative part `¬y_1 ∧ … ∧ ¬y_q`: node `ē_C`, arcs `ē_C → y_j` of cost ∞;
//! * positive only: unit arc `e_C → T`; negative only: unit arc `F → ē_C`;
//!   both: unit arc `e_C → ē_C`.
//!
//! A finite cut then costs exactly the number of violated constraints, with
//! elements on the `T` side read as 1. Surjectivity is forced by anchoring one
//! element to each side, either through a constraint whose unit arc is raised
//! to ∞ or directly through an ∞ arc on an element.

use num_traits::One;

use super::flow::{max_flow, FlowNetwork};
use crate::approx::RatioBound;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::report::{Mode, SolveReport};
use crate::structure::{count_satisfied, is_surjective, validate, Assignment, Structure};
use crate::templates::{classify_boolean, BooleanClass, MonotoneForm, Witness};

const F: usize = 0;
const T: usize = 1;
const FIRST_ELEMENT: usize = 2;

/// Forces some element to one side of the cut.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Anchor {
    /// Index into the instance's constraints, in `Structure::constraints` order.
    Constraint(usize),
    Variable(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AnchorMode {
    /// Only constraint pairs `(C', C'')`.
    ConstraintsOnly,
    /// Constraint pairs, then every element pair `(u ↦ 1, v ↦ 0)`.
    #[default]
    Extended,
}

#[derive(Debug, Clone)]
pub struct CutGraph {
    pub network: FlowNetwork,
    /// Cost used for uncuttable arcs: the constraint count plus one.
    pub infinity: u64,
    pub elements: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutSolution {
    pub value: u64,
    pub sink_side: Vec<bool>,
    /// Elements on the sink side map to 1, the rest to 0.
    pub assignment: Assignment,
}

impl CutSolution {
    /// False when every cut crosses an ∞ arc, i.e. the anchoring is unsatisfiable.
    pub fn is_feasible(&self, graph: &CutGraph) -> bool {
        self.value < graph.infinity
    }
}

fn witness_of<'a>(class: &'a BooleanClass, instance: &Structure, rel: usize) -> Result<&'a Witness> {
    class
        .witnesses
        .get(rel)
        .and_then(Option::as_ref)
        .ok_or_else(|| Error::NotTwoMonotone(instance.signature().name(rel).to_string()))
}

/// Builds the flow network for `instance` with the given anchors.
pub fn build_cut_graph(
    instance: &Structure,
    class: &BooleanClass,
    anchor1: Option<Anchor>,
    anchor0: Option<Anchor>,
) -> Result<CutGraph> {
    let n = instance.size();
    let constraints: Vec<(usize, &[usize])> = instance.constraints().collect();
    let mut forms = Vec::with_capacity(constraints.len());
    for &(rel, _) in &constraints {
        forms.push(witness_of(class, instance, rel)?.form());
    }

    let check = |anchor: Option<Anchor>, allowed: MonotoneForm, side: &str| -> Result<()> {
        match anchor {
            Some(Anchor::Constraint(c)) => match forms.get(c) {
                None => Err(Error::InvalidAnchor(format!("constraint {c} does not exist"))),
                Some(&form) if form != allowed && form != MonotoneForm::Mixed => Err(
                    Error::InvalidAnchor(format!("constraint {c} has form {form:?}; cannot force {side}")),
                ),
                Some(_) => Ok(()),
            },
            Some(Anchor::Variable(v)) if v >= n => {
                Err(Error::InvalidAnchor(format!("element {v} outside 0..{n}")))
            }
            _ => Ok(()),
        }
    };
    check(anchor1, MonotoneForm::Positive, "a 1")?;
    check(anchor0, MonotoneForm::Negative, "a 0")?;
    if let (Some(Anchor::Variable(u)), Some(Anchor::Variable(v))) = (anchor1, anchor0) {
        if u == v {
            return Err(Error::InvalidAnchor(format!("element {u} anchored to both sides")));
        }
    }

    let infinity = constraints.len() as u64 + 1;
    let mut net = FlowNetwork::new(FIRST_ELEMENT + n, F, T)?;
    for (c, &(rel, tuple)) in constraints.iter().enumerate() {
        let witness = witness_of(class, instance, rel)?;
        let as_one = anchor1 == Some(Anchor::Constraint(c));
        let as_zero = anchor0 == Some(Anchor::Constraint(c));

        let positive = witness.positive.as_ref().map(|p| {
            let node = net.add_node();
            for &i in p {
                net.add_arc(FIRST_ELEMENT + tuple[i], node, infinity)
                    .expect("gadget nodes are fresh");
            }
            node
        });
        let negative = witness.negative.as_ref().map(|q| {
            let node = net.add_node();
            for &j in q {
                net.add_arc(node, FIRST_ELEMENT + tuple[j], infinity)
                    .expect("gadget nodes are fresh");
            }
            node
        });
        let cost = |anchored: bool| if anchored { infinity } else { 1 };
        match (positive, negative) {
            (Some(e), None) => net.add_arc(e, T, cost(as_one))?,
            (None, Some(e_bar)) => net.add_arc(F, e_bar, cost(as_zero))?,
            (Some(e), Some(e_bar)) => {
                if as_one {
                    net.add_arc(e, T, infinity)?;
                }
                if as_zero {
                    net.add_arc(F, e_bar, infinity)?;
                }
                if !as_one && !as_zero {
                    net.add_arc(e, e_bar, 1)?;
                }
            }
            (None, None) => unreachable!("a witness has at least one side"),
        }
    }
    if let Some(Anchor::Variable(u)) = anchor1 {
        net.add_arc(FIRST_ELEMENT + u, T, infinity)?;
    }
    if let Some(Anchor::Variable(v)) = anchor0 {
        net.add_arc(F, FIRST_ELEMENT + v, infinity)?;
    }
    Ok(CutGraph {
        network: net,
        infinity,
        elements: n,
    })
}

pub fn solve_cut_graph(graph: &CutGraph) -> CutSolution {
    let cut = max_flow(&graph.network);
    let values = (0..graph.elements)
        .map(|a| usize::from(cut.sink_side[FIRST_ELEMENT + a]))
        .collect();
    CutSolution {
        value: cut.value,
        sink_side: cut.sink_side,
        assignment: Assignment::new(values),
    }
}

fn checked_class(template: &Structure) -> Result<BooleanClass> {
    let class = classify_boolean(template)?;
    if let Some(rel) = class.witnesses.iter().position(Option::is_none) {
        return Err(Error::NotTwoMonotone(template.signature().name(rel).to_string()));
    }
    Ok(class)
}

/// Optimal (not necessarily surjective) assignment via a single unanchored cut.
pub fn two_monotone_max_csp(instance: &Structure, template: &Structure) -> Result<Assignment> {
    validate(instance, template, false)?;
    let class = checked_class(template)?;
    let graph = build_cut_graph(instance, &class, None, None)?;
    Ok(solve_cut_graph(&graph).assignment)
}

/// Optimal surjective assignment for a 2-monotone Boolean template.
///
/// Tries every anchor pair, keeping the first pair that reaches the best
/// value: constraint pairs in index order, then (in [`AnchorMode::Extended`])
/// element pairs in index order.
pub fn two_monotone_solve(
    instance: &Structure,
    template: &Structure,
    mode: AnchorMode,
) -> Result<SolveReport> {
    let class = checked_class(template)?;
    validate(instance, template, true)?;

    let forms: Vec<MonotoneForm> = instance
        .constraints()
        .map(|(rel, _)| class.witnesses[rel].as_ref().expect("checked").form())
        .collect();
    let ones: Vec<usize> = (0..forms.len())
        .filter(|&c| forms[c] != MonotoneForm::Negative)
        .collect();
    let zeros: Vec<usize> = (0..forms.len())
        .filter(|&c| forms[c] != MonotoneForm::Positive)
        .collect();

    let mut pairs: Vec<(Anchor, Anchor)> = Vec::new();
    for &c1 in &ones {
        for &c0 in &zeros {
            if c1 != c0 || forms[c1] == MonotoneForm::Mixed {
                pairs.push((Anchor::Constraint(c1), Anchor::Constraint(c0)));
            }
        }
    }
    if mode == AnchorMode::Extended {
        let n = instance.size();
        for u in 0..n {
            for v in (0..n).filter(|&v| v != u) {
                pairs.push((Anchor::Variable(u), Anchor::Variable(v)));
            }
        }
    }

    let total = instance.tuple_count();
    let mut best: Option<(usize, Assignment)> = None;
    for &(one, zero) in &pairs {
        let graph = build_cut_graph(instance, &class, Some(one), Some(zero))?;
        let cut = solve_cut_graph(&graph);
        if !cut.is_feasible(&graph) || !is_surjective(&cut.assignment, 2) {
            continue;
        }
        let value = total - cut.value as usize;
        debug_assert_eq!(value, count_satisfied(instance, template, cut.assignment.values()));
        if best.as_ref().is_none_or(|(v, _)| value > *v) {
            best = Some((value, cut.assignment));
        }
    }
    let (value, assignment) = best.ok_or_else(|| {
        Error::NoAnchorPair(format!(
            "{} constraint anchor pairs, none feasible",
            pairs.len()
        ))
    })?;
    let bound = RatioBound::for_template(template).with_ratio(Rational::one());
    Ok(SolveReport::new(assignment, value, Mode::MinCut)
        .with_guarantee(bound)
        .with_choices(pairs.len() as u64))
}
