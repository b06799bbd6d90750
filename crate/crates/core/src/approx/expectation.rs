use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::structure::{check_signatures, Assignment, Structure};

fn check_partial(instance: &Structure, template: &Structure, partial: &[Option<usize>]) -> Result<()> {
    check_signatures(instance, template)?;
    if partial.len() != instance.size() {
        return Err(Error::InvalidAssignment(format!(
            "partial assignment has length {}, instance has {} elements",
            partial.len(),
            instance.size()
        )));
    }
    if let Some((e, v)) = partial
        .iter()
        .enumerate()
        .find_map(|(e, v)| v.filter(|&v| v >= template.size()).map(|v| (e, v)))
    {
        return Err(Error::InvalidAssignment(format!(
            "element {e} maps to {v}, outside 0..{}",
            template.size()
        )));
    }
    Ok(())
}

/// Probability that `tuple` lands in relation `rel` when the unassigned
/// elements are drawn independently and uniformly.
///
/// Counts template tuples agreeing with the fixed entries and with the
/// repetition pattern of the free entries, over `|B|^(distinct free elements)`.
fn tuple_probability(template: &Structure, rel: usize, tuple: &[usize], partial: &[Option<usize>]) -> Rational {
    let mut free: Vec<usize> = Vec::with_capacity(tuple.len());
    for &a in tuple {
        if partial[a].is_none() && !free.contains(&a) {
            free.push(a);
        }
    }
    let compatible = template
        .tuples(rel)
        .iter()
        .filter(|t| {
            tuple.iter().enumerate().all(|(pos, &a)| match partial[a] {
                Some(v) => t[pos] == v,
                None => {
                    let first = tuple.iter().position(|&x| x == a).expect("present");
                    t[pos] == t[first]
                }
            })
        })
        .count();
    let denom = (template.size() as i128).pow(free.len() as u32);
    Rational::new(compatible as i128, denom)
}

/// Exact expected satisfied count when every unassigned element takes a
/// uniform random template value.
pub fn expected_value(instance: &Structure, template: &Structure, partial: &[Option<usize>]) -> Result<Rational> {
    check_partial(instance, template, partial)?;
    Ok(instance
        .constraints()
        .map(|(rel, tuple)| tuple_probability(template, rel, tuple, partial))
        .sum())
}

/// Completes `seed_partial` by conditional expectations: free elements are
/// fixed in index order to the value with the largest conditional
/// expectation (smallest value on ties).
pub fn derandomize(instance: &Structure, template: &Structure, seed_partial: &[Option<usize>]) -> Result<Assignment> {
    derandomize_trace(instance, template, seed_partial).map(|(h, _)| h)
}

/// [`derandomize`], also returning the conditional expectation before the
/// first step and after every step.
pub fn derandomize_trace(
    instance: &Structure,
    template: &Structure,
    seed_partial: &[Option<usize>],
) -> Result<(Assignment, Vec<Rational>)> {
    check_partial(instance, template, seed_partial)?;
    let n = instance.size();
    let constraints: Vec<(usize, &[usize])> = instance.constraints().collect();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (c, (_, tuple)) in constraints.iter().enumerate() {
        for &a in *tuple {
            if incident[a].last() != Some(&c) {
                incident[a].push(c);
            }
        }
    }

    let mut partial = seed_partial.to_vec();
    let mut expectation = expected_value(instance, template, &partial)?;
    let mut trace = vec![expectation];
    for e in 0..n {
        if partial[e].is_some() {
            continue;
        }
        let before: Rational = incident[e]
            .iter()
            .map(|&c| tuple_probability(template, constraints[c].0, constraints[c].1, &partial))
            .sum();
        let mut best: Option<(Rational, usize)> = None;
        for v in 0..template.size() {
            partial[e] = Some(v);
            let after: Rational = incident[e]
                .iter()
                .map(|&c| tuple_probability(template, constraints[c].0, constraints[c].1, &partial))
                .sum();
            if best.as_ref().is_none_or(|(b, _)| after > *b) {
                best = Some((after, v));
            }
        }
        let (after, v) = best.unwrap_or((Rational::zero(), 0));
        partial[e] = Some(v);
        expectation = expectation - before + after;
        trace.push(expectation);
    }
    let values = partial.into_iter().map(|v| v.expect("all fixed")).collect();
    Ok((Assignment::new(values), trace))
}
