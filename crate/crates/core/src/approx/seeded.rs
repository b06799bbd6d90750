use super::bound::RatioBound;
use super::expectation::derandomize;
use crate::error::Result;
use crate::report::{Mode, SolveReport};
use crate::rng::{generator, uniform_below};
use crate::structure::{count_satisfied, degrees, validate, Assignment, Structure};

/// Max-CSP baseline: a uniform random map (`randomized`) or its
/// derandomization by conditional expectations. The recorded guarantee is
/// `r_random`.
pub fn max_csp_approx(
    instance: &Structure,
    template: &Structure,
    randomized: bool,
    seed: u64,
) -> Result<SolveReport> {
    validate(instance, template, false)?;
    let h = if randomized {
        let mut rng = generator(seed);
        let values = (0..instance.size())
            .map(|_| uniform_below(&mut rng, template.size()))
            .collect();
        Assignment::new(values)
    } else {
        derandomize(instance, template, &vec![None; instance.size()])?
    };
    let value = count_satisfied(instance, template, h.values());
    let bound = RatioBound::for_template(template);
    let r = bound.r_random;
    Ok(SolveReport::new(h, value, Mode::ApproxRandom)
        .with_seed(randomized.then_some(seed))
        .with_guarantee(bound.with_ratio(r)))
}

/// Elements sorted by `(degree, index)`.
pub fn seeded_order(instance: &Structure) -> Vec<usize> {
    let deg = degrees(instance);
    let mut order: Vec<usize> = (0..instance.size()).collect();
    order.sort_by_key(|&e| (deg[e], e));
    order
}

/// Surjective approximation: the `|B|` lowest-degree elements are sent to
/// `0..|B|` in sorted order, the rest are drawn uniformly (`randomized`) or
/// completed by conditional expectations.
///
/// The recorded guarantee is `(1 - k_max·|B|/|A|) · r_random` when the
/// factor is positive.
pub fn approx_seeded(
    instance: &Structure,
    template: &Structure,
    randomized: bool,
    seed: u64,
) -> Result<SolveReport> {
    validate(instance, template, true)?;
    let b = template.size();
    let mut partial: Vec<Option<usize>> = vec![None; instance.size()];
    for (value, &e) in seeded_order(instance).iter().take(b).enumerate() {
        partial[e] = Some(value);
    }
    let h = if randomized {
        let mut rng = generator(seed);
        let values = partial
            .iter()
            .map(|v| v.unwrap_or_else(|| uniform_below(&mut rng, b)))
            .collect();
        Assignment::new(values)
    } else {
        derandomize(instance, template, &partial)?
    };
    let value = count_satisfied(instance, template, h.values());
    let bound = RatioBound::for_template(template);
    let factor = bound.seeded_factor(b, instance.size());
    let r = bound.r_random;
    Ok(SolveReport::new(h, value, Mode::ApproxSeeded)
        .with_seed(randomized.then_some(seed))
        .with_guarantee(bound.scaled(Some(factor), r)))
}
