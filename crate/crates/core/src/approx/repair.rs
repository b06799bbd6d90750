use num_traits::{One, Zero};

use super::bound::RatioBound;
use super::expectation::derandomize;
use crate::error::{Error, Result};
use crate::exact::{brute_force_with_cap, search_space, two_monotone_max_csp};
use crate::rational::{from_int, Rational};
use crate::report::{Branch, Mode, SolveReport};
use crate::rng::{generator, uniform_below, Generator};
use crate::structure::{count_satisfied, is_surjective, missing_values, validate, Assignment, Structure};
use crate::templates::classify_boolean;

/// How [`repair`] picks the element moved onto each missing value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RepairStrategy {
    /// Uniformly among the candidates, from the seeded generator.
    Random { seed: u64 },
    /// The lowest-indexed candidate.
    FirstChoice,
    /// Every choice sequence; the best result wins, ties to the
    /// lexicographically smallest sequence.
    EnumerateAll,
}

struct Repairer<'a> {
    template: &'a Structure,
    constraints: Vec<(usize, &'a [usize])>,
    incident: Vec<Vec<usize>>,
    missing: Vec<usize>,
    values: Vec<usize>,
    counts: Vec<usize>,
    moved: Vec<bool>,
    score: usize,
    sequence: Vec<usize>,
    best: Option<(usize, Vec<usize>)>,
    leaves: u64,
    image: Vec<usize>,
}

impl<'a> Repairer<'a> {
    fn new(instance: &'a Structure, template: &'a Structure, h: &Assignment) -> Self {
        let constraints: Vec<(usize, &[usize])> = instance.constraints().collect();
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); instance.size()];
        for (c, (_, tuple)) in constraints.iter().enumerate() {
            for &a in *tuple {
                if incident[a].last() != Some(&c) {
                    incident[a].push(c);
                }
            }
        }
        let mut counts = vec![0; template.size()];
        for &v in h.values() {
            counts[v] += 1;
        }
        Self {
            template,
            constraints,
            incident,
            missing: missing_values(h.values(), template.size()),
            values: h.values().to_vec(),
            counts,
            moved: vec![false; instance.size()],
            score: count_satisfied(instance, template, h.values()),
            sequence: Vec::new(),
            best: None,
            leaves: 0,
            image: Vec::new(),
        }
    }

    /// Elements not yet moved whose value is shared with another element.
    fn candidates(&self) -> Vec<usize> {
        (0..self.values.len())
            .filter(|&x| !self.moved[x] && self.counts[self.values[x]] >= 2)
            .collect()
    }

    fn local_score(&mut self, x: usize) -> usize {
        let mut sat = 0;
        for &c in &self.incident[x] {
            let (rel, tuple) = self.constraints[c];
            self.image.clear();
            self.image.extend(tuple.iter().map(|&a| self.values[a]));
            if self.template.contains(rel, &self.image) {
                sat += 1;
            }
        }
        sat
    }

    fn set(&mut self, x: usize, value: usize) -> usize {
        let old = self.values[x];
        let before = self.local_score(x);
        self.counts[old] -= 1;
        self.counts[value] += 1;
        self.values[x] = value;
        self.score = self.score - before + self.local_score(x);
        old
    }

    fn descend(&mut self, level: usize) -> Result<()> {
        if level == self.missing.len() {
            self.leaves += 1;
            if self.best.as_ref().is_none_or(|(v, _)| self.score > *v) {
                self.best = Some((self.score, self.sequence.clone()));
            }
            return Ok(());
        }
        let target = self.missing[level];
        let candidates = self.candidates();
        if candidates.is_empty() {
            return Err(Error::NoSolution);
        }
        for x in candidates {
            let old = self.set(x, target);
            self.moved[x] = true;
            self.sequence.push(x);
            self.descend(level + 1)?;
            self.sequence.pop();
            self.moved[x] = false;
            self.set(x, old);
        }
        Ok(())
    }

    fn walk(&mut self, rng: Option<&mut Generator>) -> Result<()> {
        let mut rng = rng;
        for level in 0..self.missing.len() {
            let candidates = self.candidates();
            if candidates.is_empty() {
                return Err(Error::NoSolution);
            }
            let x = match rng.as_deref_mut() {
                Some(rng) => candidates[uniform_below(rng, candidates.len())],
                None => candidates[0],
            };
            self.set(x, self.missing[level]);
            self.moved[x] = true;
            self.sequence.push(x);
        }
        self.leaves = 1;
        Ok(())
    }
}

/// Makes `h` surjective by moving, for each missing value in ascending
/// order, one element whose value is shared onto that missing value.
///
/// The report's guarantee carries the structural factor
/// `1 - k_max·|B|/(|A| - |B|)` relative to the input's own ratio.
pub fn repair(
    instance: &Structure,
    template: &Structure,
    h: &Assignment,
    strategy: RepairStrategy,
) -> Result<SolveReport> {
    validate(instance, template, true)?;
    h.check(instance.size(), template.size())?;
    let bound = RatioBound::for_template(template);
    let factor = bound.repair_factor(template.size(), instance.size());
    let bound = RatioBound {
        structural_factor: factor,
        ..bound
    };
    let seed = match strategy {
        RepairStrategy::Random { seed } => Some(seed),
        _ => None,
    };

    if is_surjective(h, template.size()) {
        let value = count_satisfied(instance, template, h.values());
        return Ok(SolveReport::new(h.clone(), value, Mode::Approx2)
            .with_seed(seed)
            .with_guarantee(bound)
            .with_choices(0));
    }

    let mut repairer = Repairer::new(instance, template, h);
    let (value, sequence) = match strategy {
        RepairStrategy::EnumerateAll => {
            repairer.descend(0)?;
            repairer.best.take().expect("at least one leaf")
        }
        RepairStrategy::FirstChoice => {
            repairer.walk(None)?;
            (repairer.score, repairer.sequence.clone())
        }
        RepairStrategy::Random { seed } => {
            let mut rng = generator(seed);
            repairer.walk(Some(&mut rng))?;
            (repairer.score, repairer.sequence.clone())
        }
    };
    let mut values = h.values().to_vec();
    for (&x, &b) in sequence.iter().zip(&repairer.missing) {
        values[x] = b;
    }
    debug_assert_eq!(value, count_satisfied(instance, template, &values));
    Ok(SolveReport::new(Assignment::new(values), value, Mode::Approx2)
        .with_seed(seed)
        .with_guarantee(bound)
        .with_choices(repairer.leaves))
}

/// A Max-CSP solver usable as the first stage of [`ptas_solve`].
pub trait MaxCspSolver {
    fn solve(&self, instance: &Structure, template: &Structure) -> Result<Assignment>;
}

impl<F> MaxCspSolver for F
where
    F: Fn(&Structure, &Structure) -> Result<Assignment>,
{
    fn solve(&self, instance: &Structure, template: &Structure) -> Result<Assignment> {
        self(instance, template)
    }
}

/// Built-in Max-CSP solvers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InnerSolver {
    /// Every element to one value; optimal when that value's constant tuple
    /// lies in every relation.
    Constant(usize),
    /// Unanchored min cut; optimal for 2-monotone Boolean templates.
    MinCut,
    /// Conditional-expectation derandomization of the uniform random map.
    Derandomized,
    /// Exhaustive search under the given cap.
    Exhaustive { cap: u64 },
}

impl MaxCspSolver for InnerSolver {
    fn solve(&self, instance: &Structure, template: &Structure) -> Result<Assignment> {
        match *self {
            InnerSolver::Constant(v) => Ok(Assignment::constant(instance.size(), v)),
            InnerSolver::MinCut => two_monotone_max_csp(instance, template),
            InnerSolver::Derandomized => derandomize(instance, template, &vec![None; instance.size()]),
            InnerSolver::Exhaustive { cap } => {
                brute_force_with_cap(instance, template, false, cap).map(|r| r.assignment)
            }
        }
    }
}

/// Picks an inner solver for `template` with its guaranteed ratio: a constant
/// map when some constant tuple lies in every relation (ratio 1), min cut for
/// 2-monotone Boolean templates (ratio 1), else derandomization (`r_random`).
pub fn default_inner(template: &Structure) -> (InnerSolver, Rational) {
    let sig = template.signature();
    let valid = (0..template.size())
        .find(|&v| (0..sig.len()).all(|rel| template.contains(rel, &vec![v; sig.arity(rel)])));
    if let Some(v) = valid {
        return (InnerSolver::Constant(v), Rational::one());
    }
    if classify_boolean(template).is_ok_and(|c| c.two_monotone) {
        return (InnerSolver::MinCut, Rational::one());
    }
    (InnerSolver::Derandomized, super::bound::random_ratio(template))
}

/// `N0 = ⌊r·|B|·k_max/ε⌋ + |B|`.
pub fn ptas_cutoff(inner_ratio: Rational, template_size: usize, k_max: usize, epsilon: Rational) -> Result<u64> {
    if epsilon <= Rational::zero() {
        return Err(Error::InvalidArgument(format!("epsilon must be positive, got {epsilon}")));
    }
    let scaled = inner_ratio * from_int(template_size * k_max) / epsilon;
    Ok(scaled.floor().to_integer() as u64 + template_size as u64)
}

/// `(r - ε)`-approximation for Max-Sur-CSP from an `r`-approximate Max-CSP
/// solver: exhaustive search when `|A| <= N0`, otherwise the inner solver
/// followed by exhaustive [`repair`].
pub fn ptas_solve(
    instance: &Structure,
    template: &Structure,
    epsilon: Rational,
    inner: &dyn MaxCspSolver,
    inner_ratio: Rational,
    cap: u64,
) -> Result<SolveReport> {
    validate(instance, template, true)?;
    let k_max = template.signature().max_arity();
    let cutoff = ptas_cutoff(inner_ratio, template.size(), k_max, epsilon)?;
    let n = instance.size();
    let target = inner_ratio - epsilon;
    let mut report = if (n as u64) <= cutoff {
        if search_space(template.size(), n) > cap as u128 {
            return Err(Error::CutoffCapExceeded {
                cutoff,
                template_size: template.size(),
                instance_size: n,
                cap,
            });
        }
        let mut rep = brute_force_with_cap(instance, template, true, cap)?;
        rep.branch = Some(Branch::Exhaustive);
        rep
    } else {
        let h = inner.solve(instance, template)?;
        h.check(n, template.size())?;
        let mut rep = repair(instance, template, &h, RepairStrategy::EnumerateAll)?;
        rep.branch = Some(Branch::Repair);
        rep
    };
    let factor = report.guarantee.as_ref().and_then(|g| g.structural_factor);
    let mut bound = RatioBound::for_template(template);
    bound.structural_factor = factor;
    bound.ratio = (target > Rational::zero()).then_some(target);
    report.mode = Mode::Ptas;
    report.guarantee = Some(bound);
    report.cutoff = Some(cutoff);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{brute_force, DEFAULT_CAP};
    use crate::rational::rational;
    use crate::structure::{evaluate, Signature};
    use crate::templates;

    fn empty(template: &Structure, n: usize) -> Structure {
        Structure::new(template.signature().clone(), n, vec![vec![]; template.signature().len()]).unwrap()
    }

    #[test]
    fn surjective_input_is_returned() {
        let cut = templates::asymmetric_cut();
        let tri = templates::gallery_instance("asym-cut").unwrap();
        let h = Assignment::new(vec![0, 1, 1]);
        let rep = repair(&tri, &cut, &h, RepairStrategy::EnumerateAll).unwrap();
        assert_eq!(rep.assignment, h);
        assert_eq!(rep.value, 1);
    }

    #[test]
    fn constraint_free_enumeration() {
        let and = Structure::new(Signature::new([("R", 2)]).unwrap(), 2, vec![vec![vec![1, 1]]]).unwrap();
        let inst = empty(&and, 3);
        let rep = repair(&inst, &and, &Assignment::constant(3, 0), RepairStrategy::EnumerateAll).unwrap();
        assert_eq!(rep.choices_enumerated, Some(3));
        assert_eq!(rep.value, 0);
        assert_eq!(rep.assignment.values(), &[1, 0, 0]);
    }

    #[test]
    fn triangle_repair_reaches_surjective_optimum() {
        let cut = templates::asymmetric_cut();
        let tri = templates::gallery_instance("asym-cut").unwrap();
        let rep = repair(&tri, &cut, &Assignment::constant(3, 0), RepairStrategy::EnumerateAll).unwrap();
        assert_eq!(rep.value, 1);
        assert_eq!(rep.value, brute_force(&tri, &cut, true).unwrap().value);
        assert!(is_surjective(&rep.assignment, 2));
    }

    #[test]
    fn sequence_count_is_falling_factorial() {
        // t = 7 candidates, δ = 3 missing values: 7·6·5 sequences
        let c4 = templates::reflexive_cycle4();
        let inst = empty(&c4, 7);
        let rep = repair(&inst, &c4, &Assignment::constant(7, 0), RepairStrategy::EnumerateAll).unwrap();
        assert_eq!(rep.choices_enumerated, Some(7 * 6 * 5));
        assert!(is_surjective(&rep.assignment, 4));
    }

    #[test]
    fn first_choice_and_random_are_surjective() {
        let c6 = templates::cycle(6).unwrap();
        let inst = Structure::new(c6.signature().clone(), 9, vec![(0..8).map(|i| vec![i, i + 1]).collect()]).unwrap();
        let h = Assignment::new(vec![0, 1, 0, 1, 0, 1, 0, 1, 0]);
        let first = repair(&inst, &c6, &h, RepairStrategy::FirstChoice).unwrap();
        assert_eq!(first.assignment.values(), &[2, 3, 4, 5, 0, 1, 0, 1, 0]);
        for seed in 0..20 {
            let rep = repair(&inst, &c6, &h, RepairStrategy::Random { seed }).unwrap();
            assert!(is_surjective(&rep.assignment, 6));
            assert_eq!(rep.value, evaluate(&inst, &c6, &rep.assignment).unwrap().satisfied);
            assert_eq!(rep, repair(&inst, &c6, &h, RepairStrategy::Random { seed }).unwrap());
        }
    }

    #[test]
    fn too_small_instances_fail_validation() {
        let c6 = templates::cycle(6).unwrap();
        let inst = empty(&c6, 5);
        assert!(matches!(
            repair(&inst, &c6, &Assignment::constant(5, 0), RepairStrategy::EnumerateAll),
            Err(Error::NoSurjection { .. })
        ));
        let inst = empty(&c6, 7);
        assert!(repair(&inst, &c6, &Assignment::constant(6, 0), RepairStrategy::EnumerateAll).is_err());
    }

    #[test]
    fn cutoff_formula() {
        assert_eq!(ptas_cutoff(rational(1, 1), 2, 2, rational(1, 10)).unwrap(), 42);
        assert_eq!(ptas_cutoff(rational(1, 3), 6, 2, rational(1, 2)).unwrap(), 14);
        assert!(ptas_cutoff(rational(1, 1), 2, 2, rational(0, 1)).is_err());
    }

    #[test]
    fn small_instances_take_exhaustive_branch() {
        let cut = templates::asymmetric_cut();
        let tri = templates::gallery_instance("asym-cut").unwrap();
        let (inner, r) = default_inner(&cut);
        assert_eq!(inner, InnerSolver::Constant(1));
        let rep = ptas_solve(&tri, &cut, rational(1, 10), &inner, r, DEFAULT_CAP).unwrap();
        assert_eq!(rep.branch, Some(Branch::Exhaustive));
        assert_eq!(rep.cutoff, Some(42));
        assert_eq!(rep.value, 1);
        assert_eq!(rep.mode, Mode::Ptas);
        assert_eq!(rep.guarantee.unwrap().ratio, Some(rational(9, 10)));
    }

    #[test]
    fn large_instances_take_repair_branch() {
        let hp = templates::hard_but_ptas();
        let n = 30;
        let tuples: Vec<Vec<usize>> = (0..n - 2).map(|i| vec![i, i + 1, i + 2]).collect();
        let inst = Structure::new(hp.signature().clone(), n, vec![tuples]).unwrap();
        // N0 = ⌊1·2·3/1⌋ + 2 = 8
        let rep = ptas_solve(&inst, &hp, rational(1, 1), &InnerSolver::Constant(0), rational(1, 1), DEFAULT_CAP).unwrap();
        assert_eq!(rep.cutoff, Some(8));
        assert_eq!(rep.branch, Some(Branch::Repair));
        assert!(is_surjective(&rep.assignment, 2));
        let factor = rep.guarantee.unwrap().structural_factor.unwrap();
        assert_eq!(factor, rational(22, 28));
        assert!(from_int(rep.value) >= factor * from_int(n - 2));
    }

    #[test]
    fn cutoff_above_cap_is_reported() {
        let cut = templates::asymmetric_cut();
        let inst = empty(&cut, 30);
        let err = ptas_solve(&inst, &cut, rational(1, 10), &InnerSolver::Constant(1), rational(1, 1), DEFAULT_CAP)
            .unwrap_err();
        assert!(matches!(err, Error::CutoffCapExceeded { cutoff: 42, .. }));
        assert!(err.to_string().contains("N0 = 42"));
    }

    #[test]
    fn default_inner_choices() {
        assert_eq!(default_inner(&templates::hard_but_ptas()).0, InnerSolver::Constant(0));
        assert_eq!(default_inner(&templates::reflexive_cycle4()).0, InnerSolver::Constant(0));
        let c6 = templates::cycle(6).unwrap();
        assert_eq!(default_inner(&c6), (InnerSolver::Derandomized, rational(1, 3)));
        let and = Structure::new(Signature::new([("R", 2), ("S", 1)]).unwrap(), 2, vec![vec![vec![1, 1]], vec![vec![0]]]).unwrap();
        assert_eq!(default_inner(&and).0, InnerSolver::MinCut);
    }

    /// Exact expectation of the random strategy: average over candidates at
    /// each step, recursively.
    fn random_expectation(inst: &Structure, template: &Structure, values: &mut Vec<usize>, missing: &[usize], moved: &mut Vec<bool>) -> Rational {
        let Some((&b, rest)) = missing.split_first() else {
            return from_int(count_satisfied(inst, template, values));
        };
        let mut counts = vec![0; template.size()];
        for &v in values.iter() {
            counts[v] += 1;
        }
        let cands: Vec<usize> = (0..values.len()).filter(|&x| !moved[x] && counts[values[x]] >= 2).collect();
        let mut total = Rational::zero();
        for &x in &cands {
            let old = values[x];
            values[x] = b;
            moved[x] = true;
            total += random_expectation(inst, template, values, rest, moved);
            moved[x] = false;
            values[x] = old;
        }
        total / from_int(cands.len())
    }

    #[test]
    fn enumeration_beats_random_expectation() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for template in [templates::no_rainbow(), templates::hard_but_ptas(), templates::cycle(4).unwrap()] {
            let k = template.signature().arity(0);
            for _ in 0..30 {
                let n = rng.gen_range(template.size() as u64..8) as usize;
                let mut set = std::collections::BTreeSet::new();
                for _ in 0..rng.gen_range(0..10u64) {
                    set.insert((0..k).map(|_| rng.gen_range(0..n as u64) as usize).collect::<Vec<_>>());
                }
                let inst = Structure::new(template.signature().clone(), n, vec![set.into_iter().collect()]).unwrap();
                let h = Assignment::new((0..n).map(|_| rng.gen_range(0..2u64) as usize).collect());
                let rep = repair(&inst, &template, &h, RepairStrategy::EnumerateAll).unwrap();
                let missing = missing_values(h.values(), template.size());
                let expected = random_expectation(&inst, &template, &mut h.values().to_vec(), &missing, &mut vec![false; n]);
                assert!(from_int(rep.value) >= expected);
                assert!(is_surjective(&rep.assignment, template.size()));
            }
        }
    }
}
