use crate::approx::RatioBound;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::report::{Mode, SolveReport};
use crate::structure::{validate, Assignment, Structure};
use num_traits::One;

/// Default limit on `|B|^|A|` for exhaustive search.
pub const DEFAULT_CAP: u64 = 20_000_000;

/// `|B|^|A|`, saturating at `u128::MAX`.
pub fn search_space(template_size: usize, instance_size: usize) -> u128 {
    (template_size as u128)
        .checked_pow(instance_size as u32)
        .unwrap_or(u128::MAX)
}

pub fn brute_force(instance: &Structure, template: &Structure, surjective: bool) -> Result<SolveReport> {
    brute_force_with_cap(instance, template, surjective, DEFAULT_CAP)
}

/// Maximizes the satisfied count over all maps (or all surjective maps).
///
/// Ties go to the lexicographically smallest assignment. Elements are fixed
/// in index order and each tuple is scored once its largest element is fixed.
pub fn brute_force_with_cap(
    instance: &Structure,
    template: &Structure,
    surjective: bool,
    cap: u64,
) -> Result<SolveReport> {
    validate(instance, template, surjective)?;
    let n = instance.size();
    let b = template.size();
    if search_space(b, n) > cap as u128 {
        return Err(Error::CapExceeded {
            template_size: b,
            instance_size: n,
            cap,
        });
    }

    let mut buckets: Vec<Vec<(usize, &[usize])>> = vec![Vec::new(); n];
    for (rel, tuple) in instance.constraints() {
        let last = *tuple.iter().max().expect("arity >= 1");
        buckets[last].push((rel, tuple));
    }

    let mut search = Search {
        template,
        buckets,
        surjective,
        values: vec![0; n],
        used: vec![0; b],
        missing: if surjective { b } else { 0 },
        image: Vec::new(),
        best: None,
        leaves: 0,
    };
    search.descend(0, 0);
    let (value, best) = search.best.ok_or(Error::NoSurjection {
        instance_size: n,
        template_size: b,
    })?;

    let mode = if surjective { Mode::ExactSur } else { Mode::Exact };
    let bound = RatioBound::for_template(template).with_ratio(Rational::one());
    Ok(SolveReport::new(Assignment::new(best), value, mode)
        .with_guarantee(bound)
        .with_choices(search.leaves))
}

struct Search<'a> {
    template: &'a Structure,
    buckets: Vec<Vec<(usize, &'a [usize])>>,
    surjective: bool,
    values: Vec<usize>,
    used: Vec<usize>,
    missing: usize,
    image: Vec<usize>,
    best: Option<(usize, Vec<usize>)>,
    leaves: u64,
}

impl Search<'_> {
    fn descend(&mut self, depth: usize, score: usize) {
        let n = self.values.len();
        if depth == n {
            self.leaves += 1;
            if self.best.as_ref().is_none_or(|(v, _)| score > *v) {
                self.best = Some((score, self.values.clone()));
            }
            return;
        }
        let remaining_after = n - depth - 1;
        for v in 0..self.template.size() {
            self.values[depth] = v;
            if self.surjective {
                self.used[v] += 1;
                if self.used[v] == 1 {
                    self.missing -= 1;
                }
                if self.missing > remaining_after {
                    self.release(v);
                    continue;
                }
            }
            let gained = self.score_bucket(depth);
            self.descend(depth + 1, score + gained);
            if self.surjective {
                self.release(v);
            }
        }
    }

    fn release(&mut self, v: usize) {
        self.used[v] -= 1;
        if self.used[v] == 0 {
            self.missing += 1;
        }
    }

    fn score_bucket(&mut self, depth: usize) -> usize {
        let mut gained = 0;
        for &(rel, tuple) in &self.buckets[depth] {
            self.image.clear();
            self.image.extend(tuple.iter().map(|&a| self.values[a]));
            if self.template.contains(rel, &self.image) {
                gained += 1;
            }
        }
        gained
    }
}
