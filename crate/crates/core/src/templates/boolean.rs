use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::structure::Structure;

/// Which disjuncts a 2-monotone witness uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MonotoneForm {
    /// `x_1 ∧ … ∧ x_p`
    Positive,
    /// `¬y_1 ∧ … ∧ ¬y_q`
    Negative,
    /// `(x_1 ∧ … ∧ x_p) ∨ (¬y_1 ∧ … ∧ ¬y_q)`
    Mixed,
}

/// A DNF description of a Boolean relation: the tuples whose `positive`
/// positions are all 1, or whose `negative` positions are all 0. Positions
/// are 0-based. An absent side contributes no disjunct.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub positive: Option<Vec<usize>>,
    pub negative: Option<Vec<usize>>,
}

impl Witness {
    pub fn form(&self) -> MonotoneForm {
        match (&self.positive, &self.negative) {
            (Some(_), None) => MonotoneForm::Positive,
            (None, Some(_)) => MonotoneForm::Negative,
            _ => MonotoneForm::Mixed,
        }
    }

    pub fn accepts(&self, tuple: &[usize]) -> bool {
        let pos = self
            .positive
            .as_ref()
            .is_some_and(|p| p.iter().all(|&i| tuple[i] == 1));
        let neg = self
            .negative
            .as_ref()
            .is_some_and(|q| q.iter().all(|&j| tuple[j] == 0));
        pos || neg
    }
}

/// Boolean template properties.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BooleanClass {
    pub zero_valid: bool,
    pub one_valid: bool,
    pub two_monotone: bool,
    /// One entry per relation, in signature order.
    pub witnesses: Vec<Option<Witness>>,
}

/// Candidate sets for one side of a witness: absent, then every nonempty
/// subset by increasing bitmask, then (only when `allow_empty`) the empty set.
fn side_candidates(arity: usize, allow_empty: bool) -> impl Iterator<Item = Option<u32>> + Clone {
    std::iter::once(None)
        .chain((1..1u32 << arity).map(Some))
        .chain(allow_empty.then_some(Some(0)))
}

fn positions(mask: u32, arity: usize) -> Vec<usize> {
    (0..arity).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Finds the first (P, Q) pair, in candidate order, whose DNF reproduces the
/// Boolean relation `tuples` of the given arity exactly.
pub fn monotone_witness(arity: usize, tuples: &[Vec<usize>]) -> Option<Witness> {
    assert!(arity < 32, "arity {arity} too large for exhaustive witness search");
    // Bit i of a tuple code is the value at position i.
    let mut member = vec![false; 1 << arity];
    for t in tuples {
        let code = t.iter().enumerate().fold(0usize, |acc, (i, &v)| acc | (v & 1) << i);
        member[code] = true;
    }
    let regenerates = |p: Option<u32>, q: Option<u32>| {
        member.iter().enumerate().all(|(code, &inside)| {
            let code = code as u32;
            let pos = p.is_some_and(|p| code & p == p);
            let neg = q.is_some_and(|q| code & q == 0);
            (pos || neg) == inside
        })
    };
    // Vacuous (empty) sides are tried only after every nonvacuous pair.
    for allow_empty in [false, true] {
        for p in side_candidates(arity, allow_empty) {
            for q in side_candidates(arity, allow_empty) {
                if p.is_none() && q.is_none() {
                    continue;
                }
                if regenerates(p, q) {
                    return Some(Witness {
                        positive: p.map(|m| positions(m, arity)),
                        negative: q.map(|m| positions(m, arity)),
                    });
                }
            }
        }
    }
    None
}

/// Expands a witness back into its relation, in lexicographic tuple order.
pub fn witness_relation(arity: usize, witness: &Witness) -> Vec<Vec<usize>> {
    (0..1usize << arity)
        .map(|code| {
            (0..arity)
                .map(|i| code >> (arity - 1 - i) & 1)
                .collect::<Vec<_>>()
        })
        .filter(|t| witness.accepts(t))
        .collect()
}

/// Classifies a Boolean template as 0-valid, 1-valid and/or 2-monotone.
pub fn classify_boolean(template: &Structure) -> Result<BooleanClass> {
    if template.size() != 2 {
        return Err(Error::NotBoolean(template.size()));
    }
    let sig = template.signature();
    let valid = |v: usize| (0..sig.len()).all(|rel| template.contains(rel, &vec![v; sig.arity(rel)]));
    let witnesses: Vec<Option<Witness>> = (0..sig.len())
        .map(|rel| monotone_witness(sig.arity(rel), template.tuples(rel)))
        .collect();
    Ok(BooleanClass {
        zero_valid: valid(0),
        one_valid: valid(1),
        two_monotone: witnesses.iter().all(Option::is_some),
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::Signature;
    use crate::templates::{asymmetric_cut, hard_but_ptas};

    fn boolean(arity: usize, tuples: Vec<Vec<usize>>) -> Structure {
        Structure::new(Signature::new([("R", arity)]).unwrap(), 2, vec![tuples]).unwrap()
    }

    #[test]
    fn conjunction_is_positive_form() {
        let class = classify_boolean(&boolean(2, vec![vec![1, 1]])).unwrap();
        assert!(class.two_monotone);
        assert!(!class.zero_valid);
        assert!(class.one_valid);
        let w = class.witnesses[0].as_ref().unwrap();
        assert_eq!(w.positive.as_deref(), Some(&[0, 1][..]));
        assert_eq!(w.negative, None);
        assert_eq!(w.form(), MonotoneForm::Positive);
    }

    #[test]
    fn xor_is_nothing() {
        let class = classify_boolean(&boolean(2, vec![vec![0, 1], vec![1, 0]])).unwrap();
        assert!(!class.two_monotone);
        assert!(!class.zero_valid);
        assert!(!class.one_valid);
        assert_eq!(class.witnesses, vec![None]);
    }

    #[test]
    fn hard_ptas_template() {
        let class = classify_boolean(&hard_but_ptas()).unwrap();
        assert!(class.zero_valid);
        assert!(!class.one_valid);
        assert!(!class.two_monotone);
    }

    #[test]
    fn asym_cut_fails_on_disjunction() {
        let class = classify_boolean(&asymmetric_cut()).unwrap();
        // x = y is (x ∧ y) ∨ (¬x ∧ ¬y)
        let eq = class.witnesses[0].as_ref().unwrap();
        assert_eq!(eq.positive.as_deref(), Some(&[0, 1][..]));
        assert_eq!(eq.negative.as_deref(), Some(&[0, 1][..]));
        // x ∨ y would need two positive disjuncts
        assert!(class.witnesses[1].is_none());
        assert!(!class.two_monotone);
        assert!(!class.zero_valid);
        assert!(class.one_valid);
    }

    #[test]
    fn implication_is_mixed_form() {
        // y → x, i.e. x ∨ ¬y
        let class = classify_boolean(&boolean(2, vec![vec![0, 0], vec![1, 0], vec![1, 1]])).unwrap();
        let w = class.witnesses[0].as_ref().unwrap();
        assert_eq!(w.form(), MonotoneForm::Mixed);
        assert_eq!(w.positive.as_deref(), Some(&[0][..]));
        assert_eq!(w.negative.as_deref(), Some(&[1][..]));
    }

    #[test]
    fn full_relation_has_nonvacuous_witness() {
        let all: Vec<Vec<usize>> = vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]];
        let w = monotone_witness(2, &all).unwrap();
        assert!(w.positive.as_ref().is_some_and(|p| !p.is_empty()));
        assert!(w.negative.as_ref().is_some_and(|q| !q.is_empty()));
        assert_eq!(witness_relation(2, &w), all);
    }

    #[test]
    fn empty_relation_is_not_two_monotone() {
        assert_eq!(monotone_witness(2, &[]), None);
    }

    #[test]
    fn rejects_non_boolean() {
        assert_eq!(classify_boolean(&crate::templates::no_rainbow()), Err(Error::NotBoolean(3)));
    }

    #[test]
    fn witnesses_round_trip_for_every_ternary_relation() {
        for mask in 0u32..256 {
            let tuples: Vec<Vec<usize>> = (0..8usize)
                .filter(|code| mask >> code & 1 == 1)
                .map(|code| vec![code >> 2 & 1, code >> 1 & 1, code & 1])
                .collect();
            if let Some(w) = monotone_witness(3, &tuples) {
                assert_eq!(witness_relation(3, &w), tuples);
            }
        }
    }
}
