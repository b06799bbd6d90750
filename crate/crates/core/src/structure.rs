//! Relational structures, assignments and evaluation.
//!
//! Elements of a structure are the dense indices `0..size`. Instances and
//! templates use the same [`Structure`] type; a solver maps instance elements
//! to template elements through an [`Assignment`].

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tuple sets whose index space is at most this large get a dense bitmap.
const DENSE_INDEX_LIMIT: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RelationSymbol {
    pub name: String,
    pub arity: usize,
}

/// An ordered, nonempty list of relation symbols with their arities.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    relations: Vec<RelationSymbol>,
}

impl Signature {
    pub fn new<S: Into<String>>(relations: impl IntoIterator<Item = (S, usize)>) -> Result<Self> {
        let relations: Vec<RelationSymbol> = relations
            .into_iter()
            .map(|(name, arity)| RelationSymbol {
                name: name.into(),
                arity,
            })
            .collect();
        if relations.is_empty() {
            return Err(Error::InvalidSignature("no relations".into()));
        }
        let mut seen = HashSet::new();
        for rel in &relations {
            if rel.name.is_empty() {
                return Err(Error::InvalidSignature("empty relation name".into()));
            }
            if rel.arity == 0 {
                return Err(Error::InvalidSignature(format!(
                    "relation `{}` has arity 0",
                    rel.name
                )));
            }
            if !seen.insert(rel.name.as_str()) {
                return Err(Error::InvalidSignature(format!(
                    "duplicate relation name `{}`",
                    rel.name
                )));
            }
        }
        Ok(Self { relations })
    }

    pub fn relations(&self) -> &[RelationSymbol] {
        &self.relations
    }

    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn name(&self, rel: usize) -> &str {
        &self.relations[rel].name
    }

    pub fn arity(&self, rel: usize) -> usize {
        self.relations[rel].arity
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.relations.iter().position(|r| r.name == name)
    }

    /// Largest arity over all relations.
    pub fn max_arity(&self) -> usize {
        self.relations.iter().map(|r| r.arity).max().unwrap_or(0)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .relations
            .iter()
            .map(|r| format!("{}/{}", r.name, r.arity))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[derive(Debug, Clone)]
enum Membership {
    Dense(Vec<bool>),
    Sparse(HashSet<Vec<usize>>),
}

/// A finite relational structure over the domain `0..size`.
///
/// Immutable after construction. Tuple storage order is preserved as given;
/// it affects no result.
#[derive(Debug, Clone)]
pub struct Structure {
    signature: Signature,
    size: usize,
    tuples: Vec<Vec<Vec<usize>>>,
    membership: Vec<Membership>,
}

impl PartialEq for Structure {
    fn eq(&self, other: &Self) -> bool {
        self.signature == other.signature && self.size == other.size && self.tuples == other.tuples
    }
}

impl Eq for Structure {}

impl Structure {
    /// Builds a structure; `tuples[i]` holds the tuples of relation `i`.
    ///
    /// Rejects out-of-range entries, arity mismatches and duplicate tuples.
    pub fn new(signature: Signature, size: usize, tuples: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        if tuples.len() != signature.len() {
            return Err(Error::InvalidStructure(format!(
                "expected tuple sets for {} relations, got {}",
                signature.len(),
                tuples.len()
            )));
        }
        let mut membership = Vec::with_capacity(tuples.len());
        for (rel, set) in tuples.iter().enumerate() {
            let name = signature.name(rel);
            let arity = signature.arity(rel);
            let mut seen: HashSet<&[usize]> = HashSet::with_capacity(set.len());
            for (t, tuple) in set.iter().enumerate() {
                if tuple.len() != arity {
                    return Err(Error::InvalidStructure(format!(
                        "relation `{name}` tuple {t} has length {}, expected arity {arity}",
                        tuple.len()
                    )));
                }
                if let Some(&bad) = tuple.iter().find(|&&e| e >= size) {
                    return Err(Error::InvalidStructure(format!(
                        "relation `{name}` tuple {t} has entry {bad} outside 0..{size}"
                    )));
                }
                if !seen.insert(tuple.as_slice()) {
                    return Err(Error::InvalidStructure(format!(
                        "relation `{name}` has duplicate tuple {tuple:?}"
                    )));
                }
            }
            membership.push(Self::index(size, arity, set));
        }
        Ok(Self {
            signature,
            size,
            tuples,
            membership,
        })
    }

    /// Convenience constructor taking tuple sets keyed by relation name.
    pub fn from_named<S: AsRef<str>>(
        signature: Signature,
        size: usize,
        named: impl IntoIterator<Item = (S, Vec<Vec<usize>>)>,
    ) -> Result<Self> {
        let mut tuples: Vec<Option<Vec<Vec<usize>>>> = vec![None; signature.len()];
        for (name, set) in named {
            let name = name.as_ref();
            let rel = signature.index_of(name).ok_or_else(|| {
                Error::InvalidStructure(format!("relation `{name}` is not in the signature"))
            })?;
            if tuples[rel].replace(set).is_some() {
                return Err(Error::InvalidStructure(format!(
                    "relation `{name}` given twice"
                )));
            }
        }
        let tuples = tuples.into_iter().map(Option::unwrap_or_default).collect();
        Self::new(signature, size, tuples)
    }

    fn index(size: usize, arity: usize, set: &[Vec<usize>]) -> Membership {
        match dense_len(size, arity) {
            Some(len) => {
                let mut bits = vec![false; len];
                for tuple in set {
                    bits[encode(size, tuple)] = true;
                }
                Membership::Dense(bits)
            }
            None => Membership::Sparse(set.iter().cloned().collect()),
        }
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn tuples(&self, rel: usize) -> &[Vec<usize>] {
        &self.tuples[rel]
    }

    pub fn relation(&self, name: &str) -> Option<&[Vec<usize>]> {
        self.signature.index_of(name).map(|rel| self.tuples(rel))
    }

    /// Total number of tuples over all relations.
    pub fn tuple_count(&self) -> usize {
        self.tuples.iter().map(Vec::len).sum()
    }

    /// `|A| + Σ|R_i|`, the usual measure of an instance's input size.
    pub fn total_size(&self) -> usize {
        self.size + self.tuple_count()
    }

    /// Membership test. `tuple` must have the relation's arity.
    pub fn contains(&self, rel: usize, tuple: &[usize]) -> bool {
        if tuple.iter().any(|&e| e >= self.size) {
            return false;
        }
        match &self.membership[rel] {
            Membership::Dense(bits) => bits[encode(self.size, tuple)],
            Membership::Sparse(set) => set.contains(tuple),
        }
    }

    /// Iterates `(relation index, tuple)` over every tuple.
    pub fn constraints(&self) -> impl Iterator<Item = (usize, &[usize])> + '_ {
        self.tuples
            .iter()
            .enumerate()
            .flat_map(|(rel, set)| set.iter().map(move |t| (rel, t.as_slice())))
    }

    /// Same signature, a different domain size and tuple sets.
    pub fn with_size(&self, size: usize) -> Result<Self> {
        Self::new(self.signature.clone(), size, self.tuples.clone())
    }
}

fn dense_len(size: usize, arity: usize) -> Option<usize> {
    let mut len: usize = 1;
    for _ in 0..arity {
        len = len.checked_mul(size.max(1))?;
        if len > DENSE_INDEX_LIMIT {
            return None;
        }
    }
    Some(len)
}

fn encode(size: usize, tuple: &[usize]) -> usize {
    tuple.iter().fold(0, |acc, &e| acc * size + e)
}

/// A total map from instance elements to template elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Assignment(Vec<usize>);

impl Assignment {
    pub fn new(values: Vec<usize>) -> Self {
        Self(values)
    }

    /// The constant map sending all `len` elements to `value`.
    pub fn constant(len: usize, value: usize) -> Self {
        Self(vec![value; len])
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, element: usize) -> usize {
        self.0[element]
    }

    pub fn into_inner(self) -> Vec<usize> {
        self.0
    }

    /// Checks totality over `instance_size` elements and the value range.
    pub fn check(&self, instance_size: usize, template_size: usize) -> Result<()> {
        if self.0.len() != instance_size {
            return Err(Error::InvalidAssignment(format!(
                "length {} does not match instance size {instance_size}",
                self.0.len()
            )));
        }
        if let Some((e, &v)) = self.0.iter().enumerate().find(|(_, &v)| v >= template_size) {
            return Err(Error::InvalidAssignment(format!(
                "element {e} maps to {v}, outside 0..{template_size}"
            )));
        }
        Ok(())
    }
}

impl From<Vec<usize>> for Assignment {
    fn from(values: Vec<usize>) -> Self {
        Self(values)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationCount {
    pub name: String,
    pub satisfied: usize,
    pub total: usize,
}

/// Satisfied-constraint count with a per-relation breakdown.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalResult {
    pub satisfied: usize,
    pub per_relation: Vec<RelationCount>,
}

/// Fails unless both structures carry the same signature.
pub fn check_signatures(instance: &Structure, template: &Structure) -> Result<()> {
    let (a, b) = (instance.signature(), template.signature());
    if a == b {
        return Ok(());
    }
    for rel in a.relations() {
        match b.index_of(&rel.name) {
            None => {
                return Err(Error::SignatureMismatch(format!(
                    "instance relation `{}` is absent from the template",
                    rel.name
                )))
            }
            Some(j) if b.arity(j) != rel.arity => {
                return Err(Error::SignatureMismatch(format!(
                    "relation `{}` has arity {} in the instance but {} in the template",
                    rel.name,
                    rel.arity,
                    b.arity(j)
                )))
            }
            Some(_) => {}
        }
    }
    Err(Error::SignatureMismatch(format!(
        "instance signature {a} differs from template signature {b}"
    )))
}

/// Counts the instance tuples that `h` carries into the template.
pub fn evaluate(instance: &Structure, template: &Structure, h: &Assignment) -> Result<EvalResult> {
    check_signatures(instance, template)?;
    h.check(instance.size(), template.size())?;
    let mut image = Vec::new();
    let per_relation: Vec<RelationCount> = (0..instance.signature().len())
        .map(|rel| {
            let satisfied = instance
                .tuples(rel)
                .iter()
                .filter(|tuple| {
                    image.clear();
                    image.extend(tuple.iter().map(|&a| h.get(a)));
                    template.contains(rel, &image)
                })
                .count();
            RelationCount {
                name: instance.signature().name(rel).to_string(),
                satisfied,
                total: instance.tuples(rel).len(),
            }
        })
        .collect();
    Ok(EvalResult {
        satisfied: per_relation.iter().map(|r| r.satisfied).sum(),
        per_relation,
    })
}

/// Unchecked satisfied count; callers guarantee compatible inputs.
pub(crate) fn count_satisfied(instance: &Structure, template: &Structure, values: &[usize]) -> usize {
    let mut image = Vec::with_capacity(instance.signature().max_arity());
    instance
        .constraints()
        .filter(|(rel, tuple)| {
            image.clear();
            image.extend(tuple.iter().map(|&a| values[a]));
            template.contains(*rel, &image)
        })
        .count()
}

/// True iff every template element `0..template_size` is hit by `h`.
pub fn is_surjective(h: &Assignment, template_size: usize) -> bool {
    let mut hit = vec![false; template_size];
    let mut missing = template_size;
    for &v in h.values() {
        if v < template_size && !hit[v] {
            hit[v] = true;
            missing -= 1;
        }
    }
    missing == 0
}

/// Template elements not in the image of `values`, ascending.
pub fn missing_values(values: &[usize], template_size: usize) -> Vec<usize> {
    let mut hit = vec![false; template_size];
    for &v in values {
        if v < template_size {
            hit[v] = true;
        }
    }
    (0..template_size).filter(|&b| !hit[b]).collect()
}

/// Occurrences of `element` over all tuples of all relations, with multiplicity.
pub fn degree(instance: &Structure, element: usize) -> Result<usize> {
    if element >= instance.size() {
        return Err(Error::InvalidArgument(format!(
            "element {element} outside 0..{}",
            instance.size()
        )));
    }
    Ok(instance
        .constraints()
        .map(|(_, t)| t.iter().filter(|&&e| e == element).count())
        .sum())
}

/// Degrees of every element, in element order.
pub fn degrees(instance: &Structure) -> Vec<usize> {
    let mut deg = vec![0; instance.size()];
    for (_, tuple) in instance.constraints() {
        for &e in tuple {
            deg[e] += 1;
        }
    }
    deg
}

/// Checks that `instance` can be solved against `template`.
///
/// In surjective mode the instance must have at least as many elements as the
/// template.
pub fn validate(instance: &Structure, template: &Structure, surjective: bool) -> Result<()> {
    check_signatures(instance, template)?;
    if template.size() == 0 {
        return Err(Error::InvalidStructure("template domain is empty".into()));
    }
    if surjective && instance.size() < template.size() {
        return Err(Error::NoSurjection {
            instance_size: instance.size(),
            template_size: template.size(),
        });
    }
    Ok(())
}
