use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{from_int, Rational};
use crate::structure::Structure;

/// Approximation guarantee attached to a solve.
///
/// `r_random` is the expected fraction of any single constraint satisfied by
/// a uniformly random map, minimized over relations: `min_i |R_i| / |B|^k_i`.
/// `structural_factor` is the instance-dependent loss of the surjective
/// constructions and `ratio` is the resulting Val/Opt guarantee, absent when
/// the factor is not positive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatioBound {
    #[serde(with = "crate::rational::text")]
    pub r_random: Rational,
    pub k_max: usize,
    #[serde(with = "crate::rational::text_opt", skip_serializing_if = "Option::is_none", default)]
    pub structural_factor: Option<Rational>,
    #[serde(with = "crate::rational::text_opt", default)]
    pub ratio: Option<Rational>,
}

impl RatioBound {
    pub fn for_template(template: &Structure) -> Self {
        Self {
            r_random: random_ratio(template),
            k_max: template.signature().max_arity(),
            structural_factor: None,
            ratio: None,
        }
    }

    pub fn with_ratio(mut self, ratio: Rational) -> Self {
        self.ratio = Some(ratio);
        self
    }

    /// `1 - k_max·|B|/|A|`.
    pub fn seeded_factor(&self, template_size: usize, instance_size: usize) -> Rational {
        if instance_size == 0 {
            return -Rational::one();
        }
        Rational::one() - from_int(self.k_max * template_size) / from_int(instance_size)
    }

    /// `1 - k_max·|B|/(|A| - |B|)`, undefined when `|A| <= |B|`.
    pub fn repair_factor(&self, template_size: usize, instance_size: usize) -> Option<Rational> {
        (instance_size > template_size).then(|| {
            Rational::one()
                - from_int(self.k_max * template_size) / from_int(instance_size - template_size)
        })
    }

    /// Records `factor` and sets `ratio = factor · base` when the factor is positive.
    pub fn scaled(mut self, factor: Option<Rational>, base: Rational) -> Self {
        self.ratio = factor.filter(|f| *f > Rational::zero()).map(|f| f * base);
        self.structural_factor = factor;
        self
    }
}

/// `min_i |R_i^B| / |B|^{k_i}`.
pub fn random_ratio(template: &Structure) -> Rational {
    let sig = template.signature();
    (0..sig.len())
        .map(|rel| {
            let denom = (template.size() as i128).pow(sig.arity(rel) as u32);
            Rational::new(template.tuples(rel).len() as i128, denom)
        })
        .min()
        .unwrap_or_else(Rational::zero)
}
