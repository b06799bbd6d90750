//! Named templates, Boolean template classification, and the polynomial
//! feasibility check for the asymmetric-cut template.

mod boolean;
mod gallery;

pub use boolean::{
    classify_boolean, monotone_witness, witness_relation, BooleanClass, MonotoneForm, Witness,
};
pub use gallery::{
    asym_cut_feasible, asymmetric_cut, by_name, cycle, gallery_instance, hard_but_ptas,
    no_rainbow, reflexive_cycle4, GALLERY_NAMES,
};
