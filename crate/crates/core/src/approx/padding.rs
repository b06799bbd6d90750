use crate::error::{Error, Result};
use crate::structure::{check_signatures, Assignment, Structure};

/// Adds `|B|` elements that occur in no tuple.
///
/// The surjective optimum of the padded instance equals the unrestricted
/// optimum of the original: any map can be made surjective by sending the
/// new elements onto `0..|B|`.
pub fn pad_instance(instance: &Structure, template: &Structure) -> Result<Structure> {
    check_signatures(instance, template)?;
    instance.with_size(instance.size() + template.size())
}

/// Restricts a map on the padded instance to the original elements.
pub fn unpad_solution(h: &Assignment, original_size: usize, template_size: usize) -> Result<Assignment> {
    if h.len() != original_size + template_size {
        return Err(Error::InvalidAssignment(format!(
            "padded assignment has length {}, expected {original_size} + {template_size}",
            h.len()
        )));
    }
    Ok(Assignment::new(h.values()[..original_size].to_vec()))
}
