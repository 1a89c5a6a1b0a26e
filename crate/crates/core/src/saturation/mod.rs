//! Forbidden families and the saturation decision procedure.

mod check;
mod family;
mod fast;

pub use check::{
    check_saturated, check_saturated_generic, contains_member, member_witness, saturation_gap, SaturationError,
    SaturationVerdict,
};
pub use family::{FamilyError, ForbiddenFamily, Member};
