//! Even integral lattices, Smith normal form and discriminant forms.

pub mod discriminant;
pub mod gram;
pub mod normal_form;
pub mod span;

pub use discriminant::{
    abs_det, discriminant_form, disc_forms_isometric, disc_forms_opposite, disc_forms_opposite_bounded, k3_complement_check,
    k3_complement_compatible, ComplementCheck, DiscriminantForm, DEFAULT_SEARCH_BOUND,
};
pub use gram::{named_lattice, parse_lattice, root_lattice, IntegralLattice, Signature};
pub use normal_form::{hermite_rows, smith_normal_form, SmithForm};
pub use span::{span_of_gram, SpannedLattice};
