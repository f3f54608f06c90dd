//! Exact symbolic intersection-theory calculator for moduli of smooth
//! complete intersections: equivariant Chern/Segre class calculus over
//! arbitrary-precision integers, discriminant divisor classes, Chow-ring
//! relation lists, and the Picard groups of the moduli stacks of smooth
//! curves of genus 3, 4 and 5.
//!
//! All arithmetic is exact; every headline value is an integer and every
//! test tolerance is zero.

pub mod abgroup;
pub mod chern;
pub mod gring;
pub mod moduli;
pub mod push;
pub mod symcalc;

pub use abgroup::{
    class_coordinates, quotient_structure, smith_normal_form, FGAbelian, GroupPresentation,
    IntMatrix, Snf,
};
pub use chern::{
    chern_of_difference, euler_omega_twist, omega_ring, schur_delta, total_segre, twist_chern,
    twist_segre, KClassRep,
};
pub use gring::{Poly, Ring};
pub use moduli::{
    alpha_factor, divisor_multiple, f_closed_form, f_divisor_class, f_relations, f_singular_class,
    g_closed_form, g_divisor_class, g_relations, g_singular_class, genus_pipeline,
    picard_presentation_fab, picard_presentation_gdmn, quadric_discriminant_class,
    DivisorClassExpr, FabSetup, GdmnSetup, ModuliError, PicardReport, Torsor,
};
pub use push::{pushforward_t, relation_coefficients, t_canonicalize, BundleRelation};
pub use symcalc::{elementary_symmetric, omega_chern_via_roots, symmetrize_to_chern, RootContext};
