//! Finite permutation groups: closure, orbits, coset actions, centers,
//! central quotients and isomorphism testing for small orders.

mod group;
mod isomorphism;
mod names;
mod perm;

pub use group::{OrbitInfo, PermGroup, DEFAULT_ORDER_CAP};
pub use isomorphism::{
    are_isomorphic, are_isomorphic_with_cap, find_isomorphism, CayleyTable, Fingerprint,
    DEFAULT_ISOMORPHISM_CAP,
};
pub use names::{canonical_name_list, construct, GroupName};
pub use perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PermGroupError {
    #[error("image list is not a bijection")]
    NotAPermutation,
    #[error("generator of degree {found} in a group of degree {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("group closure exceeded the order cap {cap}")]
    CapExceeded { cap: usize },
    #[error("not a subgroup")]
    NotASubgroup,
    #[error("not a central involution")]
    NotCentralInvolution,
    #[error("invalid group name `{0}`")]
    InvalidName(String),
}
