//! Maximality of finite actions and explicit maximal extensions.

use crate::permgroup::{canonical_name_list, GroupName};

use super::{enumerate_descriptors, feasible_free_count, ActionDescriptor, RotationType, SlotKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MaximalMode {
    /// Residue conditions on `r`, transcribed directly.
    Congruence,
    /// Isomorphism types of the feasible descriptors that pass
    /// [`is_maximal`].
    Derived,
}

const V: u8 = 0b010; // dihedral vertices slot
const P: u8 = 0b001; // dihedral pole pair
const TETRA_VERTICES: u8 = 0b100;

fn dihedral_length_slots(d: &ActionDescriptor) -> usize {
    d.is_marked(SlotKind::Vertices) as usize + d.is_marked(SlotKind::Edges) as usize
}

pub fn is_maximal(d: &ActionDescriptor) -> bool {
    let r = d.r();
    let k = d.free_orbits();
    match d.rotation() {
        RotationType::Cyclic(_) => k == 1 && d.marked_count() == 1 && r != 3 && r != 4,
        // the Klein group is never maximal: it sits in D4 or in a larger dihedral group
        RotationType::Dihedral(2) => false,
        RotationType::Dihedral(n) => {
            let n = n as usize;
            let poles = d.is_marked(SlotKind::Poles);
            k == 0
                && dihedral_length_slots(d) == 1
                && if poles {
                    n + 2 == r && (r == 5 || r >= 7)
                } else {
                    n == r
                }
        }
        RotationType::Tetrahedral => d.is_marked(SlotKind::Vertices) != d.is_marked(SlotKind::Faces),
        RotationType::Octahedral | RotationType::Icosahedral => true,
    }
}

fn descriptor(r: usize, rot: RotationType, mask: u8) -> ActionDescriptor {
    ActionDescriptor::new(r, rot, mask).expect("extension target is feasible")
}

/// One step towards a maximal finite group containing `d`: a descriptor at
/// the same `r` of a strictly larger group whose action contains the action
/// of `d` after relabeling points. `None` when `d` is maximal.
pub fn extension_step(d: &ActionDescriptor) -> Option<ActionDescriptor> {
    if is_maximal(d) {
        return None;
    }
    let r = d.r();
    let k = d.free_orbits();
    let step = match d.rotation() {
        RotationType::Cyclic(n) => {
            let poles = d.marked_count();
            if k > 1 {
                // the regular cyclic action on the s = n k free points
                descriptor(r, RotationType::Cyclic(n * k as u32), d.marked_mask())
            } else {
                match (poles, r) {
                    (1, 3) => descriptor(3, RotationType::Dihedral(3), V),
                    (1, 4) => descriptor(4, RotationType::Tetrahedral, TETRA_VERTICES),
                    (0, _) => descriptor(r, RotationType::Dihedral(n), V),
                    (2, _) if n == 2 => descriptor(r, RotationType::Dihedral(2), 0b011),
                    (2, _) => descriptor(r, RotationType::Dihedral(n), P | V),
                    _ => unreachable!("maximal cyclic descriptor {d}"),
                }
            }
        }
        RotationType::Dihedral(2) => {
            if d.marked_count() == 0 {
                descriptor(r, RotationType::Dihedral(r as u32), V)
            } else if r == 4 {
                descriptor(4, RotationType::Dihedral(4), V)
            } else {
                descriptor(r, RotationType::Dihedral(r as u32 - 2), P | V)
            }
        }
        RotationType::Dihedral(n) => {
            let poles = d.is_marked(SlotKind::Poles);
            // every point with trivial stabilizer in the rotation subgroup
            // goes onto one regular polygon
            let s = r - 2 * poles as usize;
            if s == n as usize {
                // D4 with poles and one square orbit at r = 6
                debug_assert_eq!((n, r), (4, 6));
                descriptor(6, RotationType::Octahedral, 0b001)
            } else {
                descriptor(r, RotationType::Dihedral(s as u32), if poles { P | V } else { V })
            }
        }
        RotationType::Tetrahedral => {
            // the faces and vertices merge into the cube's vertex orbit;
            // exactly one octahedral marking fits a given r
            let mut targets = enumerate_descriptors(r, Some(RotationType::Octahedral));
            debug_assert_eq!(targets.len(), 1);
            targets.remove(0)
        }
        RotationType::Octahedral | RotationType::Icosahedral => unreachable!(),
    };
    Some(step)
}

/// The full chain `d -> ... -> maximal`, excluding `d` itself.
pub fn extension_chain(d: &ActionDescriptor) -> Vec<ActionDescriptor> {
    let mut chain = Vec::new();
    let mut current = d.clone();
    while let Some(next) = extension_step(&current) {
        chain.push(next.clone());
        current = next;
    }
    chain
}

pub fn maximal_extension(d: &ActionDescriptor) -> Option<ActionDescriptor> {
    extension_chain(d).pop()
}

pub fn maximal_types(r: usize, mode: MaximalMode) -> Vec<GroupName> {
    if r < 3 {
        return Vec::new();
    }
    let names = match mode {
        MaximalMode::Derived => enumerate_descriptors(r, None)
            .iter()
            .filter(|d| is_maximal(d))
            .map(|d| d.rotation().group_name())
            .collect(),
        MaximalMode::Congruence => {
            let mut names = Vec::new();
            if r != 4 {
                names.push(GroupName::Cyclic(r as u32 - 1));
            }
            names.push(GroupName::Dihedral(r as u32));
            if r == 5 || r >= 7 {
                names.push(GroupName::Dihedral(r as u32 - 2));
            }
            if [4, 10].contains(&(r % 12)) {
                names.push(GroupName::Tetrahedral);
            }
            if [0, 2, 6, 8, 12, 14, 18, 20].contains(&(r % 24)) {
                names.push(GroupName::Octahedral);
            }
            if [0, 2, 12, 20, 30, 32, 42, 50].contains(&(r % 60)) {
                names.push(GroupName::Icosahedral);
            }
            names
        }
    };
    canonical_name_list(names)
}

/// Whether some finite action at `r` has an element of order `n`, decided
/// from cyclic descriptor feasibility.
pub fn order_n_element_exists(r: usize, n: usize) -> bool {
    if r < 3 || n < 2 {
        return false;
    }
    let rot = RotationType::Cyclic(n as u32);
    [0b00, 0b01, 0b11].iter().any(|&mask| feasible_free_count(r, rot, mask).is_some())
}
