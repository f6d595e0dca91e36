//! Conjugacy classes of finite subgroups of the mapping class group of the
//! marked sphere.
//!
//! Two actions at the same `r` are conjugate exactly when they have the
//! same rotation type, the same number of free orbits and the same multiset
//! of (orbit length, stabilizer order) over marked exceptional orbits.
//! Comparing orbit shapes instead of slot names identifies the two dual
//! vertex orbits of the tetrahedron and the vertex and edge orbits of a
//! dihedral polygon, which are exchanged by the normalizer.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::permgroup::GroupName;
use crate::sphere_actions::{enumerate_descriptors, is_maximal, ActionDescriptor, DescriptorRecord, RotationType};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassificationError {
    #[error("descriptors live at different r: {0} and {1}")]
    MismatchedR(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConjugacyInvariant {
    pub iso_label: GroupName,
    /// Sorted (length, stabilizer order) pairs of the marked exceptional orbits.
    pub marked_profile: Vec<(usize, usize)>,
    pub free_count: usize,
}

impl fmt::Display for ConjugacyInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let profile: Vec<String> = self
            .marked_profile
            .iter()
            .map(|(l, s)| format!("{l}/{s}"))
            .collect();
        write!(f, "{} [{}] k={}", self.iso_label, profile.join(" "), self.free_count)
    }
}

pub fn conjugacy_invariant(d: &ActionDescriptor) -> ConjugacyInvariant {
    let mut marked_profile: Vec<(usize, usize)> = d
        .marked_slots()
        .map(|s| (s.length, s.stabilizer_order))
        .collect();
    marked_profile.sort_unstable();
    ConjugacyInvariant {
        iso_label: d.rotation().group_name(),
        marked_profile,
        free_count: d.free_orbits(),
    }
}

pub fn are_conjugate(a: &ActionDescriptor, b: &ActionDescriptor) -> Result<bool, ClassificationError> {
    if a.r() != b.r() {
        return Err(ClassificationError::MismatchedR(a.r(), b.r()));
    }
    Ok(conjugacy_invariant(a) == conjugacy_invariant(b))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountMode {
    Enumerative,
    ClosedForm,
}

/// Number of conjugacy classes of subgroups isomorphic to `iso` at `r`.
/// Names that are not rotation groups (such as `Z2xA4`) count zero.
pub fn count_classes(r: usize, iso: &GroupName, mode: CountMode) -> usize {
    let Some(rot) = RotationType::from_group_name(iso) else {
        return 0;
    };
    if r < 3 || rot.validate().is_err() {
        return 0;
    }
    let descriptors = enumerate_descriptors(r, Some(rot));
    match mode {
        CountMode::Enumerative => {
            let mut invariants: Vec<_> = descriptors.iter().map(conjugacy_invariant).collect();
            invariants.sort();
            invariants.dedup();
            invariants.len()
        }
        CountMode::ClosedForm => {
            let two = match rot {
                RotationType::Cyclic(2) => r.is_multiple_of(2),
                RotationType::Dihedral(n) => {
                    let m = 2 * n as usize;
                    r.is_multiple_of(m) || (r - 2).is_multiple_of(m)
                }
                _ => false,
            };
            if two {
                2
            } else {
                usize::from(!descriptors.is_empty())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassRow {
    pub invariant: ConjugacyInvariant,
    /// First descriptor of the class in canonical order.
    pub representative: ActionDescriptor,
    pub maximal: bool,
}

/// One row per conjugacy class at `r`, ordered by representative.
pub fn class_table(r: usize) -> Vec<ClassRow> {
    let mut seen = BTreeSet::new();
    let mut rows = Vec::new();
    for d in enumerate_descriptors(r, None) {
        let inv = conjugacy_invariant(&d);
        if seen.insert(inv.clone()) {
            rows.push(ClassRow {
                invariant: inv,
                maximal: is_maximal(&d),
                representative: d,
            });
        }
    }
    rows
}

/// Per-descriptor row of the class-table JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassRecord {
    #[serde(flatten)]
    pub descriptor: DescriptorRecord,
    pub class_id: usize,
    /// Index of the class representative in the same list.
    pub conjugate_to: usize,
}

/// Every descriptor at `r` (optionally of one type) tagged with its class.
pub fn class_records(r: usize, rot: Option<RotationType>) -> Vec<ClassRecord> {
    let descriptors = enumerate_descriptors(r, rot);
    let mut classes: BTreeMap<ConjugacyInvariant, (usize, usize)> = BTreeMap::new();
    let mut out = Vec::with_capacity(descriptors.len());
    for (i, d) in descriptors.iter().enumerate() {
        let next_id = classes.len();
        let &mut (class_id, conjugate_to) = classes.entry(conjugacy_invariant(d)).or_insert((next_id, i));
        out.push(ClassRecord {
            descriptor: d.to_record(),
            class_id,
            conjugate_to,
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sphere_actions::SlotKind;

    fn d(r: usize, rot: RotationType, mask: u8) -> ActionDescriptor {
        ActionDescriptor::new(r, rot, mask).unwrap()
    }

    #[test]
    fn dual_tetrahedral_markings_agree() {
        let b = d(4, RotationType::Tetrahedral, 0b001);
        let e = d(4, RotationType::Tetrahedral, 0b100);
        assert_eq!(conjugacy_invariant(&b), conjugacy_invariant(&e));
        let dd = d(10, RotationType::Tetrahedral, 0b011);
        let g = d(10, RotationType::Tetrahedral, 0b110);
        assert!(are_conjugate(&dd, &g).unwrap());
    }

    #[test]
    fn involution_pole_markings_differ() {
        let both = d(6, RotationType::Cyclic(2), 0b11);
        let none = d(6, RotationType::Cyclic(2), 0);
        assert_ne!(conjugacy_invariant(&both), conjugacy_invariant(&none));
    }

    #[test]
    fn dihedral_vertices_and_edges_agree() {
        let v = ActionDescriptor::from_marked(RotationType::Dihedral(5), &[SlotKind::Vertices], 0).unwrap();
        let e = ActionDescriptor::from_marked(RotationType::Dihedral(5), &[SlotKind::Edges], 0).unwrap();
        assert_eq!(v.r(), 5);
        assert!(are_conjugate(&v, &e).unwrap());
    }

    #[test]
    fn different_types_or_r() {
        let z3 = d(3, RotationType::Cyclic(3), 0);
        let d3 = d(3, RotationType::Dihedral(3), 0b010);
        assert!(!are_conjugate(&z3, &d3).unwrap());
        assert!(are_conjugate(&z3, &z3).unwrap());
        let other = d(6, RotationType::Cyclic(3), 0);
        assert_eq!(are_conjugate(&z3, &other), Err(ClassificationError::MismatchedR(3, 6)));
    }

    #[test]
    fn class_counts() {
        use CountMode::*;
        for mode in [Enumerative, ClosedForm] {
            assert_eq!(count_classes(12, &GroupName::Dihedral(3), mode), 2);
            assert_eq!(count_classes(6, &GroupName::Cyclic(2), mode), 2);
            assert_eq!(count_classes(7, &GroupName::Cyclic(6), mode), 1);
            assert_eq!(count_classes(7, &GroupName::Icosahedral, mode), 0);
            assert_eq!(count_classes(12, &GroupName::SL2(3), mode), 0);
        }
    }

    #[test]
    fn maximal_rows_at_four() {
        let maximal: Vec<GroupName> = class_table(4)
            .into_iter()
            .filter(|row| row.maximal)
            .map(|row| row.invariant.iso_label)
            .collect();
        assert_eq!(maximal, vec![GroupName::Dihedral(4), GroupName::Tetrahedral]);
    }

    #[test]
    fn dihedral_three_rows_at_twelve() {
        let rows = class_table(12)
            .into_iter()
            .filter(|row| row.invariant.iso_label == GroupName::Dihedral(3))
            .count();
        assert_eq!(rows, 2);
    }

    #[test]
    fn maximality_is_a_class_property() {
        for r in 3..=120 {
            let table = class_table(r);
            for x in enumerate_descriptors(r, None) {
                let inv = conjugacy_invariant(&x);
                let row = table.iter().find(|row| row.invariant == inv).unwrap();
                assert_eq!(row.maximal, is_maximal(&x), "{x}");
            }
        }
    }

    #[test]
    fn records_point_at_representatives() {
        let records = class_records(12, None);
        for rec in &records {
            let rep = &records[rec.conjugate_to];
            assert_eq!(rep.class_id, rec.class_id);
            assert_eq!(rep.conjugate_to, rec.conjugate_to);
        }
        let json = serde_json::to_string(&records[0]).unwrap();
        assert!(json.ends_with(r#""maximal":false,"class_id":0,"conjugate_to":0}"#), "{json}");
    }
}
