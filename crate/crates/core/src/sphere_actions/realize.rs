use crate::permgroup::{construct, PermGroup, Permutation};

use super::{ActionDescriptor, RotationType, SlotKind, SphereError};

/// Which orbit a marked point belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrbitId {
    /// Index into the descriptor's slot list.
    Slot(usize),
    Free(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PointLabel {
    pub orbit: OrbitId,
    pub index: usize,
}

/// A concrete permutation action on the `r` marked points.
#[derive(Clone, Debug)]
pub struct Realization {
    pub group: PermGroup,
    pub labels: Vec<PointLabel>,
}

fn perm(n: usize, cycles: &[&[usize]]) -> Permutation {
    Permutation::from_cycles(n, cycles).expect("static permutation")
}

/// Generators of the point stabilizer for a slot, inside the standard model
/// returned by `construct`.
fn stabilizer_generators(rot: RotationType, kind: SlotKind, model: &PermGroup) -> Vec<Permutation> {
    let g = model.generators();
    match (rot, kind) {
        (RotationType::Cyclic(_), SlotKind::Poles) => g.to_vec(),
        (RotationType::Dihedral(2), SlotKind::AxisPair(0)) => vec![g[0].clone()],
        (RotationType::Dihedral(2), SlotKind::AxisPair(1)) => vec![g[1].clone()],
        (RotationType::Dihedral(2), SlotKind::AxisPair(_)) => vec![&g[0] * &g[1]],
        (RotationType::Dihedral(_), SlotKind::Poles) => vec![g[0].clone()],
        // reflection through vertex 0
        (RotationType::Dihedral(_), SlotKind::Vertices) => vec![g[1].clone()],
        // reflection through the midpoint of the edge {n-1, 0}
        (RotationType::Dihedral(_), SlotKind::Edges) => vec![&g[0] * &g[1]],
        (RotationType::Tetrahedral, SlotKind::Faces) => vec![perm(4, &[&[0, 1, 3]])],
        (RotationType::Tetrahedral, SlotKind::Edges) => vec![perm(4, &[&[0, 1], &[2, 3]])],
        (RotationType::Tetrahedral, SlotKind::Vertices) => vec![perm(4, &[&[0, 1, 2]])],
        (RotationType::Octahedral, SlotKind::Faces) => vec![perm(4, &[&[0, 1, 2, 3]])],
        // edge half-turns are the transpositions, not the double transpositions
        (RotationType::Octahedral, SlotKind::Edges) => vec![perm(4, &[&[0, 1]])],
        (RotationType::Octahedral, SlotKind::Vertices) => vec![perm(4, &[&[0, 1, 2]])],
        (RotationType::Icosahedral, SlotKind::Faces) => vec![perm(5, &[&[0, 1, 2, 3, 4]])],
        (RotationType::Icosahedral, SlotKind::Edges) => vec![perm(5, &[&[0, 1], &[2, 3]])],
        (RotationType::Icosahedral, SlotKind::Vertices) => vec![perm(5, &[&[0, 1, 2]])],
        _ => unreachable!("slot {kind:?} does not occur for {rot:?}"),
    }
}

/// Builds the action described by `d` on `r` points.
///
/// Each marked exceptional orbit is the action of the standard model on the
/// cosets of the matching point stabilizer; each free orbit is a regular
/// action. Points are laid out slot by slot, then free orbit by free orbit.
pub fn realize(d: &ActionDescriptor) -> Result<Realization, SphereError> {
    if !d.check_invariants() {
        return Err(SphereError::InfeasibleDescriptor(d.to_string()));
    }
    let rot = d.rotation();
    let model = construct(&rot.group_name())?;
    let mut blocks: Vec<PermGroup> = Vec::new();
    let mut labels = Vec::with_capacity(d.r());
    for (i, slot) in d.slots().iter().enumerate().filter(|(_, s)| s.marked) {
        let h = model.subgroup(stabilizer_generators(rot, slot.kind, &model))?;
        let action = model.coset_action(&h)?;
        if action.degree() != slot.length || h.order() != slot.stabilizer_order {
            return Err(SphereError::InfeasibleDescriptor(format!(
                "slot {:?} of {rot} realized with length {}",
                slot.kind,
                action.degree()
            )));
        }
        labels.extend((0..slot.length).map(|index| PointLabel {
            orbit: OrbitId::Slot(i),
            index,
        }));
        blocks.push(action);
    }
    if d.free_orbits() > 0 {
        let regular = model.coset_action(&PermGroup::trivial(model.degree()))?;
        for f in 0..d.free_orbits() {
            labels.extend((0..regular.degree()).map(|index| PointLabel {
                orbit: OrbitId::Free(f),
                index,
            }));
            blocks.push(regular.clone());
        }
    }
    let generators: Vec<Permutation> = (0..model.generators().len())
        .map(|gi| Permutation::disjoint_sum(blocks.iter().map(|b| &b.generators()[gi])))
        .collect();
    let group = PermGroup::generate(d.r(), generators, model.order())
        .map_err(|_| SphereError::InfeasibleDescriptor(format!("{d}: action is not faithful")))?;
    if group.order() != rot.order() {
        return Err(SphereError::InfeasibleDescriptor(format!("{d}: action is not faithful")));
    }
    Ok(Realization { group, labels })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn profile(real: &Realization) -> Vec<(usize, usize)> {
        let mut p: Vec<_> = real
            .group
            .orbits_and_stabilizers()
            .iter()
            .map(|o| (o.points.len(), o.stabilizer_order))
            .collect();
        p.sort_unstable();
        p
    }

    #[test]
    fn octahedral_all_marked() {
        let d = ActionDescriptor::new(26, RotationType::Octahedral, 0b111).unwrap();
        let real = realize(&d).unwrap();
        assert_eq!(real.group.order(), 24);
        assert_eq!(profile(&real), vec![(6, 4), (8, 3), (12, 2)]);
    }

    #[test]
    fn cyclic_five_one_pole_one_free() {
        let d = ActionDescriptor::new(6, RotationType::Cyclic(5), 0b1).unwrap();
        let real = realize(&d).unwrap();
        assert_eq!(real.group.order(), 5);
        assert_eq!(profile(&real), vec![(1, 5), (5, 1)]);
    }

    #[test]
    fn dihedral_three_poles_and_vertices() {
        let d = ActionDescriptor::new(5, RotationType::Dihedral(3), 0b011).unwrap();
        let real = realize(&d).unwrap();
        assert_eq!(real.group.order(), 6);
        assert_eq!(profile(&real), vec![(2, 3), (3, 2)]);
    }

    #[test]
    fn labels_follow_orbits() {
        let d = ActionDescriptor::new(18, RotationType::Dihedral(4), 0b111).unwrap();
        assert_eq!(d.free_orbits(), 1);
        let real = realize(&d).unwrap();
        assert_eq!(real.labels.len(), 18);
        for o in real.group.orbits_and_stabilizers() {
            let first = real.labels[o.points[0]].orbit;
            assert!(o.points.iter().all(|&p| real.labels[p].orbit == first));
        }
    }

    #[test]
    fn dihedral_even_vertices_and_edges_are_distinct_orbits() {
        let d = ActionDescriptor::new(12, RotationType::Dihedral(6), 0b110).unwrap();
        let real = realize(&d).unwrap();
        assert_eq!(profile(&real), vec![(6, 2), (6, 2)]);
    }
}
