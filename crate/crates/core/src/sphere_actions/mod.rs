//! Combinatorial model of finite group actions on the sphere with `r`
//! marked points.
//!
//! A finite group acting on the sphere is one of the rotation groups
//! (cyclic, dihedral, tetrahedral, octahedral, icosahedral). Points with
//! nontrivial stabilizer fall into a fixed list of exceptional orbits; an
//! action on the marked sphere is determined up to conjugacy by which of
//! those orbits are marked and by the number `k` of free marked orbits,
//! subject to
//!
//! ```text
//! r = |G| * k + (sum of lengths of marked exceptional orbits)
//! ```

mod maximal;
mod realize;

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::permgroup::{GroupName, PermGroupError};

pub use maximal::{
    extension_chain, extension_step, is_maximal, maximal_extension, maximal_types,
    order_n_element_exists, MaximalMode,
};
pub use realize::{realize, OrbitId, PointLabel, Realization};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SphereError {
    #[error("invalid rotation type: {0}")]
    InvalidRotation(String),
    #[error("infeasible descriptor: {0}")]
    InfeasibleDescriptor(String),
    #[error(transparent)]
    Group(#[from] PermGroupError),
}

/// Finite rotation group of the sphere.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RotationType {
    Cyclic(u32),
    Dihedral(u32),
    Tetrahedral,
    Octahedral,
    Icosahedral,
}

impl RotationType {
    pub fn order(&self) -> usize {
        match self {
            RotationType::Cyclic(n) => *n as usize,
            RotationType::Dihedral(n) => 2 * *n as usize,
            RotationType::Tetrahedral => 12,
            RotationType::Octahedral => 24,
            RotationType::Icosahedral => 60,
        }
    }

    pub fn validate(&self) -> Result<(), SphereError> {
        match self {
            RotationType::Cyclic(n) | RotationType::Dihedral(n) if *n < 2 => {
                Err(SphereError::InvalidRotation(format!("{self:?}")))
            }
            _ => Ok(()),
        }
    }

    /// Lower-case tag used in JSON output and for ordering.
    pub fn tag(&self) -> &'static str {
        match self {
            RotationType::Cyclic(_) => "cyclic",
            RotationType::Dihedral(_) => "dihedral",
            RotationType::Tetrahedral => "tetrahedral",
            RotationType::Octahedral => "octahedral",
            RotationType::Icosahedral => "icosahedral",
        }
    }

    pub fn group_name(&self) -> GroupName {
        match *self {
            RotationType::Cyclic(n) => GroupName::Cyclic(n),
            RotationType::Dihedral(n) => GroupName::Dihedral(n),
            RotationType::Tetrahedral => GroupName::Tetrahedral,
            RotationType::Octahedral => GroupName::Octahedral,
            RotationType::Icosahedral => GroupName::Icosahedral,
        }
    }

    /// The rotation type of a group name, if it is one.
    pub fn from_group_name(name: &GroupName) -> Option<RotationType> {
        match name.to_polyhedral() {
            GroupName::Cyclic(n) if n >= 2 => Some(RotationType::Cyclic(n)),
            GroupName::Dihedral(n) if n >= 2 => Some(RotationType::Dihedral(n)),
            GroupName::Tetrahedral => Some(RotationType::Tetrahedral),
            GroupName::Octahedral => Some(RotationType::Octahedral),
            GroupName::Icosahedral => Some(RotationType::Icosahedral),
            _ => None,
        }
    }

    fn is_polyhedral(&self) -> bool {
        matches!(
            self,
            RotationType::Tetrahedral | RotationType::Octahedral | RotationType::Icosahedral
        )
    }

    /// Cyclic poles and Klein-group axes are interchangeable, so only the
    /// number of marked slots matters for them.
    fn slots_interchangeable(&self) -> bool {
        matches!(self, RotationType::Cyclic(_) | RotationType::Dihedral(2))
    }
}

impl fmt::Display for RotationType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.group_name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SlotKind {
    Poles,
    Vertices,
    Edges,
    Faces,
    AxisPair(u8),
}

impl SlotKind {
    pub fn name(&self) -> &'static str {
        match self {
            SlotKind::Poles => "poles",
            SlotKind::Vertices => "vertices",
            SlotKind::Edges => "edges",
            SlotKind::Faces => "faces",
            SlotKind::AxisPair(0) => "axis0",
            SlotKind::AxisPair(1) => "axis1",
            SlotKind::AxisPair(_) => "axis2",
        }
    }
}

/// One exceptional orbit of a rotation group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OrbitSlot {
    pub kind: SlotKind,
    pub length: usize,
    pub stabilizer_order: usize,
    pub marked: bool,
}

impl OrbitSlot {
    const fn new(kind: SlotKind, length: usize, stabilizer_order: usize) -> Self {
        Self {
            kind,
            length,
            stabilizer_order,
            marked: false,
        }
    }
}

/// Unmarked exceptional orbits of a rotation type.
///
/// Cyclic: two poles. Dihedral(n >= 3): the pole pair, then the vertex and
/// edge-midpoint orbits of the invariant n-gon. Dihedral(2): the three
/// half-turn axes. Polyhedral: faces, edges, vertices.
pub fn exceptional_orbit_profile(rot: RotationType) -> Vec<OrbitSlot> {
    use SlotKind::*;
    match rot {
        RotationType::Cyclic(n) => vec![OrbitSlot::new(Poles, 1, n as usize); 2],
        RotationType::Dihedral(2) => (0..3).map(|i| OrbitSlot::new(AxisPair(i), 2, 2)).collect(),
        RotationType::Dihedral(n) => {
            let n = n as usize;
            vec![
                OrbitSlot::new(Poles, 2, n),
                OrbitSlot::new(Vertices, n, 2),
                OrbitSlot::new(Edges, n, 2),
            ]
        }
        RotationType::Tetrahedral => vec![
            OrbitSlot::new(Faces, 4, 3),
            OrbitSlot::new(Edges, 6, 2),
            OrbitSlot::new(Vertices, 4, 3),
        ],
        RotationType::Octahedral => vec![
            OrbitSlot::new(Faces, 6, 4),
            OrbitSlot::new(Edges, 12, 2),
            OrbitSlot::new(Vertices, 8, 3),
        ],
        RotationType::Icosahedral => vec![
            OrbitSlot::new(Faces, 12, 5),
            OrbitSlot::new(Edges, 30, 2),
            OrbitSlot::new(Vertices, 20, 3),
        ],
    }
}

fn slot_lengths(rot: RotationType) -> [usize; 3] {
    match rot {
        RotationType::Cyclic(_) => [1, 1, 0],
        RotationType::Dihedral(2) => [2, 2, 2],
        RotationType::Dihedral(n) => [2, n as usize, n as usize],
        RotationType::Tetrahedral => [4, 6, 4],
        RotationType::Octahedral => [6, 12, 8],
        RotationType::Icosahedral => [12, 30, 20],
    }
}

fn slot_count(rot: RotationType) -> usize {
    match rot {
        RotationType::Cyclic(_) => 2,
        _ => 3,
    }
}

/// Marking masks that enumerate each marking pattern once.
fn canonical_masks(rot: RotationType) -> Vec<u8> {
    if rot.slots_interchangeable() {
        (0..=slot_count(rot)).map(|m| ((1u16 << m) - 1) as u8).collect()
    } else {
        (0..8).collect()
    }
}

fn canonicalize_mask(rot: RotationType, mask: u8) -> u8 {
    let mask = mask & ((1u8 << slot_count(rot)) - 1);
    if rot.slots_interchangeable() {
        ((1u16 << mask.count_ones()) - 1) as u8
    } else {
        mask
    }
}

/// Free-orbit count solving the point-count equation, if any.
pub fn feasible_free_count(r: usize, rot: RotationType, mask: u8) -> Option<usize> {
    let lengths = slot_lengths(rot);
    let marked: usize = (0..3).filter(|i| mask & (1 << i) != 0).map(|i| lengths[i]).sum();
    let rest = r.checked_sub(marked)?;
    (rest % rot.order() == 0).then_some(rest / rot.order())
}

/// Combinatorial signature of a finite group action on the sphere with
/// `r` marked points.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ActionDescriptor {
    r: usize,
    rot: RotationType,
    slots: Vec<OrbitSlot>,
    free_orbits: usize,
}

impl ActionDescriptor {
    /// Descriptor with the slots selected by `mask` marked (bit `i` marks
    /// slot `i` of [`exceptional_orbit_profile`]). For interchangeable
    /// slots only the number of set bits matters.
    pub fn new(r: usize, rot: RotationType, mask: u8) -> Result<Self, SphereError> {
        rot.validate()?;
        if r < 3 {
            return Err(SphereError::InfeasibleDescriptor(format!("r = {r} < 3")));
        }
        let mask = canonicalize_mask(rot, mask);
        let free_orbits = feasible_free_count(r, rot, mask).ok_or_else(|| {
            SphereError::InfeasibleDescriptor(format!(
                "{rot} with marking {mask:#05b} does not fit r = {r}"
            ))
        })?;
        let mut slots = exceptional_orbit_profile(rot);
        for (i, s) in slots.iter_mut().enumerate() {
            s.marked = mask & (1 << i) != 0;
        }
        Ok(Self {
            r,
            rot,
            slots,
            free_orbits,
        })
    }

    /// Builds a descriptor from marked slot kinds; the point count follows
    /// from `free_orbits`.
    pub fn from_marked(
        rot: RotationType,
        marked: &[SlotKind],
        free_orbits: usize,
    ) -> Result<Self, SphereError> {
        rot.validate()?;
        let profile = exceptional_orbit_profile(rot);
        let mut mask = 0u8;
        if rot.slots_interchangeable() {
            if marked.len() > profile.len() || marked.iter().any(|k| !profile.iter().any(|s| s.kind == *k)) {
                return Err(SphereError::InfeasibleDescriptor(format!("{marked:?} for {rot}")));
            }
            mask = ((1u16 << marked.len()) - 1) as u8;
        } else {
            for kind in marked {
                let i = profile
                    .iter()
                    .position(|s| s.kind == *kind)
                    .ok_or_else(|| SphereError::InfeasibleDescriptor(format!("{kind:?} for {rot}")))?;
                mask |= 1 << i;
            }
        }
        let marked_points: usize = (0..profile.len())
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| profile[i].length)
            .sum();
        Self::new(marked_points + free_orbits * rot.order(), rot, mask)
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn rotation(&self) -> RotationType {
        self.rot
    }

    pub fn slots(&self) -> &[OrbitSlot] {
        &self.slots
    }

    pub fn free_orbits(&self) -> usize {
        self.free_orbits
    }

    pub fn group_order(&self) -> usize {
        self.rot.order()
    }

    pub fn marked_mask(&self) -> u8 {
        self.slots
            .iter()
            .enumerate()
            .filter(|(_, s)| s.marked)
            .fold(0, |m, (i, _)| m | (1 << i))
    }

    pub fn marked_slots(&self) -> impl Iterator<Item = &OrbitSlot> {
        self.slots.iter().filter(|s| s.marked)
    }

    pub fn is_marked(&self, kind: SlotKind) -> bool {
        self.slots.iter().any(|s| s.kind == kind && s.marked)
    }

    pub fn marked_count(&self) -> usize {
        self.marked_slots().count()
    }

    /// Row letter `a`..`h` of the polyhedral marking table (faces = bit 0,
    /// edges = bit 1, vertices = bit 2).
    pub fn table_row(&self) -> Option<char> {
        self.rot
            .is_polyhedral()
            .then(|| (b'a' + self.marked_mask()) as char)
    }

    /// Checks the point-count equation and the slot profile.
    pub fn check_invariants(&self) -> bool {
        let profile = exceptional_orbit_profile(self.rot);
        let marked_points: usize = self.marked_slots().map(|s| s.length).sum();
        self.r >= 3
            && self.slots.len() == profile.len()
            && self.slots.iter().zip(&profile).all(|(s, p)| {
                s.kind == p.kind
                    && s.length == p.length
                    && s.stabilizer_order == p.stabilizer_order
                    && s.length * s.stabilizer_order == self.rot.order()
            })
            && self.r == self.rot.order() * self.free_orbits + marked_points
    }

    /// Canonical output ordering key.
    pub fn sort_key(&self) -> (usize, &'static str, u32, u8) {
        let n = match self.rot {
            RotationType::Cyclic(n) | RotationType::Dihedral(n) => n,
            _ => 0,
        };
        (self.rot.order(), self.rot.tag(), n, self.marked_mask())
    }

    pub fn to_record(&self) -> DescriptorRecord {
        DescriptorRecord {
            r: self.r,
            kind: self.rot.tag(),
            marked: self.marked_slots().map(|s| s.kind.name()).collect(),
            free_orbits: self.free_orbits,
            group_order: self.group_order(),
            maximal: is_maximal(self),
        }
    }
}

impl fmt::Display for ActionDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let marked: Vec<&str> = self.marked_slots().map(|s| s.kind.name()).collect();
        write!(
            f,
            "{} at r={} marked=[{}] k={}",
            self.rot,
            self.r,
            marked.join(","),
            self.free_orbits
        )
    }
}

/// JSON form of a descriptor; field order is part of the output format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DescriptorRecord {
    pub r: usize,
    #[serde(rename = "type")]
    pub kind: &'static str,
    pub marked: Vec<&'static str>,
    pub free_orbits: usize,
    pub group_order: usize,
    pub maximal: bool,
}

fn divisors_at_least_two(m: usize, out: &mut BTreeSet<u32>) {
    let mut d = 1;
    while d * d <= m {
        if m.is_multiple_of(d) {
            for x in [d, m / d] {
                if x >= 2 {
                    out.insert(x as u32);
                }
            }
        }
        d += 1;
    }
}

/// Every feasible descriptor at `r`, for one rotation type or for all of
/// them, in canonical order.
///
/// A cyclic action of order `n` needs `n | r - a` for the number `a` of
/// marked poles, and a dihedral one needs `n | r - 2p` for the pole-pair
/// marking `p`, so only those divisors are tried.
pub fn enumerate_descriptors(r: usize, rot: Option<RotationType>) -> Vec<ActionDescriptor> {
    if r < 3 {
        return Vec::new();
    }
    let types: Vec<RotationType> = match rot {
        Some(t) => {
            if t.validate().is_err() {
                return Vec::new();
            }
            vec![t]
        }
        None => {
            let mut cyclic = BTreeSet::new();
            for m in [r, r - 1, r - 2] {
                divisors_at_least_two(m, &mut cyclic);
            }
            let mut dihedral = BTreeSet::new();
            for m in [r, r - 2] {
                divisors_at_least_two(m, &mut dihedral);
            }
            cyclic
                .into_iter()
                .map(RotationType::Cyclic)
                .chain(dihedral.into_iter().map(RotationType::Dihedral))
                .chain([
                    RotationType::Tetrahedral,
                    RotationType::Octahedral,
                    RotationType::Icosahedral,
                ])
                .collect()
        }
    };
    let mut out = Vec::new();
    for t in types {
        for mask in canonical_masks(t) {
            if feasible_free_count(r, t, mask).is_some() {
                out.push(ActionDescriptor::new(r, t, mask).expect("feasible"));
            }
        }
    }
    out.sort_by_key(|d| d.sort_key());
    out
}
