use std::collections::{HashMap, HashSet, VecDeque};

use super::{PermGroupError, Permutation};

pub const DEFAULT_ORDER_CAP: usize = 10_000;

/// A finitely generated permutation group together with its full element
/// list.
///
/// All in-scope groups are small, so the group is closed explicitly by
/// breadth-first multiplication instead of through a stabilizer chain.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
}

/// One orbit of a group on its points, with the order of the point
/// stabilizer of its smallest point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitInfo {
    pub points: Vec<usize>,
    pub stabilizer_order: usize,
}

impl PermGroup {
    /// Closes `generators` under multiplication.
    pub fn generate(
        degree: usize,
        generators: Vec<Permutation>,
        order_cap: usize,
    ) -> Result<Self, PermGroupError> {
        for g in &generators {
            if g.degree() != degree {
                return Err(PermGroupError::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let identity = Permutation::identity(degree);
        let mut seen: HashSet<Permutation> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(identity.clone());
        queue.push_back(identity);
        while let Some(x) = queue.pop_front() {
            for s in &generators {
                let y = &x * s;
                if !seen.contains(&y) {
                    if seen.len() >= order_cap {
                        return Err(PermGroupError::CapExceeded { cap: order_cap });
                    }
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        let mut elements: Vec<Permutation> = seen.into_iter().collect();
        elements.sort_unstable();
        Ok(Self {
            degree,
            generators,
            elements,
        })
    }

    pub fn trivial(degree: usize) -> Self {
        Self {
            degree,
            generators: Vec::new(),
            elements: vec![Permutation::identity(degree)],
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// All elements in ascending image-list order.
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        p.degree() == self.degree && self.elements.binary_search(p).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree
            && self.order() <= other.order()
            && self.elements.iter().all(|e| other.contains(e))
    }

    /// The subgroup of `self` generated by `generators`.
    pub fn subgroup(&self, generators: Vec<Permutation>) -> Result<PermGroup, PermGroupError> {
        if generators.iter().any(|g| !self.contains(g)) {
            return Err(PermGroupError::NotASubgroup);
        }
        PermGroup::generate(self.degree, generators, self.order())
    }

    /// Orbits in ascending order of their smallest point. Stabilizer orders
    /// are counted directly from the element list rather than from the
    /// orbit length.
    pub fn orbits_and_stabilizers(&self) -> Vec<OrbitInfo> {
        let mut assigned = vec![false; self.degree];
        let mut out = Vec::new();
        for start in 0..self.degree {
            if assigned[start] {
                continue;
            }
            let mut points = vec![start];
            assigned[start] = true;
            let mut i = 0;
            while i < points.len() {
                let p = points[i];
                for g in &self.generators {
                    let q = g.image(p);
                    if !assigned[q] {
                        assigned[q] = true;
                        points.push(q);
                    }
                }
                i += 1;
            }
            points.sort_unstable();
            let stabilizer_order = self.elements.iter().filter(|e| e.image(start) == start).count();
            out.push(OrbitInfo {
                points,
                stabilizer_order,
            });
        }
        out
    }

    /// Right-multiplication action of `self` on the cosets `h·x` of a
    /// subgroup. The generators of the result are the images of
    /// `self.generators()` in the same order; the result has degree
    /// `[self : h]`. Coset `0` is `h` itself.
    pub fn coset_action(&self, h: &PermGroup) -> Result<PermGroup, PermGroupError> {
        if !h.is_subgroup_of(self) {
            return Err(PermGroupError::NotASubgroup);
        }
        let mut coset_of: HashMap<&Permutation, usize> = HashMap::with_capacity(self.order());
        let mut representatives = Vec::new();
        // The identity is the lexicographically least image list, so the
        // subgroup itself becomes coset 0.
        for x in &self.elements {
            if coset_of.contains_key(x) {
                continue;
            }
            let id = representatives.len();
            representatives.push(x.clone());
            for hh in h.elements() {
                let y = hh * x;
                let y_ref = &self.elements[self.elements.binary_search(&y).expect("closed")];
                coset_of.insert(y_ref, id);
            }
        }
        let index = representatives.len();
        let lookup = |p: &Permutation| -> usize {
            let r = &self.elements[self.elements.binary_search(p).expect("closed")];
            coset_of[r]
        };
        let generators = self
            .generators
            .iter()
            .map(|s| {
                let images = representatives
                    .iter()
                    .map(|x| lookup(&(x * s)) as u32)
                    .collect();
                Permutation::from_images_unchecked(images)
            })
            .collect();
        PermGroup::generate(index, generators, self.order())
    }

    pub fn center(&self) -> PermGroup {
        let central: Vec<Permutation> = self
            .elements
            .iter()
            .filter(|e| self.generators.iter().all(|g| e.commutes_with(g)))
            .cloned()
            .collect();
        PermGroup {
            degree: self.degree,
            generators: central.iter().filter(|e| !e.is_identity()).cloned().collect(),
            elements: central,
        }
    }

    pub fn is_central(&self, z: &Permutation) -> bool {
        self.contains(z) && self.generators.iter().all(|g| z.commutes_with(g))
    }

    /// Faithful model of `self / <z>` for a central involution `z`, as the
    /// action on the cosets of `<z>`.
    pub fn quotient_by_central(&self, z: &Permutation) -> Result<PermGroup, PermGroupError> {
        if !self.is_central(z) || z.is_identity() || !z.then(z).is_identity() {
            return Err(PermGroupError::NotCentralInvolution);
        }
        let zgroup = self.subgroup(vec![z.clone()])?;
        self.coset_action(&zgroup)
    }

    /// True if the product of every pair of elements is again an element.
    pub fn is_closed(&self) -> bool {
        self.elements
            .iter()
            .all(|a| self.elements.iter().all(|b| self.contains(&(a * b))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    #[test]
    fn closure_orders() {
        let g = PermGroup::generate(3, vec![cyc(3, &[&[0, 1, 2]])], 100).unwrap();
        assert_eq!(g.order(), 3);
        let a4 = PermGroup::generate(
            4,
            vec![cyc(4, &[&[0, 1, 2]]), cyc(4, &[&[0, 1], &[2, 3]])],
            100,
        )
        .unwrap();
        assert_eq!(a4.order(), 12);
        assert!(a4.is_closed());
        assert_eq!(PermGroup::generate(5, vec![], 100).unwrap().order(), 1);
    }

    #[test]
    fn cap_and_degree_errors() {
        let s4 = vec![cyc(4, &[&[0, 1, 2, 3]]), cyc(4, &[&[0, 1]])];
        assert_eq!(
            PermGroup::generate(4, s4, 10).unwrap_err(),
            PermGroupError::CapExceeded { cap: 10 }
        );
        assert!(matches!(
            PermGroup::generate(4, vec![cyc(3, &[&[0, 1]])], 10),
            Err(PermGroupError::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn orbits_of_three_cycle_on_four_points() {
        let g = PermGroup::generate(4, vec![cyc(4, &[&[0, 1, 2]])], 100).unwrap();
        let orbits = g.orbits_and_stabilizers();
        assert_eq!(
            orbits,
            vec![
                OrbitInfo { points: vec![0, 1, 2], stabilizer_order: 1 },
                OrbitInfo { points: vec![3], stabilizer_order: 3 },
            ]
        );
    }

    #[test]
    fn dihedral_six_on_triangle() {
        let g = PermGroup::generate(3, vec![cyc(3, &[&[0, 1, 2]]), cyc(3, &[&[1, 2]])], 100).unwrap();
        let orbits = g.orbits_and_stabilizers();
        assert_eq!(orbits.len(), 1);
        assert_eq!(orbits[0].points.len(), 3);
        assert_eq!(orbits[0].stabilizer_order, 2);
    }

    #[test]
    fn coset_action_rejects_non_subgroup() {
        let a4 = PermGroup::generate(
            4,
            vec![cyc(4, &[&[0, 1, 2]]), cyc(4, &[&[0, 1], &[2, 3]])],
            100,
        )
        .unwrap();
        let t = PermGroup::generate(4, vec![cyc(4, &[&[0, 1]])], 100).unwrap();
        assert_eq!(a4.coset_action(&t).unwrap_err(), PermGroupError::NotASubgroup);
    }

    #[test]
    fn coset_action_of_a4_on_three_cycle() {
        let a4 = PermGroup::generate(
            4,
            vec![cyc(4, &[&[0, 1, 2]]), cyc(4, &[&[0, 1], &[2, 3]])],
            100,
        )
        .unwrap();
        let h = a4.subgroup(vec![cyc(4, &[&[0, 1, 2]])]).unwrap();
        let act = a4.coset_action(&h).unwrap();
        assert_eq!(act.degree(), 4);
        assert_eq!(act.order(), 12);
        assert_eq!(act.generators().len(), 2);
        // the subgroup itself is coset 0 and is its own stabilizer
        assert_eq!(act.orbits_and_stabilizers()[0].stabilizer_order, 3);
    }

    #[test]
    fn centers() {
        let c5 = PermGroup::generate(5, vec![cyc(5, &[&[0, 1, 2, 3, 4]])], 100).unwrap();
        assert_eq!(c5.center().order(), 5);
        let a4 = PermGroup::generate(
            4,
            vec![cyc(4, &[&[0, 1, 2]]), cyc(4, &[&[0, 1], &[2, 3]])],
            100,
        )
        .unwrap();
        assert_eq!(a4.center().order(), 1);
    }

    #[test]
    fn quotient_of_dihedral_eight() {
        let d4 = PermGroup::generate(4, vec![cyc(4, &[&[0, 1, 2, 3]]), cyc(4, &[&[1, 3]])], 100).unwrap();
        let z = cyc(4, &[&[0, 2], &[1, 3]]);
        let q = d4.quotient_by_central(&z).unwrap();
        assert_eq!(q.order(), 4);
        let not_central = cyc(4, &[&[1, 3]]);
        assert_eq!(
            d4.quotient_by_central(&not_central).unwrap_err(),
            PermGroupError::NotCentralInvolution
        );
    }
}
