//! Isomorphism testing for small groups.
//!
//! Both groups are turned into multiplication tables. A cheap invariant
//! fingerprint rejects most non-isomorphic pairs; the remaining pairs are
//! settled by backtracking over images of a greedily chosen generating
//! sequence, extending each partial assignment to a homomorphism on the
//! subgroup generated so far.

use std::collections::{BTreeMap, HashMap, VecDeque};

use super::{PermGroup, PermGroupError};

pub const DEFAULT_ISOMORPHISM_CAP: usize = 1000;

/// Multiplication table of a permutation group; element `0` is the identity.
#[derive(Clone, Debug)]
pub struct CayleyTable {
    n: usize,
    mul: Vec<u32>,
    orders: Vec<usize>,
}

impl CayleyTable {
    pub fn new(g: &PermGroup) -> Self {
        let elements = g.elements();
        let n = elements.len();
        let index: HashMap<_, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e, i as u32))
            .collect();
        debug_assert!(elements[0].is_identity());
        let mut mul = vec![0u32; n * n];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                mul[i * n + j] = index[&(a * b)];
            }
        }
        let mut table = Self {
            n,
            mul,
            orders: Vec::new(),
        };
        table.orders = (0..n).map(|x| table.element_order(x)).collect();
        table
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b] as usize
    }

    fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn order_of(&self, x: usize) -> usize {
        self.orders[x]
    }

    pub fn inverse(&self, x: usize) -> usize {
        (0..self.n).find(|&y| self.mul(x, y) == 0).expect("group element")
    }

    /// Elements of the subgroup generated by `gens`, in discovery order.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.n];
        let mut out = vec![0];
        inside[0] = true;
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for &s in gens {
                let y = self.mul(x, s);
                if !inside[y] {
                    inside[y] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out
    }

    pub fn center_order(&self) -> usize {
        (0..self.n)
            .filter(|&z| (0..self.n).all(|x| self.mul(z, x) == self.mul(x, z)))
            .count()
    }

    pub fn derived_order(&self) -> usize {
        let inv: Vec<usize> = (0..self.n).map(|x| self.inverse(x)).collect();
        let mut commutators = vec![false; self.n];
        for a in 0..self.n {
            for b in 0..self.n {
                let c = self.mul(self.mul(inv[a], inv[b]), self.mul(a, b));
                commutators[c] = true;
            }
        }
        let gens: Vec<usize> = (0..self.n).filter(|&c| commutators[c]).collect();
        self.closure(&gens).len()
    }

    pub fn fingerprint(&self) -> Fingerprint {
        let mut order_counts = BTreeMap::new();
        for &o in &self.orders {
            *order_counts.entry(o).or_insert(0usize) += 1;
        }
        Fingerprint {
            order: self.n,
            element_orders: order_counts.into_iter().collect(),
            center_order: self.center_order(),
            derived_order: self.derived_order(),
        }
    }

    /// Generating sequence picked greedily: repeatedly take an element of
    /// highest order outside the current subgroup.
    pub fn greedy_generators(&self) -> Vec<usize> {
        let mut by_order: Vec<usize> = (1..self.n).collect();
        by_order.sort_by(|&a, &b| self.orders[b].cmp(&self.orders[a]).then(a.cmp(&b)));
        let mut gens = Vec::new();
        let mut inside = vec![false; self.n];
        inside[0] = true;
        let mut size = 1;
        for x in by_order {
            if size == self.n {
                break;
            }
            if inside[x] {
                continue;
            }
            gens.push(x);
            inside = vec![false; self.n];
            let sub = self.closure(&gens);
            size = sub.len();
            for y in sub {
                inside[y] = true;
            }
        }
        gens
    }
}

/// Isomorphism invariants compared before any search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fingerprint {
    pub order: usize,
    /// `(element order, count)` pairs in ascending element order.
    pub element_orders: Vec<(usize, usize)>,
    pub center_order: usize,
    pub derived_order: usize,
}

/// Searches for an isomorphism `a -> b` without any fingerprint filter.
/// Returns the element map (indices into the respective tables).
pub fn find_isomorphism(a: &CayleyTable, b: &CayleyTable) -> Option<Vec<usize>> {
    if a.len() != b.len() {
        return None;
    }
    let gens = a.greedy_generators();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| (0..b.len()).filter(|&y| b.order_of(y) == a.order_of(g)).collect())
        .collect();
    let mut images = Vec::with_capacity(gens.len());
    search(a, b, &gens, &candidates, &mut images)
}

fn search(
    a: &CayleyTable,
    b: &CayleyTable,
    gens: &[usize],
    candidates: &[Vec<usize>],
    images: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    let depth = images.len();
    if depth == gens.len() {
        let map = extend_homomorphism(a, b, gens, images)?;
        return Some(map.into_iter().map(|x| x.expect("all elements reached")).collect());
    }
    for &y in &candidates[depth] {
        images.push(y);
        if extend_homomorphism(a, b, &gens[..=depth], images).is_some() {
            if let Some(found) = search(a, b, gens, candidates, images) {
                return Some(found);
            }
        }
        images.pop();
    }
    None
}

/// Extends `gens[i] -> images[i]` to an injective homomorphism on the
/// subgroup the generators span, or reports that no such extension exists.
fn extend_homomorphism(
    a: &CayleyTable,
    b: &CayleyTable,
    gens: &[usize],
    images: &[usize],
) -> Option<Vec<Option<usize>>> {
    let mut phi: Vec<Option<usize>> = vec![None; a.len()];
    let mut used = vec![false; b.len()];
    phi[0] = Some(0);
    used[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        let fx = phi[x].expect("queued elements are mapped");
        for (&s, &t) in gens.iter().zip(images) {
            let y = a.mul(x, s);
            let fy = b.mul(fx, t);
            match phi[y] {
                Some(existing) if existing != fy => return None,
                Some(_) => {}
                None => {
                    if used[fy] {
                        return None;
                    }
                    used[fy] = true;
                    phi[y] = Some(fy);
                    queue.push_back(y);
                }
            }
        }
    }
    Some(phi)
}

/// Fingerprint pre-filter followed by backtracking search. Both groups must
/// have order at most `cap`.
pub fn are_isomorphic_with_cap(
    g: &PermGroup,
    h: &PermGroup,
    cap: usize,
) -> Result<bool, PermGroupError> {
    if g.order() > cap || h.order() > cap {
        return Err(PermGroupError::CapExceeded { cap });
    }
    if g.order() != h.order() {
        return Ok(false);
    }
    let a = CayleyTable::new(g);
    let b = CayleyTable::new(h);
    if a.fingerprint() != b.fingerprint() {
        return Ok(false);
    }
    Ok(find_isomorphism(&a, &b).is_some())
}

pub fn are_isomorphic(g: &PermGroup, h: &PermGroup) -> Result<bool, PermGroupError> {
    are_isomorphic_with_cap(g, h, DEFAULT_ISOMORPHISM_CAP)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::{construct, GroupName, Permutation};

    fn group(n: usize, gens: &[&[&[usize]]]) -> PermGroup {
        let gens = gens
            .iter()
            .map(|c| Permutation::from_cycles(n, c).unwrap())
            .collect();
        PermGroup::generate(n, gens, 10_000).unwrap()
    }

    #[test]
    fn dihedral_six_is_s3() {
        let d3 = construct(&GroupName::Dihedral(3)).unwrap();
        let s3 = group(3, &[&[&[0, 1]], &[&[1, 2]]]);
        assert!(are_isomorphic(&d3, &s3).unwrap());
    }

    #[test]
    fn cyclic_four_is_not_klein() {
        let c4 = construct(&GroupName::Cyclic(4)).unwrap();
        let v4 = construct(&GroupName::Dihedral(2)).unwrap();
        assert!(!are_isomorphic(&c4, &v4).unwrap());
        assert!(find_isomorphism(&CayleyTable::new(&c4), &CayleyTable::new(&v4)).is_none());
    }

    #[test]
    fn isomorphism_map_is_multiplicative() {
        let a = CayleyTable::new(&construct(&GroupName::Alternating4).unwrap());
        // A4 on the six edges of a tetrahedron
        let g = construct(&GroupName::Alternating4).unwrap();
        let h = g.subgroup(vec![Permutation::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap()]).unwrap();
        let b = CayleyTable::new(&g.coset_action(&h).unwrap());
        let phi = find_isomorphism(&a, &b).expect("same group");
        for x in 0..a.len() {
            for y in 0..a.len() {
                assert_eq!(phi[a.mul(x, y)], b.mul(phi[x], phi[y]));
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let s4 = construct(&GroupName::Symmetric4).unwrap();
        assert_eq!(
            are_isomorphic_with_cap(&s4, &s4, 10).unwrap_err(),
            PermGroupError::CapExceeded { cap: 10 }
        );
    }

    #[test]
    fn fingerprints_of_small_groups() {
        let s4 = CayleyTable::new(&construct(&GroupName::Symmetric4).unwrap()).fingerprint();
        assert_eq!(s4.element_orders, vec![(1, 1), (2, 9), (3, 8), (4, 6)]);
        assert_eq!(s4.center_order, 1);
        assert_eq!(s4.derived_order, 12);
    }
}
