//! Backtracking search for a point relabeling that carries one permutation
//! group into another on the same point set.
//!
//! For generators `g_1..g_t` of `N` the search picks candidate images
//! `m_1..m_t` in `M` (the first one only up to conjugacy in `M`, the rest
//! among all elements with the right cycle type) and then looks for a
//! bijection `s` with `s(g_i(p)) = m_i(s(p))` for all points `p`. Such an
//! `s` is an isomorphism of the two actions of the free group on `t`
//! letters, which decomposes orbit by orbit; orbits are matched greedily
//! because isomorphism of transitive actions is an equivalence relation.

use std::collections::VecDeque;

use crate::permgroup::{PermGroup, Permutation};

/// Finds `s` such that `s^-1 * n * s` lies in `m` for every `n` in `small`.
pub fn find_relabeling(small: &PermGroup, large: &PermGroup) -> Option<Permutation> {
    let degree = small.degree();
    if large.degree() != degree || !large.order().is_multiple_of(small.order()) {
        return None;
    }
    let gens: Vec<&Permutation> = small.generators().iter().filter(|g| !g.is_identity()).collect();
    if gens.is_empty() {
        return Some(Permutation::identity(degree));
    }
    let candidates: Vec<Vec<&Permutation>> = gens
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let ct = g.cycle_type();
            let pool: Vec<&Permutation> = if i == 0 {
                class_representatives(large)
            } else {
                large.elements().iter().collect()
            };
            pool.into_iter().filter(|m| m.cycle_type() == ct).collect()
        })
        .collect();
    let mut chosen = Vec::with_capacity(gens.len());
    search(&gens, &candidates, &mut chosen)
}

fn search<'a>(
    gens: &[&Permutation],
    candidates: &[Vec<&'a Permutation>],
    chosen: &mut Vec<&'a Permutation>,
) -> Option<Permutation> {
    if chosen.len() == gens.len() {
        return action_isomorphism(gens, chosen);
    }
    for &m in &candidates[chosen.len()] {
        chosen.push(m);
        if let Some(s) = search(gens, candidates, chosen) {
            return Some(s);
        }
        chosen.pop();
    }
    None
}

/// One element from each conjugacy class of `g`.
fn class_representatives(g: &PermGroup) -> Vec<&Permutation> {
    let elements = g.elements();
    let index = |p: &Permutation| elements.binary_search(p).expect("closed");
    let inverses: Vec<Permutation> = g.generators().iter().map(|s| s.inverse()).collect();
    let mut seen = vec![false; elements.len()];
    let mut reps = Vec::new();
    for start in 0..elements.len() {
        if seen[start] {
            continue;
        }
        reps.push(&elements[start]);
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for (s, s_inv) in g.generators().iter().zip(&inverses) {
                let y = index(&(&(s_inv * &elements[x]) * s));
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
    }
    reps
}

fn orbits(gens: &[&Permutation], degree: usize) -> Vec<Vec<usize>> {
    let mut seen = vec![false; degree];
    let mut out = Vec::new();
    for start in 0..degree {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orbit = vec![start];
        let mut i = 0;
        while i < orbit.len() {
            for g in gens {
                let q = g.image(orbit[i]);
                if !seen[q] {
                    seen[q] = true;
                    orbit.push(q);
                }
            }
            i += 1;
        }
        out.push(orbit);
    }
    out
}

/// Tries to extend `p -> q` to an equivariant map on the orbit of `p`.
fn map_orbit(gens: &[&Permutation], images: &[&Permutation], p: usize, q: usize, map: &mut [Option<usize>]) -> bool {
    let mut local: Vec<(usize, usize)> = vec![(p, q)];
    map[p] = Some(q);
    let mut i = 0;
    while i < local.len() {
        let (x, y) = local[i];
        for (g, m) in gens.iter().zip(images) {
            let (x2, y2) = (g.image(x), m.image(y));
            match map[x2] {
                Some(existing) if existing != y2 => {
                    for &(x, _) in &local {
                        map[x] = None;
                    }
                    return false;
                }
                Some(_) => {}
                None => {
                    map[x2] = Some(y2);
                    local.push((x2, y2));
                }
            }
        }
        i += 1;
    }
    true
}

fn action_isomorphism(gens: &[&Permutation], images: &[&Permutation]) -> Option<Permutation> {
    let degree = gens[0].degree();
    let source = orbits(gens, degree);
    let target = orbits(images, degree);
    let mut used = vec![false; target.len()];
    let mut map: Vec<Option<usize>> = vec![None; degree];
    'orbit: for orbit in &source {
        for (t, candidate) in target.iter().enumerate() {
            if used[t] || candidate.len() != orbit.len() {
                continue;
            }
            for &q in candidate {
                if map_orbit(gens, images, orbit[0], q, &mut map) {
                    used[t] = true;
                    continue 'orbit;
                }
            }
        }
        return None;
    }
    let images: Vec<usize> = map.into_iter().map(|x| x.expect("every orbit mapped")).collect();
    Permutation::from_images(images).ok()
}

/// Checks that relabeling by `s` carries every element of `small` into
/// `large`.
pub fn verify_relabeling(small: &PermGroup, large: &PermGroup, s: &Permutation) -> bool {
    let s_inv = s.inverse();
    small
        .elements()
        .iter()
        .all(|n| large.contains(&(&(&s_inv * n) * s)))
}

/// Search plus element-by-element confirmation.
pub fn embeds_in(small: &PermGroup, large: &PermGroup) -> bool {
    find_relabeling(small, large).is_some_and(|s| verify_relabeling(small, large, &s))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(n: usize, gens: &[&[&[usize]]]) -> PermGroup {
        let gens = gens.iter().map(|c| Permutation::from_cycles(n, c).unwrap()).collect();
        PermGroup::generate(n, gens, 10_000).unwrap()
    }

    #[test]
    fn conjugate_subgroup_is_found() {
        // <(2 3)> is conjugate into <(0 1)(2 3), (0 1)> but not equal to a subgroup of it literally
        let small = group(4, &[&[&[0, 2]]]);
        let large = group(4, &[&[&[0, 1]], &[&[2, 3]]]);
        assert!(!small.is_subgroup_of(&large));
        assert!(embeds_in(&small, &large));
    }

    #[test]
    fn cycle_type_blocks_embedding() {
        let small = group(4, &[&[&[0, 1, 2, 3]]]);
        let large = group(4, &[&[&[0, 1, 2]], &[&[0, 1], &[2, 3]]]);
        assert!(!embeds_in(&small, &large));
    }

    #[test]
    fn orbit_structure_blocks_embedding() {
        // a free Z2 orbit pair cannot land inside a group that fixes those points
        let small = group(4, &[&[&[0, 1], &[2, 3]]]);
        let large = group(4, &[&[&[0, 1]], &[&[2, 3]]]);
        assert!(embeds_in(&small, &large));
        let fixed = group(4, &[&[&[0, 1]]]);
        assert!(!embeds_in(&small, &fixed));
    }

    #[test]
    fn klein_group_in_d4() {
        let klein = group(4, &[&[&[0, 1], &[2, 3]], &[&[0, 2], &[1, 3]]]);
        let d4 = group(4, &[&[&[0, 1, 2, 3]], &[&[1, 3]]]);
        let s = find_relabeling(&klein, &d4).unwrap();
        assert!(verify_relabeling(&klein, &d4, &s));
    }
}
