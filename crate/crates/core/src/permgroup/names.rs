use std::fmt;
use std::str::FromStr;

use super::{PermGroup, PermGroupError, Permutation, DEFAULT_ORDER_CAP};

/// Isomorphism-type names for every group the crate works with.
///
/// `Tetrahedral`/`Alternating4`, `Octahedral`/`Symmetric4` and
/// `Icosahedral`/`Alternating5` name the same abstract groups. Sphere-action
/// code uses the polyhedral names and lift code uses the abstract names; the
/// two spellings are converted with [`GroupName::to_polyhedral`] and
/// [`GroupName::to_abstract`]. Both print as `A4`, `S4`, `A5`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupName {
    Cyclic(u32),
    Dihedral(u32),
    Tetrahedral,
    Octahedral,
    Icosahedral,
    Symmetric4,
    Alternating4,
    Alternating5,
    DirectProductZ2(Box<GroupName>),
    /// `SL(2, p)` for `p` in `{3, 5}`.
    SL2(u32),
}

impl GroupName {
    pub fn order(&self) -> usize {
        match self {
            GroupName::Cyclic(n) => *n as usize,
            GroupName::Dihedral(n) => 2 * *n as usize,
            GroupName::Tetrahedral | GroupName::Alternating4 => 12,
            GroupName::Octahedral | GroupName::Symmetric4 => 24,
            GroupName::Icosahedral | GroupName::Alternating5 => 60,
            GroupName::DirectProductZ2(inner) => 2 * inner.order(),
            GroupName::SL2(p) => {
                let p = *p as usize;
                p * (p * p - 1)
            }
        }
    }

    pub fn validate(&self) -> Result<(), PermGroupError> {
        let ok = match self {
            GroupName::Cyclic(n) | GroupName::Dihedral(n) => *n >= 2,
            GroupName::SL2(p) => *p == 3 || *p == 5,
            GroupName::DirectProductZ2(inner) => return inner.validate(),
            _ => true,
        };
        if ok {
            Ok(())
        } else {
            Err(PermGroupError::InvalidName(self.label()))
        }
    }

    /// Sphere-action spelling.
    pub fn to_polyhedral(&self) -> GroupName {
        match self {
            GroupName::Alternating4 => GroupName::Tetrahedral,
            GroupName::Symmetric4 => GroupName::Octahedral,
            GroupName::Alternating5 => GroupName::Icosahedral,
            GroupName::DirectProductZ2(inner) => GroupName::DirectProductZ2(Box::new(inner.to_polyhedral())),
            other => other.clone(),
        }
    }

    /// Abstract-group spelling.
    pub fn to_abstract(&self) -> GroupName {
        match self {
            GroupName::Tetrahedral => GroupName::Alternating4,
            GroupName::Octahedral => GroupName::Symmetric4,
            GroupName::Icosahedral => GroupName::Alternating5,
            GroupName::DirectProductZ2(inner) => GroupName::DirectProductZ2(Box::new(inner.to_abstract())),
            other => other.clone(),
        }
    }

    /// True when both names denote the same isomorphism type under the fixed
    /// naming table.
    pub fn same_type(&self, other: &GroupName) -> bool {
        self.to_polyhedral() == other.to_polyhedral()
    }

    pub fn label(&self) -> String {
        match self {
            GroupName::Cyclic(n) => format!("Z{n}"),
            GroupName::Dihedral(n) => format!("D{n}"),
            GroupName::Tetrahedral | GroupName::Alternating4 => "A4".into(),
            GroupName::Octahedral | GroupName::Symmetric4 => "S4".into(),
            GroupName::Icosahedral | GroupName::Alternating5 => "A5".into(),
            GroupName::DirectProductZ2(inner) => format!("Z2x{}", inner.label()),
            GroupName::SL2(p) => format!("SL(2,{p})"),
        }
    }

    /// Output ordering: by group order, then label.
    pub fn sort_key(&self) -> (usize, String) {
        (self.order(), self.label())
    }
}

/// Sorts by [`GroupName::sort_key`] and removes repeated isomorphism types.
pub fn canonical_name_list(mut names: Vec<GroupName>) -> Vec<GroupName> {
    names.sort_by_key(GroupName::sort_key);
    names.dedup_by(|a, b| a.same_type(b));
    names
}

impl fmt::Display for GroupName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl FromStr for GroupName {
    type Err = PermGroupError;

    /// Accepts the printed labels (`Z5`, `D6`, `A4`, `S4`, `A5`, `Z2xS4`,
    /// `SL(2,3)`) and the polyhedral words `tetrahedral`, `octahedral`,
    /// `icosahedral`. Labels `A4`/`S4`/`A5` parse to the polyhedral names.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let invalid = || PermGroupError::InvalidName(s.to_string());
        let name = match t.to_ascii_lowercase().as_str() {
            "a4" | "tetrahedral" => GroupName::Tetrahedral,
            "s4" | "octahedral" => GroupName::Octahedral,
            "a5" | "icosahedral" => GroupName::Icosahedral,
            "sl(2,3)" | "sl23" => GroupName::SL2(3),
            "sl(2,5)" | "sl25" => GroupName::SL2(5),
            lower => {
                if let Some(rest) = lower.strip_prefix("z2x") {
                    GroupName::DirectProductZ2(Box::new(rest.parse::<GroupName>()?.to_abstract()))
                } else if let Some(n) = lower.strip_prefix('z') {
                    GroupName::Cyclic(n.parse().map_err(|_| invalid())?)
                } else if let Some(n) = lower.strip_prefix('d') {
                    GroupName::Dihedral(n.parse().map_err(|_| invalid())?)
                } else {
                    return Err(invalid());
                }
            }
        };
        name.validate()?;
        Ok(name)
    }
}

fn cycles(n: usize, c: &[&[usize]]) -> Permutation {
    Permutation::from_cycles(n, c).expect("static generator")
}

/// Standard faithful permutation model of a named group.
pub fn construct(name: &GroupName) -> Result<PermGroup, PermGroupError> {
    name.validate()?;
    let (degree, gens) = match name {
        GroupName::Cyclic(n) => {
            let n = *n as usize;
            let rot = Permutation::from_images((0..n).map(|i| (i + 1) % n).collect())?;
            (n, vec![rot])
        }
        GroupName::Dihedral(2) => (4, vec![cycles(4, &[&[0, 1], &[2, 3]]), cycles(4, &[&[0, 2], &[1, 3]])]),
        GroupName::Dihedral(n) => {
            let n = *n as usize;
            let rot = Permutation::from_images((0..n).map(|i| (i + 1) % n).collect())?;
            let refl = Permutation::from_images((0..n).map(|i| (n - i) % n).collect())?;
            (n, vec![rot, refl])
        }
        GroupName::Tetrahedral | GroupName::Alternating4 => {
            (4, vec![cycles(4, &[&[0, 1, 2]]), cycles(4, &[&[0, 1], &[2, 3]])])
        }
        GroupName::Octahedral | GroupName::Symmetric4 => {
            (4, vec![cycles(4, &[&[0, 1, 2, 3]]), cycles(4, &[&[0, 1]])])
        }
        GroupName::Icosahedral | GroupName::Alternating5 => {
            (5, vec![cycles(5, &[&[0, 1, 2, 3, 4]]), cycles(5, &[&[0, 1, 2]])])
        }
        GroupName::SL2(p) => sl2_generators(*p as usize),
        GroupName::DirectProductZ2(inner) => {
            let inner = construct(inner)?;
            let degree = inner.degree() + 2;
            let mut gens = vec![cycles(degree, &[&[0, 1]])];
            gens.extend(inner.generators().iter().map(|g| g.embed(2, degree)));
            (degree, gens)
        }
    };
    PermGroup::generate(degree, gens, DEFAULT_ORDER_CAP)
}

/// `SL(2, p)` acting on the `p^2 - 1` nonzero row vectors of `F_p^2`, with
/// vector `(a, b)` stored at index `a * p + b - 1`.
fn sl2_generators(p: usize) -> (usize, Vec<Permutation>) {
    let index = |a: usize, b: usize| a * p + b - 1;
    let matrices = [[[1, 1], [0, 1]], [[0, p - 1], [1, 0]]];
    let gens = matrices
        .iter()
        .map(|m| {
            let mut images = vec![0; p * p - 1];
            for a in 0..p {
                for b in 0..p {
                    if a == 0 && b == 0 {
                        continue;
                    }
                    let c = (a * m[0][0] + b * m[1][0]) % p;
                    let d = (a * m[0][1] + b * m[1][1]) % p;
                    images[index(a, b)] = index(c, d);
                }
            }
            Permutation::from_images(images).expect("invertible matrix")
        })
        .collect();
    (p * p - 1, gens)
}
