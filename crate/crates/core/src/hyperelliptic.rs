//! Maximal finite subgroups of the hyperelliptic mapping class group of
//! genus `g`, as central extensions by the hyperelliptic involution of the
//! maximal finite subgroups at `r = 2g + 2`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::fpgroup::{table_to_permgroup, todd_coxeter, FpGroupError, Presentation};
use crate::permgroup::{are_isomorphic_with_cap, construct, GroupName, PermGroupError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HyperellipticError {
    #[error("{name} is not a maximal finite subgroup at genus {g}")]
    NotAdmissible { name: LiftName, g: u32 },
    #[error("genus must be at least 2, got {0}")]
    GenusTooSmall(u32),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error(transparent)]
    FpGroup(#[from] FpGroupError),
    #[error(transparent)]
    Group(#[from] PermGroupError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LiftName {
    Z4g2,
    V2g2,
    U2g,
    Z2xA4,
    SL23,
    Z2xS4,
    W1,
    W2,
    W3,
    Z2xA5,
    SL25,
}

impl LiftName {
    pub const ALL: [LiftName; 11] = [
        LiftName::Z4g2,
        LiftName::V2g2,
        LiftName::U2g,
        LiftName::Z2xA4,
        LiftName::SL23,
        LiftName::Z2xS4,
        LiftName::W1,
        LiftName::W2,
        LiftName::W3,
        LiftName::Z2xA5,
        LiftName::SL25,
    ];

    pub fn tag(&self) -> &'static str {
        match self {
            LiftName::Z4g2 => "Z4g2",
            LiftName::V2g2 => "V2g2",
            LiftName::U2g => "U2g",
            LiftName::Z2xA4 => "Z2xA4",
            LiftName::SL23 => "SL23",
            LiftName::Z2xS4 => "Z2xS4",
            LiftName::W1 => "W1",
            LiftName::W2 => "W2",
            LiftName::W3 => "W3",
            LiftName::Z2xA5 => "Z2xA5",
            LiftName::SL25 => "SL25",
        }
    }

    pub fn is_admissible(&self, g: u32) -> bool {
        if g < 2 {
            return false;
        }
        let in_class = |m: u32, residues: &[u32]| residues.contains(&(g % m));
        match self {
            LiftName::Z4g2 | LiftName::V2g2 => true,
            LiftName::U2g => g >= 3,
            LiftName::Z2xA4 => in_class(6, &[1]),
            LiftName::SL23 => in_class(6, &[4]),
            LiftName::Z2xS4 => in_class(12, &[3, 11]),
            LiftName::W1 => in_class(12, &[2, 6]),
            LiftName::W2 => in_class(12, &[5, 9]),
            LiftName::W3 => in_class(12, &[0, 8]),
            LiftName::Z2xA5 => in_class(30, &[5, 9, 15, 29]),
            LiftName::SL25 => in_class(30, &[0, 14, 20, 24]),
        }
    }

    pub fn smallest_admissible_genus(&self) -> u32 {
        (2..).find(|&g| self.is_admissible(g)).expect("every family occurs")
    }

    /// The image in the sphere mapping class group at `r = 2g + 2`.
    pub fn base(&self, g: u32) -> GroupName {
        match self {
            LiftName::Z4g2 => GroupName::Cyclic(2 * g + 1),
            LiftName::V2g2 => GroupName::Dihedral(2 * g + 2),
            LiftName::U2g => GroupName::Dihedral(2 * g),
            LiftName::Z2xA4 | LiftName::SL23 => GroupName::Tetrahedral,
            LiftName::Z2xS4 | LiftName::W1 | LiftName::W2 | LiftName::W3 => GroupName::Octahedral,
            LiftName::Z2xA5 | LiftName::SL25 => GroupName::Icosahedral,
        }
    }

    pub fn expected_order(&self, g: u32) -> usize {
        2 * self.base(g).order()
    }

    /// Presentation text with `g` substituted.
    pub fn presentation_text(&self, g: u32) -> String {
        let direct = |p: u32| format!("<z,x,y | z^2, x^2, y^3, (x*y)^{p}, z*x*z^-1*x^-1, z*y*z^-1*y^-1>");
        match self {
            LiftName::Z4g2 => format!("<x | x^{}>", 4 * g + 2),
            LiftName::V2g2 => format!("<x,y | x^4, y^{}, (x*y)^2, (x^-1*y)^2>", 2 * g + 2),
            LiftName::U2g => format!("<x,y | x^2, y^{}, x*y*x*y^{}>", 4 * g, 2 * g + 1),
            LiftName::Z2xA4 => direct(3),
            LiftName::SL23 => "<x,y | x^4, y^3, (x*y)^3, y*x^2*y^-1*x^2>".to_string(),
            LiftName::Z2xS4 => direct(4),
            LiftName::W1 => "<x,y | x^2, y^3, (x*y)^4*(y*x)^4, (x*y)^8>".to_string(),
            LiftName::W2 => "<x,y | x^4, y^3, y*x^2*y^-1*x^2, (x*y)^4>".to_string(),
            LiftName::W3 => "<x,y | x^4, y^3, (x*y)^8, x^2*(x*y)^4>".to_string(),
            LiftName::Z2xA5 => direct(5),
            LiftName::SL25 => "<x,y | x^4, y^3, (x*y)^5, y*x^2*y^-1*x^2>".to_string(),
        }
    }
}

impl fmt::Display for LiftName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for LiftName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        LiftName::ALL
            .into_iter()
            .find(|n| n.tag().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| format!("unknown lift name {s:?}"))
    }
}

/// What `verify_lift` observed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftEvidence {
    pub enumerated_order: usize,
    pub center_order: usize,
    /// Central elements of order 2.
    pub involution_candidates: usize,
    /// The chosen central involution, in cycle notation on the regular
    /// representation.
    pub central_involution: String,
    pub quotient_isomorphic: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftRecord {
    pub name: LiftName,
    pub g: u32,
    pub base: GroupName,
    pub expected_order: usize,
    pub presentation_text: String,
    pub presentation: Presentation,
    pub verification: Option<LiftEvidence>,
}

fn record(name: LiftName, g: u32) -> LiftRecord {
    let presentation_text = name.presentation_text(g);
    let presentation = presentation_text.parse().expect("lift presentations parse");
    LiftRecord {
        name,
        g,
        base: name.base(g),
        expected_order: name.expected_order(g),
        presentation_text,
        presentation,
        verification: None,
    }
}

/// The admissible lifts at genus `g`, in catalog order. Empty for `g < 2`.
pub fn lift_catalog(g: u32) -> Vec<LiftRecord> {
    LiftName::ALL
        .into_iter()
        .filter(|n| n.is_admissible(g))
        .map(|n| record(n, g))
        .collect()
}

pub fn presentation_of(name: LiftName, g: u32) -> Result<Presentation, HyperellipticError> {
    if g < 2 {
        return Err(HyperellipticError::GenusTooSmall(g));
    }
    if !name.is_admissible(g) {
        return Err(HyperellipticError::NotAdmissible { name, g });
    }
    Ok(record(name, g).presentation)
}

/// Enumerates the lift, then looks for a central involution whose quotient
/// is isomorphic to the base.
///
/// The center can be larger than the involution subgroup (the whole group
/// for `Z4g2`, order 4 for the dihedral lifts at odd `g`), so every central
/// element of order 2 is tried in turn; the first that works is reported.
pub fn verify_lift(name: LiftName, g: u32, max_cosets: usize) -> Result<LiftRecord, HyperellipticError> {
    presentation_of(name, g)?;
    let mut rec = record(name, g);
    let (order, table) = todd_coxeter(&rec.presentation, max_cosets)?;
    if order != rec.expected_order {
        return Err(HyperellipticError::VerificationFailed(format!(
            "{name} at g = {g}: enumerated order {order}, expected {}",
            rec.expected_order
        )));
    }
    let group = table_to_permgroup(&table)?;
    let center = group.center();
    let candidates: Vec<_> = center
        .elements()
        .iter()
        .filter(|z| !z.is_identity() && z.order() == 2)
        .collect();
    if candidates.is_empty() {
        return Err(HyperellipticError::VerificationFailed(format!(
            "{name} at g = {g}: no central involution"
        )));
    }
    let base = construct(&rec.base.to_abstract())?;
    let cap = base.order();
    for z in &candidates {
        let quotient = group.quotient_by_central(z)?;
        if are_isomorphic_with_cap(&quotient, &base, cap)? {
            rec.verification = Some(LiftEvidence {
                enumerated_order: order,
                center_order: center.order(),
                involution_candidates: candidates.len(),
                central_involution: z.to_string(),
                quotient_isomorphic: true,
            });
            return Ok(rec);
        }
    }
    Err(HyperellipticError::VerificationFailed(format!(
        "{name} at g = {g}: no central involution has quotient {}",
        rec.base
    )))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassCountMode {
    Catalog,
    ClosedForm,
}

pub fn count_maximal_classes(g: u32, mode: ClassCountMode) -> usize {
    match mode {
        ClassCountMode::Catalog => lift_catalog(g).len(),
        ClassCountMode::ClosedForm => {
            if [0, 5, 9, 14, 15, 20, 24, 29].contains(&(g % 30)) {
                5
            } else if g == 2 {
                3
            } else {
                4
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftJson {
    pub name: &'static str,
    pub base: String,
    pub order: usize,
    pub presentation: String,
    pub verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub evidence: Option<LiftEvidence>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogJson {
    pub g: u32,
    pub lifts: Vec<LiftJson>,
}

impl From<&LiftRecord> for LiftJson {
    fn from(rec: &LiftRecord) -> Self {
        LiftJson {
            name: rec.name.tag(),
            base: rec.base.label(),
            order: rec.expected_order,
            presentation: rec.presentation_text.clone(),
            verified: rec.verification.is_some(),
            evidence: rec.verification.clone(),
        }
    }
}

pub fn catalog_json(g: u32, records: &[LiftRecord]) -> CatalogJson {
    CatalogJson {
        g,
        lifts: records.iter().map(LiftJson::from).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpgroup::DEFAULT_MAX_COSETS;
    use crate::permgroup::are_isomorphic;

    fn names(g: u32) -> Vec<LiftName> {
        lift_catalog(g).into_iter().map(|r| r.name).collect()
    }

    #[test]
    fn catalogs() {
        use LiftName::*;
        assert_eq!(names(2), vec![Z4g2, V2g2, W1]);
        assert_eq!(names(5), vec![Z4g2, V2g2, U2g, W2, Z2xA5]);
        assert_eq!(names(3), vec![Z4g2, V2g2, U2g, Z2xS4]);
    }

    #[test]
    fn presentations() {
        let show = |n, g| presentation_of(n, g).unwrap().to_string();
        assert_eq!(show(LiftName::U2g, 3), "<x,y | x^2, y^12, x*y*x*y^7>");
        assert_eq!(show(LiftName::Z4g2, 2), "<x | x^10>");
        let v: Presentation = "<x,y | x^4, y^6, x*y*x*y, x^-1*y*x^-1*y>".parse().unwrap();
        assert_eq!(presentation_of(LiftName::V2g2, 2).unwrap(), v);
        assert_eq!(
            presentation_of(LiftName::U2g, 2),
            Err(HyperellipticError::NotAdmissible { name: LiftName::U2g, g: 2 })
        );
    }

    #[test]
    fn verification_examples() {
        for (name, g, order) in [(LiftName::SL23, 4, 24), (LiftName::W2, 5, 48), (LiftName::Z2xA5, 5, 120)] {
            let rec = verify_lift(name, g, DEFAULT_MAX_COSETS).unwrap();
            let ev = rec.verification.unwrap();
            assert_eq!(ev.enumerated_order, order);
            assert!(ev.quotient_isomorphic);
        }
    }

    #[test]
    fn dihedral_lift_center_grows_at_odd_genus() {
        let ev = verify_lift(LiftName::U2g, 3, DEFAULT_MAX_COSETS).unwrap().verification.unwrap();
        assert_eq!(ev.center_order, 4);
        let ev = verify_lift(LiftName::V2g2, 2, DEFAULT_MAX_COSETS).unwrap().verification.unwrap();
        assert_eq!(ev.center_order, 2);
    }

    #[test]
    fn class_counts() {
        use ClassCountMode::*;
        assert_eq!(count_maximal_classes(2, ClosedForm), 3);
        assert_eq!(count_maximal_classes(5, ClosedForm), 5);
        assert_eq!(count_maximal_classes(7, ClosedForm), 4);
        for g in 2..=200 {
            assert_eq!(count_maximal_classes(g, Catalog), count_maximal_classes(g, ClosedForm), "g = {g}");
        }
    }

    #[test]
    fn json_shape() {
        let cat = catalog_json(5, &lift_catalog(5));
        let json = serde_json::to_string(&cat.lifts[3]).unwrap();
        assert_eq!(
            json,
            r#"{"name":"W2","base":"S4","order":48,"presentation":"<x,y | x^4, y^3, y*x^2*y^-1*x^2, (x*y)^4>","verified":false}"#
        );
    }

    #[test]
    fn tetrahedral_lifts_differ() {
        let build = |n: LiftName| {
            let (_, t) = todd_coxeter(&presentation_of(n, n.smallest_admissible_genus()).unwrap(), 1000).unwrap();
            table_to_permgroup(&t).unwrap()
        };
        assert!(!are_isomorphic(&build(LiftName::Z2xA4), &build(LiftName::SL23)).unwrap());
    }
}
