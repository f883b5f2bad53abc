//! The cyclic action `zeta = (1 2 ... n+1)` on arrows and the check that the
//! facets of the type-B associahedron split into the `n+1` rotated copies of
//! the positive root polytope.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::representation::{Arrow, ArrowSet};
use crate::scalar::binomial;
use crate::simion::{enumerate_facets, facet_type, NoncrossingFace};

pub const DECOMPOSITION_LIMIT: u32 = 6;

/// Adds `power` modulo `n+1` to both endpoints.
pub fn zeta_apply(a: &Arrow, power: i64) -> Arrow {
    let m = a.n() as i64 + 1;
    let shift = |x: u32| ((x as i64 - 1 + power).rem_euclid(m) + 1) as u32;
    Arrow::new(a.n(), shift(a.tail()), shift(a.head())).expect("rotation keeps endpoints distinct")
}

pub fn zeta_apply_set(s: &ArrowSet, power: i64) -> ArrowSet {
    s.iter().fold(ArrowSet::empty(s.n()).expect("same n"), |acc, a| {
        acc.with(zeta_apply(&a, power))
    })
}

/// Every arrow of `zeta^{1-k}(f)` is backward.
pub fn is_in_positive_component(f: &NoncrossingFace, k: i64) -> bool {
    f.arrows().iter().all(|a| zeta_apply(&a, 1 - k).is_backward())
}

#[derive(Debug, Clone, Serialize)]
pub struct TypeClass {
    pub k: u32,
    pub count: usize,
    pub in_positive_component: bool,
    /// `zeta` maps this class onto the class of type `k+1` (type 1 after `n+1`).
    pub maps_to_next: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DecompositionReport {
    pub n: u32,
    pub facets: usize,
    pub expected_class_size: u64,
    pub classes: Vec<TypeClass>,
    pub counterexamples: Vec<String>,
    pub passed: bool,
}

pub fn verify_decomposition(n: u32) -> Result<DecompositionReport> {
    if n > DECOMPOSITION_LIMIT {
        return Err(Error::UnsupportedScale {
            what: "decomposition check",
            n,
            limit: DECOMPOSITION_LIMIT,
        });
    }
    let facets = enumerate_facets(n)?;
    let expected = binomial::<i64>(2 * n as u64, n as u64) as u64 / (n as u64 + 1);
    let mut by_type: BTreeMap<u32, HashSet<ArrowSet>> = (1..=n + 1).map(|k| (k, HashSet::new())).collect();
    let mut counterexamples = Vec::new();
    for f in &facets {
        let k = facet_type(&f.to_vec())?;
        by_type.get_mut(&k).expect("type in range").insert(f.arrows());
        if !is_in_positive_component(f, k as i64) {
            counterexamples.push(format!("type-{k} facet {} leaves its component", f.arrows()));
        }
    }
    let mut classes = Vec::new();
    for (&k, class) in &by_type {
        let next = if k == n + 1 { 1 } else { k + 1 };
        let image: HashSet<ArrowSet> = class.iter().map(|s| zeta_apply_set(s, 1)).collect();
        let maps_to_next = image == by_type[&next];
        if !maps_to_next {
            counterexamples.push(format!("zeta does not map type {k} onto type {next}"));
        }
        if class.len() as u64 != expected {
            counterexamples.push(format!("type {k} has {} facets, expected {expected}", class.len()));
        }
        let in_positive_component = class.iter().all(|s| s.iter().all(|a| zeta_apply(&a, 1 - k as i64).is_backward()));
        classes.push(TypeClass {
            k,
            count: class.len(),
            in_positive_component,
            maps_to_next,
        });
    }
    Ok(DecompositionReport {
        n,
        facets: facets.len(),
        expected_class_size: expected,
        passed: counterexamples.is_empty(),
        classes,
        counterexamples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::representation::{all_arrows, arc_of_bdiagonal, arrows_compatible, bdiagonal_of_arrow};

    fn arrow(n: u32, t: u32, h: u32) -> Arrow {
        Arrow::new(n, t, h).unwrap()
    }

    #[test]
    fn zeta_examples() {
        assert_eq!(zeta_apply(&arrow(10, 4, 2), 1), arrow(10, 5, 3));
        for n in 1..=8 {
            assert_eq!(zeta_apply(&arrow(n, n + 1, 1), 1), arrow(n, 1, 2));
            for a in all_arrows(n) {
                assert_eq!(zeta_apply(&a, n as i64 + 1), a);
                assert_eq!(zeta_apply(&zeta_apply(&a, 3), -3), a);
                assert_eq!(zeta_apply(&a, -1), zeta_apply(&a, n as i64));
            }
        }
    }

    #[test]
    fn compatibility_is_rotation_invariant() {
        for n in 1..=8 {
            let arrows = all_arrows(n);
            for a in &arrows {
                for b in &arrows {
                    if a == b {
                        continue;
                    }
                    assert_eq!(
                        arrows_compatible(a, b).unwrap(),
                        arrows_compatible(&zeta_apply(a, 1), &zeta_apply(b, 1)).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn zeta_rotates_the_polygon() {
        for n in 1..=6 {
            for a in all_arrows(n) {
                let before = arc_of_bdiagonal(&bdiagonal_of_arrow(&a)).unwrap();
                let after = arc_of_bdiagonal(&bdiagonal_of_arrow(&zeta_apply(&a, 1))).unwrap();
                assert_eq!(after, before.rotated(1), "{a}");
            }
        }
    }

    #[test]
    fn positive_component_examples() {
        let f = |pairs: &[(u32, u32)]| {
            let arrows: Vec<Arrow> = pairs.iter().map(|&(t, h)| arrow(2, t, h)).collect();
            NoncrossingFace::from_arrows(2, &arrows).unwrap()
        };
        assert!(is_in_positive_component(&f(&[(3, 1), (2, 1)]), 1));
        assert!(is_in_positive_component(&f(&[(1, 2), (3, 2)]), 2));
        assert!(!is_in_positive_component(&f(&[(1, 2), (3, 2)]), 1));
    }

    #[test]
    fn decomposition() {
        let sizes = [1, 1, 2, 5, 14, 42, 132];
        for n in 1..=6 {
            let r = verify_decomposition(n).unwrap();
            assert!(r.passed, "{:?}", r.counterexamples);
            assert_eq!(r.classes.len(), n as usize + 1);
            assert!(r.classes.iter().all(|c| c.count == sizes[n as usize] && c.in_positive_component && c.maps_to_next));
        }
        assert_eq!(verify_decomposition(2).unwrap().facets, 6);
        assert!(verify_decomposition(7).is_err());
    }
}
