//! Symbolic bookkeeping for the composition category whose objects are
//! reductive groups and whose morphisms are symplectic varieties with
//! two-sided actions. Morphisms carry only dimension and action metadata;
//! composition over a shared group subtracts twice its dimension, and an
//! abelian middle group survives as an extra action on the composite.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A complex reductive group, reduced to the data the arithmetic needs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupObject {
    pub name: String,
    pub complex_dimension: i64,
    pub rank: i64,
    pub abelian: bool,
}

impl GroupObject {
    pub fn new(
        name: &str,
        complex_dimension: i64,
        rank: i64,
        abelian: bool,
    ) -> Result<GroupObject> {
        if rank < 0 || rank > complex_dimension {
            return Err(Error::Precondition(format!(
                "rank {rank} outside 0..={complex_dimension}"
            )));
        }
        if abelian && rank != complex_dimension {
            return Err(Error::Precondition(
                "abelian groups have rank equal to dimension".into(),
            ));
        }
        Ok(GroupObject {
            name: name.to_string(),
            complex_dimension,
            rank,
            abelian,
        })
    }

    pub fn special_linear(n: i64) -> GroupObject {
        GroupObject {
            name: format!("SL{n}"),
            complex_dimension: n * n - 1,
            rank: n - 1,
            abelian: n <= 1,
        }
    }

    pub fn trivial() -> GroupObject {
        GroupObject {
            name: "1".into(),
            complex_dimension: 0,
            rank: 0,
            abelian: true,
        }
    }

    /// Maximal torus as its own object.
    pub fn torus_of(&self) -> GroupObject {
        GroupObject {
            name: format!("T({})", self.name),
            complex_dimension: self.rank,
            rank: self.rank,
            abelian: true,
        }
    }

    pub fn product(&self, other: &GroupObject) -> GroupObject {
        GroupObject {
            name: format!("{}x{}", self.name, other.name),
            complex_dimension: self.complex_dimension + other.complex_dimension,
            rank: self.rank + other.rank,
            abelian: self.abelian && other.abelian,
        }
    }
}

/// A morphism: a variety with commuting actions of the source, the target,
/// and any extra groups picked up along the way. Only the dimension and the
/// action records are tracked.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MtMorphism {
    pub label: String,
    pub source: GroupObject,
    pub target: GroupObject,
    pub complex_dimension: i64,
    #[serde(default)]
    pub extra_actions: Vec<GroupObject>,
    /// Set when some composition produced a negative dimension; the
    /// composite may be empty or degenerate.
    #[serde(default)]
    pub degenerate: bool,
}

impl MtMorphism {
    pub fn new(
        label: &str,
        source: GroupObject,
        target: GroupObject,
        complex_dimension: i64,
    ) -> MtMorphism {
        MtMorphism {
            label: label.to_string(),
            source,
            target,
            complex_dimension,
            degenerate: complex_dimension < 0,
            extra_actions: Vec::new(),
        }
    }
}

/// Composite of x: G1 -> G2 and y: G2 -> G3 by reduction along the shared
/// middle group. An abelian middle survives anti-diagonally as an extra
/// action on the result.
pub fn compose(x: &MtMorphism, y: &MtMorphism) -> Result<MtMorphism> {
    if x.target != y.source {
        return Err(Error::MiddleObjectMismatch(
            x.target.name.clone(),
            y.source.name.clone(),
        ));
    }
    let mid = &x.target;
    let dim = x.complex_dimension + y.complex_dimension - 2 * mid.complex_dimension;
    let mut extra = x.extra_actions.clone();
    extra.extend(y.extra_actions.iter().cloned());
    if mid.abelian {
        let mut survivor = mid.clone();
        if survivor.name == x.source.name || survivor.name == y.target.name {
            survivor.name = format!("anti-diagonal {}", survivor.name);
        }
        extra.push(survivor);
    }
    Ok(MtMorphism {
        label: format!("({} . {})", y.label, x.label),
        source: x.source.clone(),
        target: y.target.clone(),
        complex_dimension: dim,
        extra_actions: extra,
        degenerate: x.degenerate || y.degenerate || dim < 0,
    })
}

/// Monoidal product: pair the endpoints, add the dimensions.
pub fn tensor(x: &MtMorphism, y: &MtMorphism) -> MtMorphism {
    MtMorphism {
        label: format!("({} x {})", x.label, y.label),
        source: x.source.product(&y.source),
        target: x.target.product(&y.target),
        complex_dimension: x.complex_dimension + y.complex_dimension,
        extra_actions: x
            .extra_actions
            .iter()
            .chain(&y.extra_actions)
            .cloned()
            .collect(),
        degenerate: x.degenerate || y.degenerate,
    }
}

/// The universal morphisms attached to a group: the cotangent identity, the
/// right and left implosions against the maximal torus, and the contraction
/// with its extra torus action.
pub fn catalog(g: &GroupObject) -> Vec<MtMorphism> {
    let t = g.torus_of();
    let d = g.complex_dimension;
    let r = g.rank;
    let identity = MtMorphism::new(
        &format!("cotangent({})", g.name),
        g.clone(),
        g.clone(),
        2 * d,
    );
    let right = MtMorphism::new(
        &format!("implosion_right({})", g.name),
        g.clone(),
        t.clone(),
        d + r,
    );
    let left = MtMorphism::new(
        &format!("implosion_left({})", g.name),
        t.clone(),
        g.clone(),
        d + r,
    );
    let mut contraction = MtMorphism::new(
        &format!("contraction({})", g.name),
        g.clone(),
        g.clone(),
        2 * d,
    );
    contraction.extra_actions.push(t);
    vec![identity, right, left, contraction]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sl2() -> GroupObject {
        GroupObject::special_linear(2)
    }

    #[test]
    fn group_invariants() {
        assert!(GroupObject::new("X", 3, 4, false).is_err());
        assert!(GroupObject::new("X", 3, 2, true).is_err());
        let t = sl2().torus_of();
        assert!(t.abelian && t.rank == t.complex_dimension);
    }

    #[test]
    fn identity_is_dimension_neutral() {
        let g = sl2();
        let cat = catalog(&g);
        let id = &cat[0];
        let x = MtMorphism::new("M", GroupObject::trivial(), g.clone(), 10);
        let composed = compose(&x, id).unwrap();
        assert_eq!(composed.complex_dimension, 10);
        assert_eq!(composed.extra_actions.len(), 0);

        let y = MtMorphism::new("N", g.clone(), GroupObject::trivial(), 8);
        let composed = compose(id, &y).unwrap();
        assert_eq!(composed.complex_dimension, 8);
    }

    #[test]
    fn implosion_dimension_count() {
        let g = sl2();
        let cat = catalog(&g);
        let right = &cat[1];
        assert_eq!(right.complex_dimension, 4); // dim 3 + rank 1

        let m = MtMorphism::new("M", GroupObject::trivial(), g.clone(), 12);
        let imploded = compose(&m, right).unwrap();
        assert_eq!(
            imploded.complex_dimension,
            12 + g.rank - g.complex_dimension
        );
    }

    #[test]
    fn contraction_preserves_dimension_and_adds_torus() {
        let g = sl2();
        let cat = catalog(&g);
        let (right, left) = (&cat[1], &cat[2]);
        let m = MtMorphism::new("M", GroupObject::trivial(), g.clone(), 12);
        let contracted = compose(&compose(&m, right).unwrap(), left).unwrap();
        assert_eq!(contracted.complex_dimension, 12);
        assert_eq!(contracted.extra_actions.len(), 1);
        assert!(contracted.extra_actions[0].abelian);
        assert_eq!(contracted.target, g);
    }

    #[test]
    fn universal_contraction_dimension() {
        let g = sl2();
        let cat = catalog(&g);
        // Composing the two implosions over the torus reproduces the catalog
        // contraction dimension: 4 + 4 - 2 = 6 = 2 dim G.
        let through = compose(&cat[1], &cat[2]).unwrap();
        assert_eq!(through.complex_dimension, 6);
        assert_eq!(cat[3].complex_dimension, 6);
        assert_eq!(through.extra_actions.len(), 1);
    }

    #[test]
    fn abelian_group_catalog_degenerates() {
        let t = GroupObject::new("T", 2, 2, true).unwrap();
        let cat = catalog(&t);
        assert_eq!(cat[0].complex_dimension, 4);
        assert_eq!(cat[1].complex_dimension, 4); // rank = dim
    }

    #[test]
    fn tensor_adds_dimensions() {
        let g = sl2();
        let cat = catalog(&g);
        let id = &cat[0];
        let point = MtMorphism::new("pt", GroupObject::trivial(), GroupObject::trivial(), 0);
        assert_eq!(tensor(id, &point).complex_dimension, id.complex_dimension);

        let h = GroupObject::special_linear(3);
        let idh = &catalog(&h)[0];
        assert_eq!(
            tensor(id, idh).complex_dimension,
            2 * (g.complex_dimension + h.complex_dimension)
        );

        let right = &cat[1];
        assert_eq!(
            tensor(right, right).complex_dimension,
            2 * (g.complex_dimension + g.rank)
        );
    }

    #[test]
    fn composition_dimension_associative() {
        let g = sl2();
        let h = GroupObject::special_linear(3);
        let x = MtMorphism::new("X", GroupObject::trivial(), g.clone(), 14);
        let y = MtMorphism::new("Y", g.clone(), h.clone(), 9);
        let z = MtMorphism::new("Z", h.clone(), GroupObject::trivial(), 21);
        let left = compose(&compose(&x, &y).unwrap(), &z).unwrap();
        let right = compose(&x, &compose(&y, &z).unwrap()).unwrap();
        assert_eq!(left.complex_dimension, right.complex_dimension);
    }

    #[test]
    fn middle_mismatch_and_degenerate_flag() {
        let g = sl2();
        let h = GroupObject::special_linear(3);
        let x = MtMorphism::new("X", GroupObject::trivial(), g.clone(), 2);
        let y = MtMorphism::new("Y", h.clone(), GroupObject::trivial(), 2);
        assert!(matches!(
            compose(&x, &y),
            Err(Error::MiddleObjectMismatch(_, _))
        ));

        let small = MtMorphism::new("S", g.clone(), g.clone(), 1);
        let out = compose(&small, &small).unwrap();
        assert!(out.degenerate);
        assert_eq!(out.complex_dimension, 1 + 1 - 6);
    }
}
