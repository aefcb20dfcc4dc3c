#![allow(dead_code)]

use superchar_core::algebra::StructureAlgebra;
use superchar_core::gf::{FieldElem, GaloisField};
use superchar_core::pattern::PatternGroup;
use superchar_core::poset::ClosedSet;

pub fn field(q: u32) -> GaloisField {
    GaloisField::new(q, None).unwrap()
}

pub fn group(set: ClosedSet, q: u32) -> PatternGroup {
    PatternGroup::new(set, field(q))
}

pub fn functional(g: &PatternGroup, entries: &[((usize, usize), i64)]) -> Vec<FieldElem> {
    let mut v = g.zero();
    for &((i, j), x) in entries {
        v[g.set().index_of(i, j).unwrap()] = g.field().from_int(x);
    }
    v
}

pub fn cautionary_classes() -> ClosedSet {
    ClosedSet::validate_closed(5, &[(1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5), (3, 5), (4, 5)]).unwrap()
}

pub fn cautionary_coorbits() -> ClosedSet {
    ClosedSet::close_covers(5, &[(1, 3), (2, 3), (3, 4), (3, 5)]).unwrap()
}

pub fn conjugacy_example() -> ClosedSet {
    ClosedSet::close_covers(5, &[(1, 2), (2, 3), (2, 4), (3, 5), (4, 5)]).unwrap()
}

pub fn annihilator_example() -> ClosedSet {
    ClosedSet::close_covers(5, &[(1, 2), (2, 3), (2, 4), (4, 5)]).unwrap()
}

pub fn determinant_example() -> ClosedSet {
    ClosedSet::close_covers(6, &[(1, 3), (2, 3), (3, 4), (3, 5), (5, 6)]).unwrap()
}

pub fn two_step() -> ClosedSet {
    ClosedSet::close_covers(6, &[(1, 3), (2, 3), (2, 4), (3, 5), (4, 6)]).unwrap()
}

/// Every bundled closed set, by name.
pub fn corpus() -> Vec<(&'static str, ClosedSet)> {
    vec![
        ("heisenberg3", ClosedSet::heisenberg(3).unwrap()),
        ("heisenberg4", ClosedSet::heisenberg(4).unwrap()),
        ("heisenberg5", ClosedSet::heisenberg(5).unwrap()),
        ("full3", ClosedSet::full(3)),
        ("full4", ClosedSet::full(4)),
        ("cautionary-classes", cautionary_classes()),
        ("cautionary-coorbits", cautionary_coorbits()),
        ("conjugacy-example", conjugacy_example()),
        ("annihilator-example", annihilator_example()),
        ("determinant-example", determinant_example()),
        ("two-step", two_step()),
    ]
}

/// H_{n-1} ⋉ F_q^{n-1}: basis v_2..v_{n-1} (shifted diagonals of the top block)
/// followed by v̄_1..v̄_{n-1} (last column).
pub fn semidirect(n: usize, q: u32) -> StructureAlgebra {
    let mut basis = Vec::new();
    for i in 2..n {
        basis.push((1..=n - i).map(|r| (r, r + i - 1, FieldElem::ONE)).collect());
    }
    for j in 1..n {
        basis.push(vec![(j, n, FieldElem::ONE)]);
    }
    StructureAlgebra::from_embedding(field(q), n, basis).unwrap()
}

/// The order-16 group with a = E12+E23+E34, b = E13, c = E24, d = E14.
pub fn sixteen() -> StructureAlgebra {
    let one = FieldElem::ONE;
    let basis = vec![
        vec![(1, 2, one), (2, 3, one), (3, 4, one)],
        vec![(1, 3, one)],
        vec![(2, 4, one)],
        vec![(1, 4, one)],
    ];
    StructureAlgebra::from_embedding(field(2), 4, basis).unwrap()
}
