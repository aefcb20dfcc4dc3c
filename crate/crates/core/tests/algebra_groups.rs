mod common;

use std::cmp::max;

use superchar_core::algebra::{
    alg_corank, alg_mesh_data, alg_orbit_partition, alg_value_with_corank, algebra_envelope, StructureAlgebra,
};
use superchar_core::gf::{theta, CharValue, FieldElem};
use superchar_core::oracle::Oracle;
use superchar_core::pattern::{OrbitKind, DEFAULT_CAP};

fn coords(bits: &str) -> Vec<FieldElem> {
    let f = common::field(2);
    bits.bytes().map(|b| f.from_packed(u32::from(b - b'0')).unwrap()).collect()
}

/// Integer table of an algebra group over F_2, rows keyed by η and columns by φ.
fn integer_table(alg: &StructureAlgebra, etas: &[Vec<FieldElem>], phis: &[Vec<FieldElem>]) -> Vec<Vec<i64>> {
    etas.iter()
        .map(|eta| {
            let c = alg_corank(alg, eta, DEFAULT_CAP).unwrap();
            phis.iter()
                .map(|phi| alg_value_with_corank(alg, eta, phi, c).unwrap().as_integer(2, 2).unwrap())
                .collect()
        })
        .collect()
}

#[test]
fn sixteen_element_golden_table() {
    let alg = common::sixteen();
    // columns 1, z, lr, x, r, l, xr in (a, b, c, d) coordinates
    let phis: Vec<_> = ["0000", "0001", "0110", "1000", "0010", "0100", "1011"].map(coords).to_vec();
    let printed: Vec<Vec<i64>> = vec![
        vec![1, 1, 1, 1, 1, 1, 1],
        vec![1, 1, 1, -1, 1, 1, -1],
        vec![1, 1, 1, 1, -1, -1, -1],
        vec![1, 1, 1, -1, -1, -1, 1],
        vec![2, 2, -2, 0, -2, 2, 0],
        vec![2, 2, -2, 0, 2, -2, 0],
        vec![4, -4, 0, 0, 0, 0, 0],
    ];
    let classes = alg_orbit_partition(&alg, OrbitKind::Class, DEFAULT_CAP).unwrap();
    let chars = alg_orbit_partition(&alg, OrbitKind::Character, DEFAULT_CAP).unwrap();
    assert_eq!(classes.reps.len(), 7);
    assert_eq!(chars.reps.len(), 7);
    let mut column_orbits: Vec<u32> = phis.iter().map(|p| classes.orbit_of[pack2(p)]).collect();
    column_orbits.sort_unstable();
    column_orbits.dedup();
    assert_eq!(column_orbits.len(), 7, "the printed columns are distinct superclasses");

    let mut computed = integer_table(&alg, &chars.reps, &phis);
    let mut expected = printed.clone();
    computed.sort();
    expected.sort();
    assert_eq!(computed, expected);

    let named = integer_table(&alg, &["0001", "0010", "0100", "1000"].map(coords), &phis);
    assert_eq!(named[0], printed[6]);
    assert_eq!(named[1], printed[4]);
    assert_eq!(named[2], printed[5]);
    assert_eq!(named[3], printed[1]);
}

fn pack2(v: &[FieldElem]) -> usize {
    v.iter().fold(0, |acc, x| acc * 2 + x.packed() as usize)
}

#[test]
fn algebra_formula_matches_oracle() {
    let mut cases = vec![("sixteen", common::sixteen())];
    for q in [2, 3] {
        cases.push(("semidirect4", common::semidirect(4, q)));
        cases.push(("semidirect5", common::semidirect(5, q)));
    }
    for (name, alg) in cases {
        let q = alg.field().q();
        let p = alg.field().p();
        let oracle = Oracle::new(&alg, 1 << 16).unwrap();
        let table = oracle.table().unwrap();
        let classes = alg_orbit_partition(&alg, OrbitKind::Class, DEFAULT_CAP).unwrap();
        let chars = alg_orbit_partition(&alg, OrbitKind::Character, DEFAULT_CAP).unwrap();
        assert_eq!(classes.orbit_of, table.classes.orbit_of, "{name} q={q}");
        assert_eq!(chars.orbit_of, table.chars.orbit_of, "{name} q={q}");
        for (c, eta) in chars.reps.iter().enumerate() {
            let corank = alg_corank(&alg, eta, DEFAULT_CAP).unwrap();
            assert_eq!(q.pow(corank as u32) as u64, table.right_sizes[c], "{name} q={q}");
            for (k, phi) in classes.reps.iter().enumerate() {
                let v = alg_value_with_corank(&alg, eta, phi, corank).unwrap();
                assert_eq!(v.to_cyc(q, p).unwrap(), table.values[c][k], "{name} q={q} eta={eta:?} phi={phi:?}");
            }
        }
    }
}

/// χ^(k, l̄, b, t)(x_(i, j̄, a, s)) = q^{max(k−2, n−1−l)} θ(ab δ_ik + st δ_jl) when
/// the a- and b-vectors vanish, and 0 otherwise; an absent k counts as 2 and an
/// absent l as n−1.
#[test]
fn semidirect_closed_form() {
    for (n, q) in [(4, 2), (4, 3), (5, 2), (5, 3)] {
        let alg = common::semidirect(n, q);
        let f = alg.field().clone();
        let units: Vec<FieldElem> = f.units().collect();
        let tops: Vec<Option<usize>> = (2..n).map(Some).chain([None]).collect();
        let columns: Vec<Option<usize>> = (1..n).map(Some).chain([None]).collect();
        let functional = |top: Option<usize>, x: FieldElem, col: Option<usize>, y: FieldElem| {
            let mut v = alg.zero();
            if let Some(i) = top {
                v[i - 2] = x;
            }
            if let Some(j) = col {
                v[n - 3 + j] = y;
            }
            v
        };
        for &k in &tops {
            for &l in &columns {
                for &b in &units {
                    for &t in &units {
                        let eta = functional(k, b, l, t);
                        let corank = alg_corank(&alg, &eta, DEFAULT_CAP).unwrap();
                        let exp = max(k.unwrap_or(2) as i64 - 2, (n - 1 - l.unwrap_or(n - 1)) as i64);
                        assert_eq!(corank as i64, exp, "n={n} q={q} k={k:?} l={l:?}");
                        for &i in &tops {
                            for &j in &columns {
                                for &a in &units {
                                    for &s in &units {
                                        let phi = functional(i, a, j, s);
                                        let data = alg_mesh_data(&alg, &phi, &eta);
                                        let expected = if data.a.iter().chain(&data.b).all(|x| x.is_zero()) {
                                            let mut arg = FieldElem::ZERO;
                                            if i.is_some() && i == k {
                                                arg = f.add(arg, f.mul(a, b));
                                            }
                                            if j.is_some() && j == l {
                                                arg = f.add(arg, f.mul(s, t));
                                            }
                                            match theta(&f, arg) {
                                                CharValue::Unit { zeta_exp, .. } => {
                                                    CharValue::Unit { q_exp: exp as u32, zeta_exp }
                                                }
                                                CharValue::Zero => CharValue::Zero,
                                            }
                                        } else {
                                            CharValue::Zero
                                        };
                                        assert_eq!(
                                            alg_value_with_corank(&alg, &eta, &phi, corank).unwrap(),
                                            expected,
                                            "n={n} q={q} eta={eta:?} phi={phi:?}"
                                        );
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn embedded_examples_have_full_envelopes() {
    let alg = common::semidirect(5, 2);
    let env = algebra_envelope(&alg).unwrap();
    assert!(env.is_full());
    let sixteen = algebra_envelope(&common::sixteen()).unwrap();
    assert!(sixteen.is_full());
}

#[test]
fn corank_is_constant_on_coorbits() {
    for alg in [common::sixteen(), common::semidirect(4, 3)] {
        let chars = alg_orbit_partition(&alg, OrbitKind::Character, DEFAULT_CAP).unwrap();
        let q = alg.field().q() as u64;
        let d = alg.dim();
        let reps: Vec<usize> =
            chars.reps.iter().map(|r| alg_corank(&alg, r, DEFAULT_CAP).unwrap()).collect();
        for code in 0..q.pow(d as u32) {
            let mut v = vec![FieldElem::ZERO; d];
            let mut c = code;
            for slot in v.iter_mut().rev() {
                *slot = alg.field().from_packed((c % q) as u32).unwrap();
                c /= q;
            }
            let orbit = chars.orbit_of[code as usize] as usize;
            assert_eq!(alg_corank(&alg, &v, DEFAULT_CAP).unwrap(), reps[orbit]);
        }
    }
}
