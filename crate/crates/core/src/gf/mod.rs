//! Finite fields, dense linear algebra over them, and cyclotomic integers.

mod cyclotomic;
mod field;
mod matrix;

pub use cyclotomic::{CharValue, CycInt};
pub use field::{FieldElem, GaloisField, MAX_ORDER};
pub use matrix::{dot, span_rank, Analysis, Echelon, FqMatrix};

/// The fixed additive character θ(t) = ζ_p^{Tr t}.
pub fn theta(f: &GaloisField, t: FieldElem) -> CharValue {
    CharValue::Unit { q_exp: 0, zeta_exp: f.trace(t) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn field(q: u32) -> GaloisField {
        GaloisField::new(q, None).unwrap()
    }

    #[test]
    fn theta_examples() {
        let f3 = field(3);
        assert_eq!(theta(&f3, f3.zero()), CharValue::ONE);
        assert_eq!(theta(&f3, f3.one()), CharValue::Unit { q_exp: 0, zeta_exp: 1 });
        let f2 = field(2);
        assert_eq!(theta(&f2, f2.one()).as_integer(2, 2), Some(-1));
    }

    #[test]
    fn theta_sums_to_zero() {
        for q in [2, 3, 4, 5, 8, 9] {
            let f = field(q);
            let mut total = CycInt::zero(f.p());
            for t in f.elements() {
                total = &total + &theta(&f, t).to_cyc(q, f.p()).unwrap();
            }
            assert!(total.is_zero(), "q = {q}");
        }
    }

    #[test]
    fn theta_is_a_homomorphism() {
        for q in [2, 3, 4, 9] {
            let f = field(q);
            for a in f.elements() {
                for b in f.elements() {
                    let lhs = theta(&f, f.add(a, b)).to_cyc(q, f.p()).unwrap();
                    let rhs = &theta(&f, a).to_cyc(q, f.p()).unwrap()
                        * &theta(&f, b).to_cyc(q, f.p()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    fn arb_matrix() -> impl Strategy<Value = (u32, Vec<Vec<u32>>)> {
        (prop::sample::select(vec![2u32, 3, 4, 5]), 1usize..6, 1usize..9).prop_flat_map(
            |(q, r, c)| (Just(q), prop::collection::vec(prop::collection::vec(0..q, c), r)),
        )
    }

    fn build(f: &GaloisField, rows: &[Vec<u32>]) -> FqMatrix {
        FqMatrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&v| f.from_packed(v).unwrap()).collect()).collect(),
        )
    }

    fn enumerate_span(f: &GaloisField, basis: &[Vec<FieldElem>], len: usize) -> Vec<Vec<FieldElem>> {
        let mut out = vec![vec![FieldElem::ZERO; len]];
        for v in basis {
            let mut next = Vec::new();
            for w in &out {
                for t in f.elements() {
                    next.push(w.iter().zip(v).map(|(&a, &b)| f.mul_add(a, t, b)).collect());
                }
            }
            out = next;
        }
        out
    }

    proptest! {
        #[test]
        fn rank_nullity((q, rows) in arb_matrix()) {
            let f = field(q);
            let m = build(&f, &rows);
            let null = m.nullspace_basis(&f);
            prop_assert_eq!(m.rank(&f) + null.len(), m.cols());
            for v in &null {
                prop_assert!(m.mul_vec(&f, v).iter().all(|x| x.is_zero()));
            }
        }

        #[test]
        fn solve_is_exact((q, rows) in arb_matrix(), seed in prop::collection::vec(0u32..65536, 6)) {
            let f = field(q);
            let m = build(&f, &rows);
            let c: Vec<FieldElem> = (0..m.rows()).map(|i| f.from_packed(seed[i] % q).unwrap()).collect();
            match m.solve(&f, &c) {
                Some(x) => prop_assert_eq!(m.mul_vec(&f, &x), c),
                None => {
                    let aug: Vec<Vec<u32>> = rows.iter().zip(&c)
                        .map(|(r, ci)| { let mut r = r.clone(); r.push(ci.packed()); r })
                        .collect();
                    prop_assert!(build(&f, &aug).rank(&f) > m.rank(&f));
                }
            }
        }

        #[test]
        fn perp_matches_exhaustive((q, rows) in arb_matrix(), b in prop::collection::vec(0u32..65536, 8)) {
            prop_assume!(q == 2 || q == 3);
            let f = field(q);
            let m = build(&f, &rows);
            let b: Vec<FieldElem> = (0..m.cols()).map(|i| f.from_packed(b[i] % q).unwrap()).collect();
            let null = m.nullspace_basis(&f);
            let exhaustive = enumerate_span(&f, &null, m.cols())
                .iter()
                .all(|v| dot(&f, v, &b).is_zero());
            prop_assert_eq!(m.perp_to_nullspace(&f, &b), exhaustive);
        }

        #[test]
        fn conjugation_is_an_involution(p in prop::sample::select(vec![2u32, 3, 5, 7]),
                                        c in prop::collection::vec(-1000i64..1000, 6)) {
            let x = CycInt::from_coeffs(p, c[..(p - 1) as usize].to_vec());
            prop_assert_eq!(x.conjugate().conjugate(), x.clone());
            if p == 2 {
                prop_assert_eq!(x.conjugate(), x);
            }
        }
    }
}
