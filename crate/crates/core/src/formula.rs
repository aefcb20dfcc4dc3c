//! Closed-form supercharacter values for pattern groups and the irreducibility tests.

use crate::error::{Error, Result};
use crate::gf::{dot, span_rank, CharValue, FieldElem, FqMatrix, GaloisField};
use crate::pattern::PatternGroup;

/// The matrix M and vectors a, b attached to a pair (φ, η).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeshData {
    pub m: FqMatrix,
    pub a: Vec<FieldElem>,
    pub b: Vec<FieldElem>,
}

/// Assembles q^exp·θ(t) and zero-checks the mesh outcome.
pub(crate) fn meshed_value(f: &GaloisField, corank: usize, rank: usize, t: FieldElem) -> Result<CharValue> {
    if rank > corank {
        return Err(Error::InternalInvariantViolation(format!(
            "meshed pair with rank {rank} above corank {corank}"
        )));
    }
    Ok(CharValue::Unit { q_exp: (corank - rank) as u32, zeta_exp: f.trace(t) })
}

/// Σ φ_α η_α.
pub fn pairing(f: &GaloisField, phi: &[FieldElem], eta: &[FieldElem]) -> FieldElem {
    dot(f, phi, eta)
}

pub fn mesh_data(g: &PatternGroup, phi: &[FieldElem], eta: &[FieldElem]) -> MeshData {
    let f = g.field();
    let d = g.dim();
    let mut m = FqMatrix::zeros(d, d);
    for &[ij, jk, kl, il] in g.set().chains4_idx() {
        m.set(ij, kl, f.mul(phi[jk], eta[il]));
    }
    let mut a = vec![FieldElem::ZERO; d];
    let mut b = vec![FieldElem::ZERO; d];
    for &[ij, jk, ik] in g.set().chains3_idx() {
        a[ij] = f.mul_add(a[ij], phi[jk], eta[ik]);
        b[jk] = f.mul_add(b[jk], phi[ij], eta[ik]);
    }
    MeshData { m, a, b }
}

/// Solves M x = −a with b ⊥ Null(M); returns the particular solution b0 on success.
pub fn meshes(g: &PatternGroup, phi: &[FieldElem], eta: &[FieldElem]) -> Option<Vec<FieldElem>> {
    let data = mesh_data(g, phi, eta);
    mesh_witness(g.field(), &data)
}

pub(crate) fn mesh_witness(f: &GaloisField, data: &MeshData) -> Option<Vec<FieldElem>> {
    mesh_outcome(f, data).map(|(b0, _)| b0)
}

/// b0 and rank(M) when φ meshes with η.
pub(crate) fn mesh_outcome(f: &GaloisField, data: &MeshData) -> Option<(Vec<FieldElem>, usize)> {
    if data.m.is_zero() {
        let flat = data.a.iter().chain(&data.b).all(|x| x.is_zero());
        return flat.then(|| (vec![FieldElem::ZERO; data.m.cols()], 0));
    }
    let rhs: Vec<FieldElem> = data.a.iter().map(|&x| f.neg(x)).collect();
    let analysis = data.m.analyze(f, &rhs);
    let b0 = analysis.solution?;
    let perp = analysis.nullspace.iter().all(|v| dot(f, v, &data.b).is_zero());
    perp.then_some((b0, analysis.rank))
}

/// χ^η(x_φ).
pub fn value(g: &PatternGroup, eta: &[FieldElem], phi: &[FieldElem]) -> Result<CharValue> {
    value_with_corank(g, eta, phi, g.corank(eta)?)
}

/// As [`value`], with corank(η) supplied by the caller.
pub fn value_with_corank(
    g: &PatternGroup,
    eta: &[FieldElem],
    phi: &[FieldElem],
    corank: usize,
) -> Result<CharValue> {
    let f = g.field();
    let data = mesh_data(g, phi, eta);
    let Some((b0, rank)) = mesh_outcome(f, &data) else {
        return Ok(CharValue::Zero);
    };
    let t = f.add(dot(f, &b0, &data.b), pairing(f, phi, eta));
    meshed_value(f, corank, rank, t)
}

/// χ^η(1) = q^corank(η).
pub fn degree(g: &PatternGroup, eta: &[FieldElem]) -> Result<u128> {
    Ok((g.field().q() as u128).pow(g.corank(eta)? as u32))
}

/// Closed form on the Heisenberg shape.
pub fn value_heisenberg(g: &PatternGroup, eta: &[FieldElem], phi: &[FieldElem]) -> Result<CharValue> {
    let set = g.set();
    if !set.is_heisenberg() {
        return Err(Error::ShapeMismatch("expected the Heisenberg closed set".into()));
    }
    let f = g.field();
    let n = set.n();
    let corner = set.index_of(1, n).expect("corner pair");
    if eta[corner].is_zero() {
        return Ok(CharValue::Unit { q_exp: 0, zeta_exp: f.trace(pairing(f, phi, eta)) });
    }
    let central = phi.iter().enumerate().all(|(k, x)| k == corner || x.is_zero());
    if !central {
        return Ok(CharValue::Zero);
    }
    let t = f.mul(phi[corner], eta[corner]);
    Ok(CharValue::Unit { q_exp: (n - 2) as u32, zeta_exp: f.trace(t) })
}

/// Closed form on the full upper-triangular set for monomial φ and η.
pub fn value_un(g: &PatternGroup, eta: &[FieldElem], phi: &[FieldElem]) -> Result<CharValue> {
    let set = g.set();
    if !set.is_full() {
        return Err(Error::ShapeMismatch("expected all pairs i < j".into()));
    }
    if !g.is_monomial(eta) || !g.is_monomial(phi) {
        return Err(Error::NonMonomialRepresentative);
    }
    let f = g.field();
    let sphi = set.support(phi);
    let seta = set.support(eta);
    for &(pi, pj) in &sphi {
        for &(ei, ej) in &seta {
            // sharing a row, φ must not sit left of η; sharing a column, not below it
            if (pi == ei && pj < ej) || (pj == ej && ei < pi) {
                return Ok(CharValue::Zero);
            }
        }
    }
    let mut exp: i64 = 0;
    for &(i, l) in &seta {
        exp += (l - i - 1) as i64;
        exp -= sphi.iter().filter(|&&(j, k)| i < j && k < l).count() as i64;
    }
    if exp < 0 {
        return Err(Error::InternalInvariantViolation(format!("negative exponent {exp}")));
    }
    Ok(CharValue::Unit { q_exp: exp as u32, zeta_exp: f.trace(pairing(f, phi, eta)) })
}

/// Closed form when J has no 4-chains.
pub fn value_no4chain(g: &PatternGroup, eta: &[FieldElem], phi: &[FieldElem]) -> Result<CharValue> {
    let set = g.set();
    if set.has_4chain() {
        return Err(Error::ShapeMismatch("closed set has a 4-chain".into()));
    }
    let f = g.field();
    let data = mesh_data(g, phi, eta);
    if data.a.iter().chain(&data.b).any(|x| !x.is_zero()) {
        return Ok(CharValue::Zero);
    }
    let n = set.n();
    let mut exp = 0;
    for j in 1..=n {
        let rows: Vec<usize> = (1..j).filter(|&i| set.contains(i, j)).collect();
        let cols: Vec<usize> = (j + 1..=n).filter(|&k| set.contains(j, k)).collect();
        if rows.is_empty() || cols.is_empty() {
            continue;
        }
        let w = FqMatrix::from_rows(
            rows.iter()
                .map(|&i| cols.iter().map(|&k| eta[set.index_of(i, k).expect("closed")]).collect())
                .collect(),
        );
        exp += w.rank(f);
    }
    Ok(CharValue::Unit { q_exp: exp as u32, zeta_exp: f.trace(pairing(f, phi, eta)) })
}

/// Bases of ann_R(η) and ann_L(η).
pub fn ann_spaces(g: &PatternGroup, eta: &[FieldElem]) -> (Vec<Vec<FieldElem>>, Vec<Vec<FieldElem>>) {
    let f = g.field();
    (g.matrix_eta_right(eta).nullspace_basis(f), g.matrix_eta_left(eta).nullspace_basis(f))
}

/// Whether ann_R(η) + ann_L(η) is everything.
pub fn is_irreducible(g: &PatternGroup, eta: &[FieldElem]) -> bool {
    let (r, l) = ann_spaces(g, eta);
    let stacked: Vec<Vec<FieldElem>> = r.into_iter().chain(l).collect();
    span_rank(g.field(), &stacked, g.dim()) == g.dim()
}

/// No 4-chain (i,j,k,l) with (i,j),(k,l) in the support; then the superclass of
/// x_φ is a conjugacy class.
pub fn superclass_is_class_sufficient(g: &PatternGroup, phi: &[FieldElem]) -> bool {
    !g.set().chains4_idx().iter().any(|&[ij, _, kl, _]| !phi[ij].is_zero() && !phi[kl].is_zero())
}

/// No 4-chain (i,j,k,l) with (i,k),(j,l) in the support; then χ^η is irreducible.
pub fn irreducible_sufficient(g: &PatternGroup, eta: &[FieldElem]) -> bool {
    let set = g.set();
    !set.chains4().iter().any(|&(i, j, k, l)| {
        let ik = set.index_of(i, k).expect("closed");
        let jl = set.index_of(j, l).expect("closed");
        !eta[ik].is_zero() && !eta[jl].is_zero()
    })
}

/// Exact irreducibility test for the full upper-triangular set with monomial η.
pub fn irreducible_full(g: &PatternGroup, eta: &[FieldElem]) -> Result<bool> {
    if !g.set().is_full() {
        return Err(Error::ShapeMismatch("expected all pairs i < j".into()));
    }
    if !g.is_monomial(eta) {
        return Err(Error::NonMonomialRepresentative);
    }
    Ok(irreducible_sufficient(g, eta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::DEFAULT_CAP;
    use crate::poset::ClosedSet;

    fn group(set: ClosedSet, q: u32) -> PatternGroup {
        PatternGroup::new(set, GaloisField::new(q, None).unwrap())
    }

    fn func(g: &PatternGroup, entries: &[((usize, usize), i64)]) -> Vec<FieldElem> {
        let mut v = g.zero();
        for &((i, j), x) in entries {
            v[g.set().index_of(i, j).unwrap()] = g.field().from_int(x);
        }
        v
    }

    fn unit(q_exp: u32, zeta_exp: u32) -> CharValue {
        CharValue::Unit { q_exp, zeta_exp }
    }

    #[test]
    fn mesh_data_examples() {
        let g = group(ClosedSet::full(4), 3);
        let eta = func(&g, &[((1, 4), 1), ((2, 3), 2)]);
        let d = mesh_data(&g, &g.zero(), &eta);
        assert!(d.m.is_zero() && d.a.iter().all(|x| x.is_zero()) && d.b.iter().all(|x| x.is_zero()));

        let h = group(ClosedSet::heisenberg(4).unwrap(), 3);
        let phi = func(&h, &[((1, 2), 1), ((1, 3), 2), ((2, 4), 2), ((3, 4), 1), ((1, 4), 1)]);
        let eta = func(&h, &[((1, 4), 2), ((1, 2), 1)]);
        let d = mesh_data(&h, &phi, &eta);
        assert!(d.m.is_zero());
        let f = h.field();
        let e = eta[h.set().index_of(1, 4).unwrap()];
        for (k, &(i, j)) in h.set().pairs().iter().enumerate() {
            let expect_a = if i == 1 && j < 4 { f.mul(e, phi[h.set().index_of(j, 4).unwrap()]) } else { FieldElem::ZERO };
            let expect_b = if j == 4 && i > 1 { f.mul(e, phi[h.set().index_of(1, i).unwrap()]) } else { FieldElem::ZERO };
            assert_eq!(d.a[k], expect_a);
            assert_eq!(d.b[k], expect_b);
        }
    }

    #[test]
    fn mesh_examples() {
        let h = group(ClosedSet::heisenberg(4).unwrap(), 2);
        let eta = func(&h, &[((1, 4), 1)]);
        assert_eq!(meshes(&h, &h.zero(), &eta), Some(h.zero()));
        assert_eq!(meshes(&h, &func(&h, &[((1, 2), 1)]), &eta), None);
        let eta = func(&h, &[((1, 2), 1), ((3, 4), 1)]);
        for code in 0..h.order() as u64 {
            assert!(meshes(&h, &h.unpack(code), &eta).is_some());
        }
    }

    #[test]
    fn value_examples() {
        let g = group(ClosedSet::full(4), 2);
        for code in 0..g.order() as u64 {
            assert_eq!(value(&g, &g.zero(), &g.unpack(code)).unwrap(), CharValue::ONE);
        }
        let h = group(ClosedSet::heisenberg(3).unwrap(), 3);
        let eta = func(&h, &[((1, 3), 1)]);
        assert_eq!(value(&h, &eta, &h.zero()).unwrap(), unit(1, 0));
        assert_eq!(value(&h, &eta, &func(&h, &[((1, 3), 1)])).unwrap(), unit(1, 1));
    }

    #[test]
    fn degree_examples() {
        let h = group(ClosedSet::heisenberg(4).unwrap(), 2);
        assert_eq!(degree(&h, &h.zero()).unwrap(), 1);
        assert_eq!(degree(&h, &func(&h, &[((1, 4), 1)])).unwrap(), 4);
    }

    #[test]
    fn closed_form_examples() {
        let g = group(ClosedSet::full(4), 2);
        let eta = func(&g, &[((1, 4), 1), ((2, 3), 1)]);
        assert_eq!(value_un(&g, &eta, &g.zero()).unwrap(), unit(2, 0));
        assert_eq!(value_un(&g, &eta, &g.zero()).unwrap(), value(&g, &eta, &g.zero()).unwrap());
        let bad = func(&g, &[((1, 4), 1), ((1, 3), 1)]);
        assert_eq!(value_un(&g, &bad, &g.zero()), Err(Error::NonMonomialRepresentative));
        let h = group(ClosedSet::heisenberg(4).unwrap(), 2);
        assert!(matches!(value_un(&h, &h.zero(), &h.zero()), Err(Error::ShapeMismatch(_))));
        assert!(matches!(value_heisenberg(&g, &g.zero(), &g.zero()), Err(Error::ShapeMismatch(_))));
        assert!(matches!(value_no4chain(&g, &g.zero(), &g.zero()), Err(Error::ShapeMismatch(_))));

        let abelian = group(ClosedSet::validate_closed(4, &[(1, 3), (2, 4)]).unwrap(), 3);
        let eta = func(&abelian, &[((1, 3), 1)]);
        let phi = func(&abelian, &[((1, 3), 1), ((2, 4), 2)]);
        assert_eq!(value_no4chain(&abelian, &eta, &phi).unwrap(), unit(0, 1));
    }

    fn example2() -> PatternGroup {
        group(ClosedSet::close_covers(5, &[(1, 2), (2, 3), (2, 4), (4, 5)]).unwrap(), 3)
    }

    #[test]
    fn annihilator_example() {
        let g = example2();
        let f = g.field();
        let eta = func(&g, &[((1, 3), 1), ((1, 4), 1), ((2, 5), 1)]);
        let (r, l) = ann_spaces(&g, &eta);
        assert_eq!(r.len(), g.dim() - 2);
        assert_eq!(l.len(), g.dim() - 2);
        let idx = |i, j| g.set().index_of(i, j).unwrap();
        for v in &r {
            assert!(v[idx(4, 5)].is_zero());
            assert_eq!(v[idx(2, 3)], f.neg(v[idx(2, 4)]));
        }
        for v in &l {
            assert!(v[idx(1, 2)].is_zero() && v[idx(2, 4)].is_zero());
        }
        assert!(ann_spaces(&g, &g.zero()).0.len() == g.dim());
    }

    #[test]
    fn annihilators_kill_products() {
        let g = example2();
        let f = g.field();
        let mut seed = 11u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            FieldElem((seed >> 33) as u32 % 3)
        };
        for _ in 0..10 {
            let eta: Vec<FieldElem> = (0..g.dim()).map(|_| next()).collect();
            let (r, l) = ann_spaces(&g, &eta);
            for _ in 0..100 {
                let phi: Vec<FieldElem> = (0..g.dim()).map(|_| next()).collect();
                // X_φ X_ρ is the bilinear part of multiply
                for rho in &r {
                    let prod = g.act_right(&phi, rho);
                    let xy: Vec<FieldElem> = prod.iter().zip(&phi).map(|(&a, &b)| f.sub(a, b)).collect();
                    assert!(pairing(f, &xy, &eta).is_zero());
                }
                for rho in &l {
                    let prod = g.act_left(rho, &phi);
                    let xy: Vec<FieldElem> = prod.iter().zip(&phi).map(|(&a, &b)| f.sub(a, b)).collect();
                    assert!(pairing(f, &xy, &eta).is_zero());
                }
            }
        }
    }

    #[test]
    fn determinant_criterion() {
        let g = group(ClosedSet::close_covers(6, &[(1, 3), (2, 3), (3, 4), (3, 5), (5, 6)]).unwrap(), 3);
        let eta = func(&g, &[((1, 4), 1), ((1, 5), 1), ((2, 4), 1), ((2, 5), 1), ((3, 6), 1)]);
        assert!(is_irreducible(&g, &eta));
        let eta = func(&g, &[((1, 4), 1), ((1, 5), 1), ((2, 4), 1), ((2, 5), 2), ((3, 6), 1)]);
        assert!(!is_irreducible(&g, &eta));
    }

    #[test]
    fn no_4chain_sets_are_irreducible() {
        let g = group(ClosedSet::heisenberg(4).unwrap(), 2);
        let reps = g.all_coorbit_reps(DEFAULT_CAP).unwrap();
        assert!(reps.iter().all(|eta| is_irreducible(&g, eta)));
    }

    #[test]
    fn sufficient_check_examples() {
        let g = group(ClosedSet::full(4), 2);
        assert!(irreducible_sufficient(&g, &func(&g, &[((1, 3), 1)])));
        let stair = func(&g, &[((1, 4), 1), ((2, 3), 1)]);
        assert!(irreducible_full(&g, &stair).unwrap());
        assert!(!irreducible_full(&g, &func(&g, &[((1, 3), 1), ((2, 4), 1)])).unwrap());
        let e1 = group(ClosedSet::close_covers(5, &[(1, 2), (2, 3), (2, 4), (3, 5), (4, 5)]).unwrap(), 2);
        let phi = func(&e1, &[((1, 2), 1), ((2, 4), 1), ((3, 5), 1)]);
        assert!(!superclass_is_class_sufficient(&e1, &phi));
    }
}
