//! Pattern groups U_J: multiplication, the one- and two-sided actions on n_J and its
//! dual, action matrices, and orbit enumeration.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::gf::{FieldElem, FqMatrix, GaloisField};
use crate::poset::ClosedSet;

/// Dense values indexed by the canonical order of J.
pub type Functional = Vec<FieldElem>;

/// Default bound on q^|J| for orbit materialization.
pub const DEFAULT_CAP: u64 = 1 << 20;

/// Which side(s) a generator acts from.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Side {
    /// Left multiplication on n_J.
    Left,
    /// Right multiplication on n_J.
    Right,
    /// Left action on the dual n_J^*.
    CoLeft,
    /// Right action on the dual n_J^*.
    CoRight,
}

/// Whether an orbit lives in n_J (superclasses) or in n_J^* (supercharacters).
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum OrbitKind {
    Class,
    Character,
}

impl OrbitKind {
    fn sides(self) -> [Side; 2] {
        match self {
            OrbitKind::Class => [Side::Left, Side::Right],
            OrbitKind::Character => [Side::CoLeft, Side::CoRight],
        }
    }
}

/// A materialized orbit: representative, size and packed members (sorted).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub rep: Functional,
    pub size: u64,
    pub elements: Vec<u64>,
}

/// A partition of all functionals into orbits.
#[derive(Clone, Debug)]
pub struct OrbitPartition {
    pub reps: Vec<Functional>,
    pub sizes: Vec<u64>,
    /// Orbit number of every packed functional.
    pub orbit_of: Vec<u32>,
}

/// Single-root generator x_α(t): `dst += t·src` over a list of (src, dst) index pairs.
type Moves = Vec<(usize, usize)>;

/// U_J over a fixed field.
#[derive(Clone, Debug)]
pub struct PatternGroup {
    set: ClosedSet,
    field: GaloisField,
    moves: [Vec<Moves>; 4],
}

fn side_slot(side: Side) -> usize {
    match side {
        Side::Left => 0,
        Side::Right => 1,
        Side::CoLeft => 2,
        Side::CoRight => 3,
    }
}

impl PatternGroup {
    pub fn new(set: ClosedSet, field: GaloisField) -> Self {
        let d = set.len();
        let mut moves: [Vec<Moves>; 4] = std::array::from_fn(|_| vec![Vec::new(); d]);
        for &[ij, jk, ik] in set.chains3_idx() {
            // x_(i,j) on the left: row i gains t·row j
            moves[0][ij].push((jk, ik));
            // x_(j,k) on the right: column k gains t·column j
            moves[1][jk].push((ij, ik));
            // dual, x_(i,j) on the left: η_jk gains t·η_ik
            moves[2][ij].push((ik, jk));
            // dual, x_(j,k) on the right: η_ij gains t·η_ik
            moves[3][jk].push((ik, ij));
        }
        PatternGroup { set, field, moves }
    }

    pub fn set(&self) -> &ClosedSet {
        &self.set
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    /// |J|.
    pub fn dim(&self) -> usize {
        self.set.len()
    }

    pub fn zero(&self) -> Functional {
        vec![FieldElem::ZERO; self.dim()]
    }

    /// q^|J|, the order of the group.
    pub fn order(&self) -> u128 {
        (self.field.q() as u128).saturating_pow(self.dim() as u32)
    }

    pub fn check_cap(&self, cap: u64) -> Result<()> {
        let required = self.order();
        if required > cap as u128 {
            Err(Error::SizeCapExceeded { required, cap })
        } else {
            Ok(())
        }
    }

    /// Mixed-radix packing with index 0 most significant, so packed order is
    /// lexicographic order of value vectors.
    pub fn pack(&self, v: &[FieldElem]) -> u64 {
        let q = self.field.q() as u64;
        v.iter().fold(0, |acc, x| acc * q + x.packed() as u64)
    }

    pub fn unpack(&self, mut code: u64) -> Functional {
        let q = self.field.q() as u64;
        let mut v = self.zero();
        for slot in v.iter_mut().rev() {
            *slot = FieldElem((code % q) as u32);
            code /= q;
        }
        v
    }

    /// The bilinear part X·Y restricted to J.
    fn product(&self, x: &[FieldElem], y: &[FieldElem]) -> Functional {
        let f = &self.field;
        let mut out = self.zero();
        for &[ij, jk, ik] in self.set.chains3_idx() {
            out[ik] = f.mul_add(out[ik], x[ij], y[jk]);
        }
        out
    }

    fn add(&self, x: &[FieldElem], y: &[FieldElem]) -> Functional {
        x.iter().zip(y).map(|(&a, &b)| self.field.add(a, b)).collect()
    }

    /// (1 + X)(1 + Y) = 1 + X + Y + XY.
    pub fn multiply(&self, x: &[FieldElem], y: &[FieldElem]) -> Functional {
        self.add(&self.add(x, y), &self.product(x, y))
    }

    /// Inverse via the terminating series 1 − X + X² − ….
    pub fn inverse(&self, x: &[FieldElem]) -> Functional {
        let f = &self.field;
        let neg: Functional = x.iter().map(|&a| f.neg(a)).collect();
        let mut term = neg.clone();
        let mut total = self.zero();
        for _ in 0..self.set.n() {
            if term.iter().all(|a| a.is_zero()) {
                break;
            }
            total = self.add(&total, &term);
            term = self.product(&term, &neg);
        }
        total
    }

    /// x_ρ X_φ.
    pub fn act_left(&self, rho: &[FieldElem], phi: &[FieldElem]) -> Functional {
        self.add(phi, &self.product(rho, phi))
    }

    /// X_φ x_ρ.
    pub fn act_right(&self, phi: &[FieldElem], rho: &[FieldElem]) -> Functional {
        self.add(phi, &self.product(phi, rho))
    }

    /// x_τ X_φ x_ρ.
    pub fn act_two_sided(&self, tau: &[FieldElem], phi: &[FieldElem], rho: &[FieldElem]) -> Functional {
        let f = &self.field;
        let mut out = self.add(&self.add(phi, &self.product(tau, phi)), &self.product(phi, rho));
        for &[ij, jk, kl, il] in self.set.chains4_idx() {
            out[il] = f.mul_add(out[il], f.mul(tau[ij], phi[jk]), rho[kl]);
        }
        out
    }

    /// The functional η′ with λ_η′ = x_τ^{-1} λ_η x_ρ^{-1}.
    pub fn coact(&self, tau: &[FieldElem], eta: &[FieldElem], rho: &[FieldElem]) -> Functional {
        let f = &self.field;
        let mut out = eta.to_vec();
        for &[ij, jk, ik] in self.set.chains3_idx() {
            // (i,j,k) read as τ_ij η_ik → slot jk, and as η_ik ρ_jk → slot ij
            out[jk] = f.mul_add(out[jk], tau[ij], eta[ik]);
            out[ij] = f.mul_add(out[ij], eta[ik], rho[jk]);
        }
        for &[ij, jk, kl, il] in self.set.chains4_idx() {
            out[jk] = f.mul_add(out[jk], f.mul(tau[ij], eta[il]), rho[kl]);
        }
        out
    }

    fn matrix_from(&self, entries: impl Iterator<Item = (usize, usize, FieldElem)>) -> FqMatrix {
        let d = self.dim();
        let mut m = FqMatrix::zeros(d, d);
        for (r, c, v) in entries {
            m.set(r, c, v);
        }
        m
    }

    /// M_φ^L: ρ ↦ the change in φ under left multiplication by x_ρ.
    pub fn matrix_phi_left(&self, phi: &[FieldElem]) -> FqMatrix {
        self.matrix_from(self.set.chains3_idx().iter().map(|&[ik, kl, il]| (il, ik, phi[kl])))
    }

    /// M_φ^R: ρ ↦ the change in φ under right multiplication by x_ρ.
    pub fn matrix_phi_right(&self, phi: &[FieldElem]) -> FqMatrix {
        self.matrix_from(self.set.chains3_idx().iter().map(|&[ij, jl, il]| (il, jl, phi[ij])))
    }

    /// M_L^η: τ ↦ the change in η under the dual left action.
    pub fn matrix_eta_left(&self, eta: &[FieldElem]) -> FqMatrix {
        self.matrix_from(self.set.chains3_idx().iter().map(|&[ij, jk, ik]| (jk, ij, eta[ik])))
    }

    /// M_R^η: ρ ↦ the change in η under the dual right action.
    pub fn matrix_eta_right(&self, eta: &[FieldElem]) -> FqMatrix {
        self.matrix_from(self.set.chains3_idx().iter().map(|&[jk, kl, jl]| (jk, kl, eta[jl])))
    }

    /// log_q of the one-sided co-orbit size of η.
    pub fn corank(&self, eta: &[FieldElem]) -> Result<usize> {
        let left = self.matrix_eta_left(eta).rank(&self.field);
        let right = self.matrix_eta_right(eta).rank(&self.field);
        if left != right {
            return Err(Error::InternalInvariantViolation(format!(
                "rank(M_L) = {left} but rank(M_R) = {right}"
            )));
        }
        Ok(left)
    }

    /// Applies every single-root generator of the given sides to `v`.
    fn neighbours<'a>(&'a self, v: &'a [FieldElem], sides: &'a [Side]) -> impl Iterator<Item = Functional> + 'a {
        let f = &self.field;
        sides.iter().flat_map(move |&s| {
            self.moves[side_slot(s)].iter().filter(|m| !m.is_empty()).flat_map(move |moves| {
                f.units().filter_map(move |t| {
                    let mut w = v.to_vec();
                    let mut changed = false;
                    for &(src, dst) in moves {
                        if !v[src].is_zero() {
                            w[dst] = f.mul_add(w[dst], t, v[src]);
                            changed = true;
                        }
                    }
                    changed.then_some(w)
                })
            })
        })
    }

    fn bfs(&self, start: &[FieldElem], sides: &[Side]) -> Vec<u64> {
        let mut seen = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(self.pack(start));
        queue.push_back(start.to_vec());
        while let Some(v) = queue.pop_front() {
            for w in self.neighbours(&v, sides) {
                if seen.insert(self.pack(&w)) {
                    queue.push_back(w);
                }
            }
        }
        let mut out: Vec<u64> = seen.into_iter().collect();
        out.sort_unstable();
        out
    }

    fn materialize(&self, start: &[FieldElem], sides: &[Side], cap: u64) -> Result<Orbit> {
        self.check_cap(cap)?;
        let elements = self.bfs(start, sides);
        let rep = self.choose_rep(&elements);
        Ok(Orbit { rep, size: elements.len() as u64, elements })
    }

    /// The two-sided orbit U X_φ U.
    pub fn orbit(&self, phi: &[FieldElem], cap: u64) -> Result<Orbit> {
        self.materialize(phi, &OrbitKind::Class.sides(), cap)
    }

    /// The two-sided co-orbit U λ_η U.
    pub fn coorbit(&self, eta: &[FieldElem], cap: u64) -> Result<Orbit> {
        self.materialize(eta, &OrbitKind::Character.sides(), cap)
    }

    /// An orbit under a single side.
    pub fn one_sided_orbit(&self, v: &[FieldElem], side: Side, cap: u64) -> Result<Orbit> {
        self.materialize(v, &[side], cap)
    }

    /// Lexicographic minimum, except that for the full upper-triangular set the
    /// minimum monomial member is preferred.
    fn choose_rep(&self, sorted: &[u64]) -> Functional {
        if self.set.is_full() {
            if let Some(v) = sorted.iter().map(|&c| self.unpack(c)).find(|v| self.is_monomial(v)) {
                return v;
            }
        }
        self.unpack(sorted[0])
    }

    /// At most one nonzero entry in each row and each column.
    pub fn is_monomial(&self, v: &[FieldElem]) -> bool {
        let n = self.set.n();
        let mut rows = vec![false; n + 1];
        let mut cols = vec![false; n + 1];
        for &(i, j) in &self.set.support(v) {
            if rows[i] || cols[j] {
                return false;
            }
            rows[i] = true;
            cols[j] = true;
        }
        true
    }

    /// Sweeps all functionals in packed order, so each orbit is discovered from
    /// its lexicographic minimum.
    pub fn orbit_partition(&self, kind: OrbitKind, cap: u64) -> Result<OrbitPartition> {
        self.check_cap(cap)?;
        let total = self.order() as u64;
        let mut orbit_of = vec![u32::MAX; total as usize];
        let mut reps = Vec::new();
        let mut sizes = Vec::new();
        let sides = kind.sides();
        for seed in 0..total {
            if orbit_of[seed as usize] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            let members = self.bfs(&self.unpack(seed), &sides);
            for &m in &members {
                orbit_of[m as usize] = id;
            }
            reps.push(self.choose_rep(&members));
            sizes.push(members.len() as u64);
        }
        Ok(OrbitPartition { reps, sizes, orbit_of })
    }

    /// Canonical superclass representatives.
    pub fn all_orbit_reps(&self, cap: u64) -> Result<Vec<Functional>> {
        Ok(self.orbit_partition(OrbitKind::Class, cap)?.reps)
    }

    /// Canonical supercharacter labels.
    pub fn all_coorbit_reps(&self, cap: u64) -> Result<Vec<Functional>> {
        Ok(self.orbit_partition(OrbitKind::Character, cap)?.reps)
    }

    /// Both partitions, computed concurrently.
    pub fn both_partitions(&self, cap: u64) -> Result<(OrbitPartition, OrbitPartition)> {
        let (a, b) = rayon::join(
            || self.orbit_partition(OrbitKind::Class, cap),
            || self.orbit_partition(OrbitKind::Character, cap),
        );
        Ok((a?, b?))
    }
}
