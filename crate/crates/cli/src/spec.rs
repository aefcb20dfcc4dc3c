//! Spec files: either a closed set (`n` header) or an algebra (`d` header).

use std::path::Path;

use superchar_core::algebra::{
    alg_corank, alg_is_irreducible, algebra_envelope, alg_orbit_partition, alg_value_with_corank, emit_algebra, parse_algebra,
    StructureAlgebra,
};
use superchar_core::formula;
use superchar_core::gf::{CharValue, FieldElem, GaloisField};
use superchar_core::pattern::{OrbitKind, OrbitPartition, PatternGroup};
use superchar_core::poset::{emit_spec, parse_spec};
use superchar_core::{Error, Result};

use crate::error::{CliError, CliResult};

pub enum Spec {
    Pattern(PatternGroup),
    Algebra(StructureAlgebra),
}

impl Spec {
    pub fn parse(text: &str) -> Result<Spec> {
        let first = text
            .lines()
            .enumerate()
            .find_map(|(i, raw)| {
                let body = raw.split('#').next().unwrap_or("");
                body.split_whitespace().next().map(|tok| (i + 1, tok))
            });
        match first {
            Some((_, "n")) => {
                let spec = parse_spec(text)?;
                Ok(Spec::Pattern(PatternGroup::new(spec.set, spec.field)))
            }
            Some((_, "d")) => Ok(Spec::Algebra(parse_algebra(text)?)),
            Some((line, tok)) => Err(Error::Syntax {
                line,
                message: format!("expected an 'n' or 'd' header, found '{tok}'"),
            }),
            None => Err(Error::Syntax { line: 1, message: "empty spec".into() }),
        }
    }

    pub fn load(path: &Path) -> CliResult<Spec> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
        Ok(Spec::parse(&text)?)
    }

    pub fn field(&self) -> &GaloisField {
        match self {
            Spec::Pattern(g) => g.field(),
            Spec::Algebra(a) => a.field(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Spec::Pattern(g) => g.dim(),
            Spec::Algebra(a) => a.dim(),
        }
    }

    /// Canonical text form of the spec.
    pub fn canonical(&self) -> String {
        match self {
            Spec::Pattern(g) => emit_spec(g.set(), g.field()),
            Spec::Algebra(a) => {
                let mut out = emit_algebra(a);
                if let Ok(env) = algebra_envelope(a) {
                    let pairs: Vec<String> = env.pairs().iter().map(|(i, j)| format!("{i},{j}")).collect();
                    out.push_str(&format!("# envelope: {}\n", pairs.join(" ")));
                }
                out
            }
        }
    }

    pub fn parse_functional(&self, text: &str) -> Result<Vec<FieldElem>> {
        match self {
            Spec::Pattern(g) => g.set().parse_functional(g.field(), text),
            Spec::Algebra(a) => a.parse_functional(text),
        }
    }

    pub fn functional_entries(&self, v: &[FieldElem]) -> Vec<(String, String)> {
        match self {
            Spec::Pattern(g) => g.set().functional_entries(g.field(), v),
            Spec::Algebra(a) => a.functional_entries(v),
        }
    }

    pub fn format_functional(&self, v: &[FieldElem]) -> String {
        match self {
            Spec::Pattern(g) => g.set().format_functional(g.field(), v),
            Spec::Algebra(a) => a.format_functional(v),
        }
    }

    /// Index of a coordinate vector in the partitions' `orbit_of`.
    pub fn pack(&self, v: &[FieldElem]) -> u64 {
        match self {
            Spec::Pattern(g) => g.pack(v),
            Spec::Algebra(a) => {
                let q = a.field().q() as u64;
                v.iter().fold(0, |acc, x| acc * q + x.packed() as u64)
            }
        }
    }

    /// Superclass and co-orbit partitions.
    pub fn partitions(&self, cap: u64) -> Result<(OrbitPartition, OrbitPartition)> {
        match self {
            Spec::Pattern(g) => g.both_partitions(cap),
            Spec::Algebra(a) => {
                let (classes, chars) = rayon::join(
                    || alg_orbit_partition(a, OrbitKind::Class, cap),
                    || alg_orbit_partition(a, OrbitKind::Character, cap),
                );
                Ok((classes?, chars?))
            }
        }
    }

    pub fn corank(&self, eta: &[FieldElem], cap: u64) -> Result<usize> {
        match self {
            Spec::Pattern(g) => g.corank(eta),
            Spec::Algebra(a) => alg_corank(a, eta, cap),
        }
    }

    pub fn value_with_corank(&self, eta: &[FieldElem], phi: &[FieldElem], corank: usize) -> Result<CharValue> {
        match self {
            Spec::Pattern(g) => formula::value_with_corank(g, eta, phi, corank),
            Spec::Algebra(a) => alg_value_with_corank(a, eta, phi, corank),
        }
    }

    pub fn is_irreducible(&self, eta: &[FieldElem]) -> bool {
        match self {
            Spec::Pattern(g) => formula::is_irreducible(g, eta),
            Spec::Algebra(a) => alg_is_irreducible(a, eta),
        }
    }

    /// Size of the two-sided orbit (or co-orbit) of `v`.
    pub fn orbit_size(&self, v: &[FieldElem], kind: OrbitKind, cap: u64) -> Result<u64> {
        match self {
            Spec::Pattern(g) => Ok(match kind {
                OrbitKind::Class => g.orbit(v, cap)?.size,
                OrbitKind::Character => g.coorbit(v, cap)?.size,
            }),
            Spec::Algebra(a) => {
                let part = alg_orbit_partition(a, kind, cap)?;
                Ok(part.sizes[part.orbit_of[self.pack(v) as usize] as usize])
            }
        }
    }
}
