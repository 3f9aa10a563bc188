//! Descriptor files: JSON for sets and monoids, the line format for algebras
//! and algebra homomorphisms.

use std::path::{Path, PathBuf};

use cotangent_core::io::{self, MonoidInput, SetInput};
use cotangent_core::monoid::FinCommMonoid;
use cotangent_core::ring::{AlgebraHom, FPAlgebra};

use crate::CliError;

pub enum RingInput {
    Algebra(FPAlgebra),
    Hom(AlgebraHom),
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn at(path: &Path) -> impl Fn(cotangent_core::Error) -> CliError + '_ {
    move |e| CliError::Input(path.to_path_buf(), e)
}

pub fn set(path: &Path) -> Result<SetInput, CliError> {
    let v = io::parse_json(&read(path)?).map_err(at(path))?;
    io::set_input_from_json(&v).map_err(at(path))
}

/// `--bound` replaces the bound of a `{"nat": ...}` descriptor, which may
/// then omit it.
pub fn monoid(path: &Path, bound: Option<usize>) -> Result<MonoidInput, CliError> {
    let v = io::parse_json(&read(path)?).map_err(at(path))?;
    if let (Some(b), Some(_)) = (bound, v.get("nat")) {
        return nat(b).map(MonoidInput::Monoid);
    }
    io::monoid_input_from_json(&v).map_err(at(path))
}

pub fn nat(bound: usize) -> Result<FinCommMonoid, CliError> {
    if bound == 0 || bound > io::MAX_ELEMENTS {
        return Err(CliError::Usage(format!(
            "--bound must be between 1 and {}",
            io::MAX_ELEMENTS
        )));
    }
    Ok(FinCommMonoid::nat(bound))
}

/// A homomorphism file is recognized by its `[source]` section.
pub fn ring(path: &Path) -> Result<RingInput, CliError> {
    let text = read(path)?;
    if text.lines().any(|l| l.split('#').next().unwrap_or("").trim() == "[source]") {
        AlgebraHom::parse(&text).map(RingInput::Hom).map_err(at(path))
    } else {
        FPAlgebra::parse(&text).map(RingInput::Algebra).map_err(at(path))
    }
}

pub fn one(files: &[PathBuf]) -> Result<&Path, CliError> {
    match files {
        [f] => Ok(f),
        _ => Err(CliError::Usage(format!("expected one descriptor file, got {}", files.len()))),
    }
}

pub fn two(files: &[PathBuf]) -> Result<(&Path, &Path), CliError> {
    match files {
        [a, b] => Ok((a, b)),
        _ => Err(CliError::Usage(format!("expected two descriptor files, got {}", files.len()))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data(name: &str) -> PathBuf {
        [env!("CARGO_MANIFEST_DIR"), "data", name].iter().collect()
    }

    #[test]
    fn nat_bound_range() {
        assert!(nat(0).is_err());
        assert_eq!(nat(1).unwrap().nat_bound(), Some(1));
        assert_eq!(nat(io::MAX_ELEMENTS).unwrap().nat_bound(), Some(io::MAX_ELEMENTS));
        assert!(nat(io::MAX_ELEMENTS + 1).is_err());
    }

    #[test]
    fn bound_overrides_only_nat_descriptors() {
        match monoid(&data("nat.json"), Some(3)).unwrap() {
            MonoidInput::Monoid(m) => assert_eq!(m.nat_bound(), Some(3)),
            MonoidInput::Hom(_) => panic!("expected a monoid"),
        }
        match monoid(&data("z2.json"), Some(3)).unwrap() {
            MonoidInput::Monoid(m) => assert_eq!((m.nat_bound(), m.len()), (None, 2)),
            MonoidInput::Hom(_) => panic!("expected a monoid"),
        }
    }

    #[test]
    fn ring_files_are_told_apart() {
        assert!(matches!(ring(&data("cusp.alg")).unwrap(), RingInput::Algebra(_)));
        assert!(matches!(ring(&data("loc.hom")).unwrap(), RingInput::Hom(_)));
        assert!(matches!(ring(&data("bad.alg")), Err(CliError::Input(..))));
        assert!(matches!(ring(&data("missing.alg")), Err(CliError::Usage(_))));
    }

    #[test]
    fn arity() {
        let files = vec![data("X.json"), data("point.json")];
        assert!(one(&files).is_err());
        assert!(one(&files[..1]).is_ok());
        assert!(two(&files).is_ok());
        assert!(two(&[]).is_err());
    }
}
