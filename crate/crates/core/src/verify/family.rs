//! Random matrices sharing one eigenbasis.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{MatError, Result};
use crate::matcalc::{SquareMatrix, C64};

const MAX_CONDITION: f64 = 50.0;
const REDRAWS: usize = 64;

/// Rectangle of eigenvalues: Re ∈ re, Im ∈ im.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumBox {
    pub re: (f64, f64),
    pub im: (f64, f64),
}

impl SpectrumBox {
    pub fn real(lo: f64, hi: f64) -> Self {
        Self { re: (lo, hi), im: (0.0, 0.0) }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CommutingFamily {
    pub order: usize,
    pub basis: SquareMatrix,
    #[serde(skip)]
    basis_inv: Option<SquareMatrix>,
    pub members: Vec<(String, Vec<C64>)>,
    pub seed: u64,
}

/// Per-(seed, stream) generator so that draws are independent of scheduling.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// A random well-conditioned basis P = I + ½G (condition ≤ 50, redrawn otherwise).
pub fn random_basis(order: usize, rng: &mut impl Rng) -> Result<(SquareMatrix, SquareMatrix)> {
    if order == 1 {
        return Ok((SquareMatrix::identity(1), SquareMatrix::identity(1)));
    }
    for _ in 0..REDRAWS {
        let mut p = SquareMatrix::identity(order);
        for i in 0..order {
            for j in 0..order {
                let g: f64 = rng.random_range(-1.0..1.0);
                p.set(i, j, p.get(i, j) + C64::new(0.5 * g, 0.0));
            }
        }
        let Ok(inv) = p.inverse() else { continue };
        let cond = p.frobenius_norm() * inv.frobenius_norm() / order as f64;
        if cond <= MAX_CONDITION {
            return Ok((p, inv));
        }
    }
    Err(MatError::Generation(format!("no basis with condition ≤ {MAX_CONDITION} after {REDRAWS} draws")))
}

pub fn sample_box(b: &SpectrumBox, rng: &mut impl Rng) -> C64 {
    C64::new(uniform(rng, b.re), uniform(rng, b.im))
}

pub(crate) fn uniform(rng: &mut impl Rng, (lo, hi): (f64, f64)) -> f64 {
    if hi > lo { rng.random_range(lo..hi) } else { lo }
}

impl CommutingFamily {
    pub fn with_basis(order: usize, basis: SquareMatrix, basis_inv: SquareMatrix, seed: u64) -> Self {
        Self { order, basis, basis_inv: Some(basis_inv), members: Vec::new(), seed }
    }

    pub fn push(&mut self, name: impl Into<String>, eigenvalues: Vec<C64>) {
        assert_eq!(eigenvalues.len(), self.order);
        self.members.push((name.into(), eigenvalues));
    }

    fn inverse(&self) -> SquareMatrix {
        self.basis_inv.clone().unwrap_or_else(|| self.basis.inverse().expect("basis is invertible"))
    }

    /// P·diag(λ)·P⁻¹ for arbitrary eigenvalues in this basis.
    pub fn conjugate(&self, eigenvalues: &[C64]) -> SquareMatrix {
        &(&self.basis * &SquareMatrix::diag(eigenvalues)) * &self.inverse()
    }

    pub fn eigenvalues(&self, name: &str) -> Option<&[C64]> {
        self.members.iter().find(|(n, _)| n == name).map(|(_, e)| e.as_slice())
    }

    pub fn matrix(&self, name: &str) -> Option<SquareMatrix> {
        self.eigenvalues(name).map(|e| self.conjugate(e))
    }
}

/// `count` pairwise-commuting members M0, M1, … with eigenvalues in `spectrum`.
pub fn random_commuting_family(order: usize, count: usize, spectrum: SpectrumBox, seed: u64) -> Result<CommutingFamily> {
    if order == 0 {
        return Err(MatError::Generation("matrix order must be at least 1".into()));
    }
    let mut rng = stream_rng(seed, 0);
    let (p, inv) = random_basis(order, &mut rng)?;
    let mut fam = CommutingFamily::with_basis(order, p, inv, seed);
    for k in 0..count {
        let ev = (0..order).map(|_| sample_box(&spectrum, &mut rng)).collect();
        fam.push(format!("M{k}"), ev);
    }
    Ok(fam)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcalc::{commutator_norm, is_positive_stable};

    #[test]
    fn scalar_family_has_unit_basis() {
        let f = random_commuting_family(1, 2, SpectrumBox::real(0.5, 2.0), 3).unwrap();
        assert_eq!(f.basis, SquareMatrix::identity(1));
    }

    #[test]
    fn members_commute_and_are_stable() {
        let f = random_commuting_family(2, 3, SpectrumBox { re: (0.5, 2.0), im: (-0.2, 0.2) }, 42).unwrap();
        let ms: Vec<_> = (0..3).map(|k| f.matrix(&format!("M{k}")).unwrap()).collect();
        for a in &ms {
            assert!(is_positive_stable(a, 0.0).unwrap());
            for b in &ms {
                let scale = a.frobenius_norm() * b.frobenius_norm();
                assert!(commutator_norm(a, b).unwrap() <= 1e-12 * scale);
            }
        }
    }

    #[test]
    fn generation_is_deterministic() {
        let a = random_commuting_family(3, 2, SpectrumBox::real(0.5, 2.0), 9).unwrap();
        let b = random_commuting_family(3, 2, SpectrumBox::real(0.5, 2.0), 9).unwrap();
        assert_eq!(a.matrix("M1"), b.matrix("M1"));
    }
}
