use super::echelon::{kernel_basis, Subspace};
use super::scalar::Scalar;
use super::sparse::{Matrix, SparseVec};
use super::LinalgError;

/// Homology at the middle term of `C_in --d_in--> C --d_out--> C_out`.
///
/// Matrices act on column vectors, so `d_in` is `dim C × dim C_in`.
#[derive(Clone, Debug)]
pub struct Homology {
    pub dim: usize,
    pub boundaries: Subspace,
    pub cycles: Subspace,
    /// Cycles spanning a complement of the boundaries; each vanishes on the
    /// pivot columns of `boundaries`.
    pub representatives: Subspace,
}

pub fn homology(d_in: &Matrix, d_out: &Matrix) -> Result<Homology, LinalgError> {
    if d_in.nrows() != d_out.ncols() {
        return Err(LinalgError::ShapeMismatch {
            context: "homology",
            left: d_out.ncols(),
            right: d_in.nrows(),
        });
    }
    if !d_out.mul(d_in).is_zero() {
        return Err(LinalgError::CompositionNotZero);
    }
    Ok(homology_unchecked(d_in, d_out))
}

/// Same as [`homology`] without verifying `d_out · d_in = 0`.
pub fn homology_unchecked(d_in: &Matrix, d_out: &Matrix) -> Homology {
    let field = d_in.field();
    let boundaries = Subspace::column_space(d_in);
    let cycles = kernel_basis(d_out);
    let residuals: Vec<SparseVec> = cycles.basis().iter().map(|z| boundaries.reduce(z).1).collect();
    let representatives = Subspace::span(field, cycles.ambient(), &residuals);
    Homology { dim: representatives.dim(), boundaries, cycles, representatives }
}

impl Homology {
    /// Coordinates of the class of `z` in the representative basis, or `None`
    /// when `z` is not a cycle.
    pub fn class_of(&self, z: &SparseVec) -> Option<Vec<Scalar>> {
        let (_, r) = self.boundaries.reduce(z);
        self.representatives.coordinates(&r)
    }

    /// Whether `z` is a boundary.
    pub fn is_boundary(&self, z: &SparseVec) -> bool {
        self.boundaries.contains(z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Field;

    const Q: Field = Field::Rational;

    #[test]
    fn zero_maps_give_everything() {
        let h = homology(&Matrix::zero(Q, 5, 0), &Matrix::zero(Q, 0, 5)).unwrap();
        assert_eq!(h.dim, 5);
    }

    #[test]
    fn identity_in_kills_everything() {
        let h = homology(&Matrix::identity(Q, 3), &Matrix::zero(Q, 0, 3)).unwrap();
        assert_eq!(h.dim, 0);
    }

    #[test]
    fn hand_example() {
        let d_in = Matrix::from_ints(Q, &[&[1], &[0]]);
        let d_out = Matrix::from_ints(Q, &[&[0, 1]]);
        let h = homology(&d_in, &d_out).unwrap();
        assert_eq!(h.dim, 0);
    }

    #[test]
    fn composition_checked() {
        let d_in = Matrix::from_ints(Q, &[&[1], &[1]]);
        let d_out = Matrix::from_ints(Q, &[&[0, 1]]);
        assert!(matches!(homology(&d_in, &d_out), Err(LinalgError::CompositionNotZero)));
    }

    #[test]
    fn class_of_modulo_boundaries() {
        // C = Q^3, boundaries span e0+e1, cycles are z with z2 = 0.
        let d_in = Matrix::from_ints(Q, &[&[1], &[1], &[0]]);
        let d_out = Matrix::from_ints(Q, &[&[0, 0, 1]]);
        let h = homology(&d_in, &d_out).unwrap();
        assert_eq!(h.dim, 1);
        let e0 = SparseVec::unit(0, Q);
        let e1 = SparseVec::unit(1, Q);
        assert_eq!(h.class_of(&e0), h.class_of(&e1).map(|c| c.iter().map(|x| -x).collect()));
        assert!(h.class_of(&SparseVec::unit(2, Q)).is_none());
        assert!(h.class_of(&e0.sub(&e1.neg())).unwrap().iter().all(|c| c.is_zero()));
    }
}
