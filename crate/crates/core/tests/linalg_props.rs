use koszul_core::linalg::{
    coordinates, homology, intersect, intersect_pairwise, kernel_basis, rank, rref, rref_with, EchelonOptions, Field,
    Matrix, SparseVec, Subspace,
};
use proptest::prelude::*;

fn field_strategy() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rational), Just(Field::Prime(5)), Just(Field::Prime(2))]
}

fn matrix(field: Field, rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, cols), rows).prop_map(move |rows| {
        let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        if refs.is_empty() {
            Matrix::zero(field, 0, cols)
        } else {
            Matrix::from_ints(field, &refs)
        }
    })
}

fn any_matrix() -> impl Strategy<Value = Matrix> {
    (field_strategy(), 0usize..7, 1usize..8).prop_flat_map(|(f, r, c)| matrix(f, r, c))
}

fn subspace(field: Field, ambient: usize) -> impl Strategy<Value = Subspace> {
    matrix(field, 3, ambient).prop_map(|m| Subspace::row_space(&m))
}

proptest! {
    #[test]
    fn rref_is_idempotent(m in any_matrix()) {
        let once = rref(&m);
        let twice = rref(&once.matrix);
        prop_assert_eq!(&once.matrix, &twice.matrix);
        prop_assert!(once.pivots.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn dense_and_sparse_agree(m in any_matrix()) {
        let dense = rref_with(&m, &EchelonOptions { dense_threshold: 0.0, ..Default::default() });
        let sparse = rref_with(&m, &EchelonOptions { dense_threshold: 2.0, ..Default::default() });
        prop_assert_eq!(dense.matrix, sparse.matrix);
    }

    #[test]
    fn rank_nullity(m in any_matrix()) {
        let k = kernel_basis(&m);
        for v in k.basis() {
            prop_assert!(m.mul_vec(v).is_zero());
        }
        prop_assert_eq!(rank(&m) + k.dim(), m.ncols());
    }

    #[test]
    fn intersect_commutes_and_associates(
        (a, b, c) in (field_strategy(), 1usize..6).prop_flat_map(|(f, n)| (subspace(f, n), subspace(f, n), subspace(f, n)))
    ) {
        let ab = intersect(&[a.clone(), b.clone()]).unwrap();
        let ba = intersect(&[b.clone(), a.clone()]).unwrap();
        prop_assert_eq!(&ab, &ba);
        let left = intersect(&[ab, c.clone()]).unwrap();
        let right = intersect(&[a.clone(), intersect(&[b.clone(), c.clone()]).unwrap()]).unwrap();
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(&left, &intersect(&[a.clone(), b.clone(), c.clone()]).unwrap());
        prop_assert_eq!(&left, &intersect_pairwise(&[a.clone(), b, c]).unwrap());
        prop_assert!(a.contains_subspace(&left));
    }

    #[test]
    fn coordinates_reconstruct(
        (s, coeffs) in (field_strategy(), 1usize..6).prop_flat_map(|(f, n)| {
            (subspace(f, n), prop::collection::vec(-4i64..=4, 3))
        })
    ) {
        let f = s.field();
        let scalars: Vec<_> = coeffs.iter().take(s.dim()).map(|&c| f.from_int(c)).collect();
        let v = s.combine(&scalars);
        let c = coordinates(&v, &s).expect("in span");
        prop_assert_eq!(&c, &scalars);
        prop_assert_eq!(s.combine(&c), v);
    }

    #[test]
    fn homology_dimension_formula(
        (a, b) in (field_strategy(), 1usize..5, 1usize..6, 1usize..5)
            .prop_flat_map(|(f, x, y, z)| (matrix(f, y, x), matrix(f, z, y)))
    ) {
        // Force d_out * d_in = 0 by projecting d_out onto the annihilator of im(d_in).
        let im = Subspace::column_space(&a);
        let ann = im.annihilator();
        let rows: Vec<SparseVec> = b
            .rows()
            .iter()
            .map(|r| {
                let c = ann.combine(&ann.basis().iter().map(|v| v.dot(r, b.field())).collect::<Vec<_>>());
                c
            })
            .collect();
        let d_out = Matrix::from_rows(b.field(), b.ncols(), rows);
        let h = homology(&a, &d_out).unwrap();
        prop_assert_eq!(h.dim, kernel_basis(&d_out).dim() - rank(&a));
        for r in h.representatives.basis() {
            prop_assert!(d_out.mul_vec(r).is_zero());
            prop_assert!(!im.contains(r));
        }
    }
}
