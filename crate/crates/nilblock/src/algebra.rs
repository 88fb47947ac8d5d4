//! The Lie algebra N of strictly block upper triangular matrices.
//!
//! For a partition (n1, ..., nt) of n, N consists of the n x n matrices whose
//! block (i,j) vanishes unless i < j, with bracket [X,Y] = XY - YX. The
//! standard basis elements E[i,j;p,q] are the matrices with a single 1 at
//! entry (p,q) of block (i,j); the basis is ordered lexicographically by
//! (i,j) and row-major by (p,q) inside each block.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::{Mat, Partition, RowReducer};

/// Label of a standard basis element: entry (p,q) of block (i,j), all 1-based.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct BasisId {
    pub i: usize,
    pub j: usize,
    pub p: usize,
    pub q: usize,
}

impl fmt::Display for BasisId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E[{},{};{},{}]", self.i, self.j, self.p, self.q)
    }
}

/// Basis positions of the center; `whole_algebra` marks the degenerate t = 1
/// case where N = 0 and the (empty-basis) center is all of N.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CenterBasis {
    pub positions: Vec<usize>,
    pub whole_algebra: bool,
}

/// N with its ordered basis and precomputed structure constants.
///
/// Structure constants are sparse: for basis elements u, v the bracket
/// [u, v] is either zero or a single signed basis element.
#[derive(Clone, Debug)]
pub struct Algebra {
    field: Field,
    part: Partition,
    basis: Vec<BasisId>,
    index: HashMap<BasisId, usize>,
    table: Vec<Option<(usize, i8)>>,
}

impl Algebra {
    pub fn new(field: Field, part: Partition) -> Algebra {
        let t = part.t();
        let mut basis = Vec::new();
        for i in 1..=t {
            for j in i + 1..=t {
                for p in 1..=part.size(i) {
                    for q in 1..=part.size(j) {
                        basis.push(BasisId { i, j, p, q });
                    }
                }
            }
        }
        let index: HashMap<BasisId, usize> =
            basis.iter().enumerate().map(|(k, &b)| (b, k)).collect();
        let d = basis.len();
        let mut table = vec![None; d * d];
        // [E[i,j;p,q], E[k,l;r,s]] = d_jk d_qr E[i,l;p,s] - d_li d_sp E[k,j;r,q];
        // at most one term survives because both together would force i < i.
        for (a, u) in basis.iter().enumerate() {
            for (b, v) in basis.iter().enumerate() {
                let mut entry = None;
                if u.j == v.i && u.q == v.p {
                    let target = BasisId {
                        i: u.i,
                        j: v.j,
                        p: u.p,
                        q: v.q,
                    };
                    entry = Some((index[&target], 1i8));
                } else if v.j == u.i && v.q == u.p {
                    let target = BasisId {
                        i: v.i,
                        j: u.j,
                        p: v.p,
                        q: u.q,
                    };
                    entry = Some((index[&target], -1i8));
                }
                table[a * d + b] = entry;
            }
        }
        Algebra {
            field,
            part,
            basis,
            index,
            table,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn partition(&self) -> &Partition {
        &self.part
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisId] {
        &self.basis
    }

    pub fn basis_id(&self, k: usize) -> BasisId {
        self.basis[k]
    }

    /// Position of E[i,j;p,q] in the basis order.
    pub fn basis_position(&self, i: usize, j: usize, p: usize, q: usize) -> Result<usize> {
        self.check_block_entry(i, j, p, q)?;
        Ok(self.index[&BasisId { i, j, p, q }])
    }

    /// The basis element E[i,j;p,q] as an n x n matrix.
    pub fn standard_elem(&self, i: usize, j: usize, p: usize, q: usize) -> Result<Mat> {
        self.check_block_entry(i, j, p, q)?;
        let b = Mat::unit(self.field, self.part.size(i), self.part.size(j), p, q)?;
        Mat::embed_block(&self.part, &b, i, j)
    }

    /// Basis element at position k as an n x n matrix.
    pub fn basis_mat(&self, k: usize) -> Mat {
        let b = self.basis[k];
        self.standard_elem(b.i, b.j, b.p, b.q)
            .expect("stored basis ids are valid")
    }

    fn check_block_entry(&self, i: usize, j: usize, p: usize, q: usize) -> Result<()> {
        let t = self.part.t();
        if !(1..=t).contains(&i) || !(1..=t).contains(&j) || i >= j {
            return Err(Error::IndexOutOfRange(format!(
                "block ({i},{j}) is not strictly upper for t = {t}"
            )));
        }
        if !(1..=self.part.size(i)).contains(&p) || !(1..=self.part.size(j)).contains(&q) {
            return Err(Error::IndexOutOfRange(format!(
                "entry ({p},{q}) in block ({i},{j}) of size {}x{}",
                self.part.size(i),
                self.part.size(j)
            )));
        }
        Ok(())
    }

    /// Structure constant: [basis[a], basis[b]] as a signed basis position,
    /// or None when the bracket vanishes.
    pub fn bracket_coords(&self, a: usize, b: usize) -> Option<(usize, i8)> {
        self.table[a * self.dim() + b]
    }

    /// Coordinates of a strictly block upper triangular matrix.
    pub fn to_coords(&self, m: &Mat) -> Result<Vec<Scalar>> {
        if !m.is_strict_block_upper(&self.part)? {
            return Err(Error::NotStrictBlockUpper);
        }
        Ok(self
            .basis
            .iter()
            .map(|b| {
                let (ro, co) = (self.part.offset(b.i), self.part.offset(b.j));
                m.at(ro + b.p, co + b.q).clone()
            })
            .collect())
    }

    /// Matrix with the given coordinates in the standard basis.
    pub fn from_coords(&self, coords: &[Scalar]) -> Result<Mat> {
        if coords.len() != self.dim() {
            return Err(Error::DimMismatch(format!(
                "{} coordinates for an algebra of dimension {}",
                coords.len(),
                self.dim()
            )));
        }
        let n = self.part.n();
        let mut m = Mat::zero(self.field, n, n);
        for (b, v) in self.basis.iter().zip(coords) {
            if v.is_zero() {
                continue;
            }
            let (ro, co) = (self.part.offset(b.i), self.part.offset(b.j));
            m.set(ro + b.p, co + b.q, v.clone());
        }
        Ok(m)
    }

    /// Bracket of two coordinate vectors, via the structure constants.
    pub fn bracket_in_coords(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let f = self.field;
        let d = self.dim();
        let mut out = vec![f.zero(); d];
        for a in 0..d {
            if u[a].is_zero() {
                continue;
            }
            for b in 0..d {
                if v[b].is_zero() {
                    continue;
                }
                if let Some((k, sign)) = self.table[a * d + b] {
                    let prod = f.mul(&u[a], &v[b]);
                    let term = if sign > 0 { prod } else { f.neg(&prod) };
                    out[k] = f.add(&out[k], &term);
                }
            }
        }
        out
    }

    /// Positions spanning the derived algebra [N, N]: every block (i,j) with
    /// j > i + 1.
    pub fn derived_basis(&self) -> Vec<usize> {
        (0..self.dim())
            .filter(|&k| self.basis[k].j > self.basis[k].i + 1)
            .collect()
    }

    /// Positions spanning the center Z(N): block (1,t). For t = 1 the center
    /// is the whole (zero) algebra, reported by the flag.
    pub fn center_basis(&self) -> CenterBasis {
        let t = self.part.t();
        if t == 1 {
            return CenterBasis {
                positions: Vec::new(),
                whole_algebra: true,
            };
        }
        let positions = (0..self.dim())
            .filter(|&k| self.basis[k].i == 1 && self.basis[k].j == t)
            .collect();
        CenterBasis {
            positions,
            whole_algebra: false,
        }
    }

    /// Span of all pairwise basis brackets, as a row reducer over coordinates.
    /// Brute-force counterpart of [`Algebra::derived_basis`].
    pub fn derived_span_bruteforce(&self) -> RowReducer {
        let d = self.dim();
        let f = self.field;
        let mut red = RowReducer::new(f, d);
        for a in 0..d {
            for b in 0..d {
                if let Some((k, sign)) = self.table[a * d + b] {
                    let mut row = vec![f.zero(); d];
                    row[k] = if sign > 0 { f.one() } else { f.neg(&f.one()) };
                    red.insert(row);
                }
            }
        }
        red
    }

    /// Nullspace of v -> ([v, b_1], ..., [v, b_d]), as coordinate columns.
    /// Brute-force counterpart of [`Algebra::center_basis`].
    pub fn center_bruteforce(&self) -> Vec<Vec<Scalar>> {
        let d = self.dim();
        let f = self.field;
        // rows: one per (basis b, output coordinate r); unknowns: coords of v
        let mut sys = Mat::zero(f, d * d, d);
        for b in 0..d {
            for a in 0..d {
                if let Some((k, sign)) = self.table[a * d + b] {
                    let v = if sign > 0 { f.one() } else { f.neg(&f.one()) };
                    sys.set(b * d + k + 1, a + 1, v);
                }
            }
        }
        sys.nullspace().into_iter().map(|m| m.col_vec(1)).collect()
    }
}

/// Commutator XY - YX of square matrices of equal size.
pub fn bracket(x: &Mat, y: &Mat) -> Result<Mat> {
    if x.rows() != x.cols() || y.rows() != y.cols() || x.rows() != y.rows() {
        return Err(Error::DimMismatch(format!(
            "bracket of {}x{} and {}x{}",
            x.rows(),
            x.cols(),
            y.rows(),
            y.cols()
        )));
    }
    x.mul(y)?.sub(&y.mul(x)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn alg(ch: u64, sizes: &[usize]) -> Algebra {
        Algebra::new(
            Field::new(ch).unwrap(),
            Partition::new(sizes.to_vec()).unwrap(),
        )
    }

    #[test]
    fn dimension_formula() {
        // dim N = sum over i < j of n_i * n_j
        for (sizes, d) in [
            (vec![1usize], 0usize),
            (vec![3], 0),
            (vec![1, 1], 1),
            (vec![2, 3], 6),
            (vec![1, 1, 1], 3),
            (vec![2, 1, 1, 2], 13),
            (vec![1, 2, 3], 11),
        ] {
            assert_eq!(alg(5, &sizes).dim(), d, "{sizes:?}");
        }
    }

    #[test]
    fn basis_order_frozen() {
        let a = alg(2, &[1, 1, 1, 1]);
        let expected = [
            (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4),
        ];
        for (k, &(i, j)) in expected.iter().enumerate() {
            assert_eq!(a.basis_position(i, j, 1, 1).unwrap(), k);
        }
        // row-major inside a block
        let b = alg(2, &[2, 2]);
        assert_eq!(b.basis_position(1, 2, 1, 1).unwrap(), 0);
        assert_eq!(b.basis_position(1, 2, 1, 2).unwrap(), 1);
        assert_eq!(b.basis_position(1, 2, 2, 1).unwrap(), 2);
        assert_eq!(b.basis_position(1, 2, 2, 2).unwrap(), 3);
    }

    #[test]
    fn standard_elem_validation() {
        let a = alg(3, &[2, 1]);
        assert!(a.standard_elem(1, 2, 1, 1).is_ok());
        assert!(a.standard_elem(2, 1, 1, 1).is_err());
        assert!(a.standard_elem(1, 1, 1, 1).is_err());
        assert!(a.standard_elem(1, 2, 3, 1).is_err());
        assert!(a.standard_elem(1, 2, 1, 2).is_err());
    }

    #[test]
    fn structure_constants_match_matrix_bracket() {
        for sizes in [vec![1usize, 1, 1], vec![2, 1, 2], vec![1, 2, 1, 1], vec![3, 2]] {
            for ch in [0u64, 2, 5] {
                let a = alg(ch, &sizes);
                let d = a.dim();
                for x in 0..d {
                    for y in 0..d {
                        let want = bracket(&a.basis_mat(x), &a.basis_mat(y)).unwrap();
                        let got = match a.bracket_coords(x, y) {
                            None => Mat::zero(a.field(), a.partition().n(), a.partition().n()),
                            Some((k, s)) => {
                                let m = a.basis_mat(k);
                                if s > 0 {
                                    m
                                } else {
                                    m.neg()
                                }
                            }
                        };
                        assert_eq!(got, want, "{sizes:?} ch={ch} [{x},{y}]");
                    }
                }
            }
        }
    }

    #[test]
    fn derived_frozen_and_bruteforced() {
        let a = alg(2, &[1, 1, 1, 1]);
        assert_eq!(a.derived_basis(), vec![1, 2, 4]); // blocks (1,3), (1,4), (2,4)

        for sizes in [vec![1usize, 1, 1, 1], vec![2, 1, 2], vec![1, 3], vec![2], vec![1, 1, 1, 1, 1]] {
            for ch in [0u64, 2, 3] {
                let a = alg(ch, &sizes);
                let brute = a.derived_span_bruteforce();
                let f = a.field();
                // same span: formula basis inside brute span and equal rank
                for k in a.derived_basis() {
                    let mut row = vec![f.zero(); a.dim()];
                    row[k] = f.one();
                    assert!(brute.contains(&row), "{sizes:?} ch={ch} pos {k}");
                }
                assert_eq!(brute.rank(), a.derived_basis().len(), "{sizes:?} ch={ch}");
            }
        }
    }

    #[test]
    fn center_frozen_and_bruteforced() {
        let a = alg(0, &[2, 1, 1, 2]);
        assert_eq!(a.center_basis().positions, vec![4, 5, 6, 7]); // block (1,4)

        for sizes in [vec![1usize, 1, 1], vec![2, 1, 1, 2], vec![1, 2], vec![2, 2, 2]] {
            for ch in [0u64, 2, 5] {
                let a = alg(ch, &sizes);
                let f = a.field();
                let formula = a.center_basis().positions;
                let brute = a.center_bruteforce();
                let mut formula_span = RowReducer::new(f, a.dim());
                for &k in &formula {
                    let mut row = vec![f.zero(); a.dim()];
                    row[k] = f.one();
                    formula_span.insert(row);
                }
                assert_eq!(brute.len(), formula.len(), "{sizes:?} ch={ch}");
                for v in brute {
                    assert!(formula_span.contains(&v), "{sizes:?} ch={ch}");
                }
            }
        }
    }

    #[test]
    fn center_degenerate_t1() {
        let a = alg(5, &[4]);
        assert_eq!(a.dim(), 0);
        let c = a.center_basis();
        assert!(c.positions.is_empty());
        assert!(c.whole_algebra);
        assert!(!alg(5, &[1, 1]).center_basis().whole_algebra);
    }

    #[test]
    fn coords_roundtrip_and_strictness() {
        let a = alg(5, &[2, 1]);
        let f = a.field();
        let m = Mat::from_i64(f, &[&[0, 0, 3], &[0, 0, 4], &[0, 0, 0]]).unwrap();
        let coords = a.to_coords(&m).unwrap();
        assert_eq!(coords, vec![f.from_i64(3), f.from_i64(4)]);
        assert_eq!(a.from_coords(&coords).unwrap(), m);

        let bad = Mat::identity(f, 3);
        assert!(matches!(
            a.to_coords(&bad),
            Err(Error::NotStrictBlockUpper)
        ));
        assert!(a.from_coords(&[f.one()]).is_err());
    }

    fn arb_case() -> impl Strategy<Value = (u64, Vec<usize>, Vec<i64>, Vec<i64>, Vec<i64>, i64, i64)>
    {
        (
            prop_oneof![Just(0u64), Just(2), Just(3), Just(5)],
            proptest::collection::vec(1usize..=2, 1..=4),
        )
            .prop_flat_map(|(ch, sizes)| {
                let d: usize = {
                    let t = sizes.len();
                    (0..t)
                        .flat_map(|i| ((i + 1)..t).map(move |j| (i, j)))
                        .map(|(i, j)| sizes[i] * sizes[j])
                        .sum()
                };
                let coords = proptest::collection::vec(-9i64..=9, d.max(1));
                (
                    Just(ch),
                    Just(sizes),
                    coords.clone(),
                    coords.clone(),
                    coords,
                    -9i64..=9,
                    -9i64..=9,
                )
            })
    }

    fn vec_of(a: &Algebra, vals: &[i64]) -> Mat {
        let f = a.field();
        let coords: Vec<_> = (0..a.dim()).map(|k| f.from_i64(vals[k])).collect();
        a.from_coords(&coords).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn jacobi_and_antisymmetry((ch, sizes, xs, ys, zs, _, _) in arb_case()) {
            let a = alg(ch, &sizes);
            let (x, y, z) = (vec_of(&a, &xs), vec_of(&a, &ys), vec_of(&a, &zs));
            let xy = bracket(&x, &y).unwrap();
            prop_assert_eq!(&xy, &bracket(&y, &x).unwrap().neg());
            let cycle = bracket(&x, &bracket(&y, &z).unwrap())
                .unwrap()
                .add(&bracket(&y, &bracket(&z, &x).unwrap()).unwrap())
                .unwrap()
                .add(&bracket(&z, &bracket(&x, &y).unwrap()).unwrap())
                .unwrap();
            prop_assert!(cycle.is_zero());
            // closure: the bracket stays strictly block upper
            prop_assert!(xy.is_strict_block_upper(a.partition()).unwrap());
        }

        #[test]
        fn bracket_bilinear((ch, sizes, xs, ys, zs, s, t) in arb_case()) {
            let a = alg(ch, &sizes);
            let f = a.field();
            let (x, y, z) = (vec_of(&a, &xs), vec_of(&a, &ys), vec_of(&a, &zs));
            let lhs = bracket(
                &x.scale(&f.from_i64(s)).add(&y.scale(&f.from_i64(t))).unwrap(),
                &z,
            )
            .unwrap();
            let rhs = bracket(&x, &z)
                .unwrap()
                .scale(&f.from_i64(s))
                .add(&bracket(&y, &z).unwrap().scale(&f.from_i64(t)))
                .unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn coords_bracket_agrees((ch, sizes, xs, ys, _, _, _) in arb_case()) {
            let a = alg(ch, &sizes);
            let (x, y) = (vec_of(&a, &xs), vec_of(&a, &ys));
            let via_mats = a.to_coords(&bracket(&x, &y).unwrap()).unwrap();
            let via_table =
                a.bracket_in_coords(&a.to_coords(&x).unwrap(), &a.to_coords(&y).unwrap());
            prop_assert_eq!(via_mats, via_table);
        }
    }
}
