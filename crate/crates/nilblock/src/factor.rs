//! Solvers for matrix functional equations on rectangular blocks.
//!
//! Each solver takes linear maps between spaces of rectangular matrices,
//! checks a compatibility hypothesis on every pair of standard unit matrices,
//! and produces the factor matrices that realize the maps as one-sided
//! multiplications. A violated hypothesis is reported with the exact unit
//! pair as a counterexample; solver output is re-verified before it is
//! returned, so a successful call is a proof.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Mat;

/// A linear map between matrix spaces, stored by its action on unit matrices.
///
/// The action matrix has one column per input unit and one row per output
/// entry, both enumerated row-major, so `apply` is a matrix-vector product.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BlockLinMap {
    field: Field,
    in_shape: (usize, usize),
    out_shape: (usize, usize),
    action: Mat,
}

impl BlockLinMap {
    pub fn zero(field: Field, in_shape: (usize, usize), out_shape: (usize, usize)) -> BlockLinMap {
        BlockLinMap {
            field,
            in_shape,
            out_shape,
            action: Mat::zero(field, out_shape.0 * out_shape.1, in_shape.0 * in_shape.1),
        }
    }

    /// Builds the map by evaluating `f` on every unit matrix of the input
    /// shape. Errors if some image has the wrong shape or field.
    pub fn from_fn(
        field: Field,
        in_shape: (usize, usize),
        out_shape: (usize, usize),
        mut f: impl FnMut(&Mat) -> Result<Mat>,
    ) -> Result<BlockLinMap> {
        let mut action = Mat::zero(field, out_shape.0 * out_shape.1, in_shape.0 * in_shape.1);
        for p in 1..=in_shape.0 {
            for q in 1..=in_shape.1 {
                let unit = Mat::unit(field, in_shape.0, in_shape.1, p, q)?;
                let img = f(&unit)?;
                if img.rows() != out_shape.0 || img.cols() != out_shape.1 || img.field() != field {
                    return Err(Error::DimMismatch(format!(
                        "map image is {}x{}, expected {}x{}",
                        img.rows(),
                        img.cols(),
                        out_shape.0,
                        out_shape.1
                    )));
                }
                let col = (p - 1) * in_shape.1 + q;
                for r in 1..=out_shape.0 {
                    for c in 1..=out_shape.1 {
                        action.set((r - 1) * out_shape.1 + c, col, img.at(r, c).clone());
                    }
                }
            }
        }
        Ok(BlockLinMap {
            field,
            in_shape,
            out_shape,
            action,
        })
    }

    pub fn from_action(
        field: Field,
        in_shape: (usize, usize),
        out_shape: (usize, usize),
        action: Mat,
    ) -> Result<BlockLinMap> {
        if action.rows() != out_shape.0 * out_shape.1
            || action.cols() != in_shape.0 * in_shape.1
            || action.field() != field
        {
            return Err(Error::DimMismatch(format!(
                "action matrix {}x{} for shapes {:?} -> {:?}",
                action.rows(),
                action.cols(),
                in_shape,
                out_shape
            )));
        }
        Ok(BlockLinMap {
            field,
            in_shape,
            out_shape,
            action,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn in_shape(&self) -> (usize, usize) {
        self.in_shape
    }

    pub fn out_shape(&self) -> (usize, usize) {
        self.out_shape
    }

    pub fn action(&self) -> &Mat {
        &self.action
    }

    pub fn apply(&self, m: &Mat) -> Result<Mat> {
        if m.rows() != self.in_shape.0 || m.cols() != self.in_shape.1 || m.field() != self.field {
            return Err(Error::DimMismatch(format!(
                "map input is {}x{}, expected {}x{}",
                m.rows(),
                m.cols(),
                self.in_shape.0,
                self.in_shape.1
            )));
        }
        let f = self.field;
        let mut out = Mat::zero(f, self.out_shape.0, self.out_shape.1);
        for p in 1..=self.in_shape.0 {
            for q in 1..=self.in_shape.1 {
                let v = m.at(p, q);
                if v.is_zero() {
                    continue;
                }
                let col = (p - 1) * self.in_shape.1 + q;
                for r in 1..=self.out_shape.0 {
                    for c in 1..=self.out_shape.1 {
                        let a = self.action.at((r - 1) * self.out_shape.1 + c, col);
                        if !a.is_zero() {
                            let acc = f.add(out.at(r, c), &f.mul(a, v));
                            out.set(r, c, acc);
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

/// X, Y, Z with f(C) = XC + CY, g(A) = XA + AZ, h(B) = BY - ZB.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SandwichSolution {
    pub x: Mat,
    pub y: Mat,
    pub z: Mat,
}

fn unit(field: Field, shape: (usize, usize), p: usize, q: usize) -> Mat {
    Mat::unit(field, shape.0, shape.1, p, q).expect("unit indices in range")
}

fn maps_equal_on_units(
    a: impl Fn(&Mat) -> Result<Mat>,
    b: impl Fn(&Mat) -> Result<Mat>,
    field: Field,
    shape: (usize, usize),
) -> Result<bool> {
    for p in 1..=shape.0 {
        for q in 1..=shape.1 {
            let u = unit(field, shape, p, q);
            if a(&u)? != b(&u)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Recovers X with phi(C) = C X and varphi(D) = D X from
/// phi(A B) = A varphi(B), where phi maps m x p to m x q and varphi maps
/// n x p to n x q.
pub fn solve_right_factor(phi: &BlockLinMap, varphi: &BlockLinMap) -> Result<Mat> {
    let field = phi.field();
    let (m, p) = phi.in_shape();
    let (m2, q) = phi.out_shape();
    let (n, p2) = varphi.in_shape();
    let (n2, q2) = varphi.out_shape();
    if m != m2 || n != n2 || p != p2 || q != q2 || field != varphi.field() {
        return Err(Error::DimMismatch(format!(
            "solve_right_factor: phi {:?}->{:?}, varphi {:?}->{:?}",
            phi.in_shape(),
            phi.out_shape(),
            varphi.in_shape(),
            varphi.out_shape()
        )));
    }
    // hypothesis on all unit pairs A in M(m,n), B in M(n,p)
    for a0 in 1..=m {
        for a1 in 1..=n {
            let a = unit(field, (m, n), a0, a1);
            for b0 in 1..=n {
                for b1 in 1..=p {
                    let b = unit(field, (n, p), b0, b1);
                    let ab = a.mul(&b)?;
                    if phi.apply(&ab)? != a.mul(&varphi.apply(&b)?)? {
                        return Err(Error::HypothesisViolated {
                            solver: "solve_right_factor",
                            a0,
                            a1,
                            b0,
                            b1,
                        });
                    }
                }
            }
        }
    }
    // row d of X is the first row of phi(E[1,d])
    let mut x = Mat::zero(field, p, q);
    for d in 1..=p {
        let img = phi.apply(&unit(field, (m, p), 1, d))?;
        for c in 1..=q {
            x.set(d, c, img.at(1, c).clone());
        }
    }
    let ok = maps_equal_on_units(|u| phi.apply(u), |u| u.mul(&x), field, (m, p))?
        && maps_equal_on_units(|u| varphi.apply(u), |u| u.mul(&x), field, (n, p))?;
    if !ok {
        return Err(Error::Internal(
            "solve_right_factor: recovered factor fails to reproduce the maps".into(),
        ));
    }
    Ok(x)
}

/// Recovers X with phi(C) = X C and varphi(D) = X D from
/// phi(B A) = varphi(B) A, where phi maps m x p to n x p and varphi maps
/// m x q to n x q.
pub fn solve_left_factor(phi: &BlockLinMap, varphi: &BlockLinMap) -> Result<Mat> {
    let field = phi.field();
    let (m, p) = phi.in_shape();
    let (n, p2) = phi.out_shape();
    let (m2, q) = varphi.in_shape();
    let (n2, q2) = varphi.out_shape();
    if m != m2 || n != n2 || p != p2 || q != q2 || field != varphi.field() {
        return Err(Error::DimMismatch(format!(
            "solve_left_factor: phi {:?}->{:?}, varphi {:?}->{:?}",
            phi.in_shape(),
            phi.out_shape(),
            varphi.in_shape(),
            varphi.out_shape()
        )));
    }
    // hypothesis on all unit pairs B in M(m,q), A in M(q,p)
    for b0 in 1..=m {
        for b1 in 1..=q {
            let b = unit(field, (m, q), b0, b1);
            for a0 in 1..=q {
                for a1 in 1..=p {
                    let a = unit(field, (q, p), a0, a1);
                    let ba = b.mul(&a)?;
                    if phi.apply(&ba)? != varphi.apply(&b)?.mul(&a)? {
                        return Err(Error::HypothesisViolated {
                            solver: "solve_left_factor",
                            a0,
                            a1,
                            b0,
                            b1,
                        });
                    }
                }
            }
        }
    }
    // column c of X is the first column of phi(E[c,1])
    let mut x = Mat::zero(field, n, m);
    for c in 1..=m {
        let img = phi.apply(&unit(field, (m, p), c, 1))?;
        for r in 1..=n {
            x.set(r, c, img.at(r, 1).clone());
        }
    }
    let ok = maps_equal_on_units(|u| phi.apply(u), |u| x.mul(u), field, (m, p))?
        && maps_equal_on_units(|u| varphi.apply(u), |u| x.mul(u), field, (m, q))?;
    if !ok {
        return Err(Error::Internal(
            "solve_left_factor: recovered factor fails to reproduce the maps".into(),
        ));
    }
    Ok(x)
}

/// Recovers X with phi(C) = C X and varphi(D) = X D from
/// phi(A) B = A varphi(B), where phi maps m x p to m x q and varphi maps
/// q x n to p x n.
pub fn solve_balanced(phi: &BlockLinMap, varphi: &BlockLinMap) -> Result<Mat> {
    let field = phi.field();
    let (m, p) = phi.in_shape();
    let (m2, q) = phi.out_shape();
    let (q2, n) = varphi.in_shape();
    let (p2, n2) = varphi.out_shape();
    if m != m2 || p != p2 || q != q2 || n != n2 || field != varphi.field() {
        return Err(Error::DimMismatch(format!(
            "solve_balanced: phi {:?}->{:?}, varphi {:?}->{:?}",
            phi.in_shape(),
            phi.out_shape(),
            varphi.in_shape(),
            varphi.out_shape()
        )));
    }
    for a0 in 1..=m {
        for a1 in 1..=p {
            let a = unit(field, (m, p), a0, a1);
            let phi_a = phi.apply(&a)?;
            for b0 in 1..=q {
                for b1 in 1..=n {
                    let b = unit(field, (q, n), b0, b1);
                    if phi_a.mul(&b)? != a.mul(&varphi.apply(&b)?)? {
                        return Err(Error::HypothesisViolated {
                            solver: "solve_balanced",
                            a0,
                            a1,
                            b0,
                            b1,
                        });
                    }
                }
            }
        }
    }
    // row j of X is the first row of phi(E[1,j])
    let mut x = Mat::zero(field, p, q);
    for j in 1..=p {
        let img = phi.apply(&unit(field, (m, p), 1, j))?;
        for c in 1..=q {
            x.set(j, c, img.at(1, c).clone());
        }
    }
    let ok = maps_equal_on_units(|u| phi.apply(u), |u| u.mul(&x), field, (m, p))?
        && maps_equal_on_units(|u| varphi.apply(u), |u| x.mul(u), field, (q, n))?;
    if !ok {
        return Err(Error::Internal(
            "solve_balanced: recovered factor fails to reproduce the maps".into(),
        ));
    }
    Ok(x)
}

/// Recovers X, Y, Z from f(A B) = g(A) B + A h(B), where f maps p x r to
/// itself, g maps p x q to itself and h maps q x r to itself.
///
/// The scalar gauge is pinned by construction: X is read off the first
/// column of f on units E[j,1] and recentred so that X[1,1] = 0, Y is the
/// first-row read of f on units E[1,k], and Z solves the residual balanced
/// equation. Shifting (X, Y, Z) to (X + cI, Y - cI, Z - cI) gives the other
/// valid solutions.
pub fn solve_sandwich(
    f: &BlockLinMap,
    g: &BlockLinMap,
    h: &BlockLinMap,
) -> Result<SandwichSolution> {
    let field = f.field();
    let (p, r) = f.in_shape();
    let (pq0, q) = g.in_shape();
    let (qh, rh) = h.in_shape();
    if f.in_shape() != f.out_shape()
        || g.in_shape() != g.out_shape()
        || h.in_shape() != h.out_shape()
        || pq0 != p
        || qh != q
        || rh != r
        || g.field() != field
        || h.field() != field
    {
        return Err(Error::DimMismatch(format!(
            "solve_sandwich: f {:?}->{:?}, g {:?}->{:?}, h {:?}->{:?}",
            f.in_shape(),
            f.out_shape(),
            g.in_shape(),
            g.out_shape(),
            h.in_shape(),
            h.out_shape()
        )));
    }
    for a0 in 1..=p {
        for a1 in 1..=q {
            let a = unit(field, (p, q), a0, a1);
            let ga = g.apply(&a)?;
            for b0 in 1..=q {
                for b1 in 1..=r {
                    let b = unit(field, (q, r), b0, b1);
                    let lhs = f.apply(&a.mul(&b)?)?;
                    let rhs = ga.mul(&b)?.add(&a.mul(&h.apply(&b)?)?)?;
                    if lhs != rhs {
                        return Err(Error::HypothesisViolated {
                            solver: "solve_sandwich",
                            a0,
                            a1,
                            b0,
                            b1,
                        });
                    }
                }
            }
        }
    }
    // X[i,j] = f(E[j,1])[i,1] - delta_ij * f(E[1,1])[1,1]
    let f11 = f.apply(&unit(field, (p, r), 1, 1))?.at(1, 1).clone();
    let mut x = Mat::zero(field, p, p);
    for j in 1..=p {
        let img = f.apply(&unit(field, (p, r), j, 1))?;
        for i in 1..=p {
            let mut v = img.at(i, 1).clone();
            if i == j {
                v = field.sub(&v, &f11);
            }
            x.set(i, j, v);
        }
    }
    // Y[k,l] = f(E[1,k])[1,l]
    let mut y = Mat::zero(field, r, r);
    for k in 1..=r {
        let img = f.apply(&unit(field, (p, r), 1, k))?;
        for l in 1..=r {
            y.set(k, l, img.at(1, l).clone());
        }
    }
    // residual balanced equation: (g(A) - XA) B = A (BY - h(B))
    let phi_res = BlockLinMap::from_fn(field, (p, q), (p, q), |a| g.apply(a)?.sub(&x.mul(a)?))?;
    let varphi_res =
        BlockLinMap::from_fn(field, (q, r), (q, r), |b| b.mul(&y)?.sub(&h.apply(b)?))?;
    let z = solve_balanced(&phi_res, &varphi_res).map_err(|e| match e {
        Error::HypothesisViolated { .. } => Error::Internal(
            "solve_sandwich: residual equation lost the balanced hypothesis".into(),
        ),
        other => other,
    })?;
    let ok = maps_equal_on_units(
        |u| f.apply(u),
        |u| x.mul(u)?.add(&u.mul(&y)?),
        field,
        (p, r),
    )? && maps_equal_on_units(
        |u| g.apply(u),
        |u| x.mul(u)?.add(&u.mul(&z)?),
        field,
        (p, q),
    )? && maps_equal_on_units(
        |u| h.apply(u),
        |u| u.mul(&y)?.sub(&z.mul(u)?),
        field,
        (q, r),
    )?;
    if !ok {
        return Err(Error::Internal(
            "solve_sandwich: recovered solution fails to reproduce f, g, h".into(),
        ));
    }
    Ok(SandwichSolution { x, y, z })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> Field {
        Field::new(p).unwrap()
    }

    fn right_mul(field: Field, in_shape: (usize, usize), x: &Mat) -> BlockLinMap {
        BlockLinMap::from_fn(field, in_shape, (in_shape.0, x.cols()), |m| m.mul(x)).unwrap()
    }

    fn left_mul(field: Field, in_shape: (usize, usize), x: &Mat) -> BlockLinMap {
        BlockLinMap::from_fn(field, in_shape, (x.rows(), in_shape.1), |m| x.mul(m)).unwrap()
    }

    #[test]
    fn apply_matches_defining_fn() {
        let f = gf(7);
        let x = Mat::from_i64(f, &[&[1, 2], &[3, 4], &[5, 6]]).unwrap();
        let map = right_mul(f, (2, 3), &x);
        let m = Mat::from_i64(f, &[&[1, 0, 2], &[0, 3, 1]]).unwrap();
        assert_eq!(map.apply(&m).unwrap(), m.mul(&x).unwrap());
        assert_eq!(map.in_shape(), (2, 3));
        assert_eq!(map.out_shape(), (2, 2));
        assert!(map.apply(&Mat::zero(f, 3, 2)).is_err());
    }

    #[test]
    fn right_factor_recovers_witness() {
        let f = gf(5);
        let (m, n, p) = (2, 3, 2);
        let x0 = Mat::from_i64(f, &[&[1, 2], &[3, 4]]).unwrap();
        let phi = right_mul(f, (m, p), &x0);
        let varphi = right_mul(f, (n, p), &x0);
        assert_eq!(solve_right_factor(&phi, &varphi).unwrap(), x0);
    }

    #[test]
    fn left_factor_recovers_witness() {
        let f = Field::rationals();
        let (m, p, q) = (2, 2, 3);
        let x0 = Mat::from_i64(f, &[&[1, -2], &[0, 4], &[5, 1]]).unwrap(); // 3 x m
        let phi = left_mul(f, (m, p), &x0);
        let varphi = left_mul(f, (m, q), &x0);
        assert_eq!(solve_left_factor(&phi, &varphi).unwrap(), x0);
    }

    #[test]
    fn balanced_recovers_witness() {
        let f = gf(3);
        let (m, p, q, n) = (2, 2, 3, 2);
        let x0 = Mat::from_i64(f, &[&[1, 2, 0], &[2, 1, 1]]).unwrap(); // p x q
        let phi = right_mul(f, (m, p), &x0);
        let varphi = left_mul(f, (q, n), &x0);
        assert_eq!(solve_balanced(&phi, &varphi).unwrap(), x0);
    }

    #[test]
    fn transpose_is_not_a_right_factor() {
        let f = gf(5);
        let transpose =
            BlockLinMap::from_fn(f, (2, 2), (2, 2), |m| Ok(m.transpose())).unwrap();
        let err = solve_right_factor(&transpose, &transpose).unwrap_err();
        assert!(matches!(
            err,
            Error::HypothesisViolated {
                solver: "solve_right_factor",
                ..
            }
        ));
    }

    #[test]
    fn sandwich_recovers_and_pins_gauge() {
        let f = Field::rationals();
        let (p, q, r) = (2, 3, 2);
        let x0 = Mat::from_i64(f, &[&[2, 1], &[0, -1]]).unwrap();
        let y0 = Mat::from_i64(f, &[&[1, 4], &[2, 0]]).unwrap();
        let z0 = Mat::from_i64(f, &[&[1, 0, 2], &[3, -1, 0], &[0, 1, 1]]).unwrap();
        let fm = BlockLinMap::from_fn(f, (p, r), (p, r), |c| x0.mul(c)?.add(&c.mul(&y0)?)).unwrap();
        let gm = BlockLinMap::from_fn(f, (p, q), (p, q), |a| x0.mul(a)?.add(&a.mul(&z0)?)).unwrap();
        let hm = BlockLinMap::from_fn(f, (q, r), (q, r), |b| b.mul(&y0)?.sub(&z0.mul(b)?)).unwrap();
        let sol = solve_sandwich(&fm, &gm, &hm).unwrap();
        // pinned normalization: X has zero top-left entry; the returned
        // solution is the witness shifted by the scalar gauge c = X0[1,1]
        assert!(sol.x.at(1, 1).is_zero());
        let c = x0.at(1, 1).clone();
        let id_p = Mat::identity(f, p).scale(&c);
        let id_r = Mat::identity(f, r).scale(&c);
        let id_q = Mat::identity(f, q).scale(&c);
        assert_eq!(sol.x, x0.sub(&id_p).unwrap());
        assert_eq!(sol.y, y0.add(&id_r).unwrap());
        assert_eq!(sol.z, z0.add(&id_q).unwrap());
    }

    #[test]
    fn sandwich_gauge_shift_still_solves() {
        let f = gf(5);
        let (p, q, r) = (2, 2, 3);
        let x0 = Mat::from_i64(f, &[&[1, 2], &[3, 4]]).unwrap();
        let y0 = Mat::from_i64(f, &[&[0, 1, 2], &[1, 1, 0], &[2, 0, 3]]).unwrap();
        let z0 = Mat::from_i64(f, &[&[2, 1], &[0, 3]]).unwrap();
        let fm = BlockLinMap::from_fn(f, (p, r), (p, r), |c| x0.mul(c)?.add(&c.mul(&y0)?)).unwrap();
        let gm = BlockLinMap::from_fn(f, (p, q), (p, q), |a| x0.mul(a)?.add(&a.mul(&z0)?)).unwrap();
        let hm = BlockLinMap::from_fn(f, (q, r), (q, r), |b| b.mul(&y0)?.sub(&z0.mul(b)?)).unwrap();
        let sol = solve_sandwich(&fm, &gm, &hm).unwrap();
        // shift by lambda = 1: still reproduces f, g, h exactly
        let one = f.one();
        let xs = sol.x.add(&Mat::identity(f, p).scale(&one)).unwrap();
        let ys = sol.y.sub(&Mat::identity(f, r).scale(&one)).unwrap();
        let zs = sol.z.sub(&Mat::identity(f, q).scale(&one)).unwrap();
        let same_f = BlockLinMap::from_fn(f, (p, r), (p, r), |c| xs.mul(c)?.add(&c.mul(&ys)?)).unwrap();
        let same_g = BlockLinMap::from_fn(f, (p, q), (p, q), |a| xs.mul(a)?.add(&a.mul(&zs)?)).unwrap();
        let same_h = BlockLinMap::from_fn(f, (q, r), (q, r), |b| b.mul(&ys)?.sub(&zs.mul(b)?)).unwrap();
        assert_eq!(same_f.action(), fm.action());
        assert_eq!(same_g.action(), gm.action());
        assert_eq!(same_h.action(), hm.action());
    }

    #[test]
    fn corrupted_maps_are_rejected_with_named_pair() {
        let f = gf(5);
        let x0 = Mat::from_i64(f, &[&[1, 2], &[3, 4]]).unwrap();
        let phi = right_mul(f, (2, 2), &x0);
        let varphi = right_mul(f, (3, 2), &x0);
        // corrupt one action entry of phi
        let mut action = phi.action().clone();
        let bumped = f.add(action.at(1, 1), &f.one());
        action.set(1, 1, bumped);
        let bad = BlockLinMap::from_action(f, (2, 2), (2, 2), action).unwrap();
        match solve_right_factor(&bad, &varphi) {
            Err(Error::HypothesisViolated { solver, .. }) => {
                assert_eq!(solver, "solve_right_factor");
            }
            other => panic!("expected hypothesis violation, got {other:?}"),
        }
    }

    #[test]
    fn shape_mismatches_are_rejected() {
        let f = gf(5);
        let x0 = Mat::from_i64(f, &[&[1, 2], &[3, 4]]).unwrap();
        let phi = right_mul(f, (2, 2), &x0);
        let wrong = right_mul(f, (3, 2), &Mat::from_i64(f, &[&[1], &[0]]).unwrap());
        assert!(matches!(
            solve_right_factor(&phi, &wrong),
            Err(Error::DimMismatch(_))
        ));
    }

    #[test]
    fn zero_maps_solve_trivially() {
        let f = gf(3);
        let phi = BlockLinMap::zero(f, (2, 2), (2, 3));
        let varphi = BlockLinMap::zero(f, (4, 2), (4, 3));
        let x = solve_right_factor(&phi, &varphi).unwrap();
        assert!(x.is_zero());
        assert_eq!((x.rows(), x.cols()), (2, 3));
    }
}
