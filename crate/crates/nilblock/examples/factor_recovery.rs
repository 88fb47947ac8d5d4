//! The four matrix functional equations behind the decomposition, each solved
//! by probing on matrix units.
//!
//! A solver never trusts its input: it first checks the defining identity on
//! every pair of matrix units, and a single corrupted entry is rejected with
//! the pair that witnesses the failure.

use nilblock::{
    solve_balanced, solve_left_factor, solve_right_factor, solve_sandwich, BlockLinMap, Error,
    Field, Mat, Result,
};

fn main() -> Result<()> {
    let field = Field::new(7)?;

    // Hidden data the solvers must recover.
    let x = Mat::from_i64(field, &[&[1, 2, 3], &[0, 4, 5]])?; // 2 x 3

    // Right factor: phi(M) = M X and varphi(B) = B X satisfy phi(AB) = A varphi(B).
    let phi = BlockLinMap::from_fn(field, (3, 2), (3, 3), |m| m.mul(&x))?;
    let varphi = BlockLinMap::from_fn(field, (4, 2), (4, 3), |m| m.mul(&x))?;
    let rec = solve_right_factor(&phi, &varphi)?;
    println!("right factor recovered:\n{rec}");
    assert_eq!(rec, x);

    // Left factor: phi(M) = X M and varphi(B) = X B satisfy phi(BA) = varphi(B) A.
    let phi = BlockLinMap::from_fn(field, (3, 4), (2, 4), |m| x.mul(m))?;
    let varphi = BlockLinMap::from_fn(field, (3, 5), (2, 5), |m| x.mul(m))?;
    let rec = solve_left_factor(&phi, &varphi)?;
    println!("left factor recovered:\n{rec}");
    assert_eq!(rec, x);

    // Balanced: phi(A) = A X and varphi(B) = X B satisfy phi(A) B = A varphi(B).
    let phi = BlockLinMap::from_fn(field, (4, 2), (4, 3), |m| m.mul(&x))?;
    let varphi = BlockLinMap::from_fn(field, (3, 5), (2, 5), |m| x.mul(m))?;
    let rec = solve_balanced(&phi, &varphi)?;
    println!("balanced factor recovered:\n{rec}");
    assert_eq!(rec, x);

    // Sandwich: f(AB) = g(A) B + A h(B) forces f(C) = XC + CY, g(A) = XA + AZ,
    // h(B) = BY - ZB. The triple is only determined up to shifting X by a
    // scalar matrix, so the solver pins X[1,1] = 0.
    let x0 = Mat::from_i64(field, &[&[3, 1], &[0, 2]])?;
    let y0 = Mat::from_i64(field, &[&[1, 4, 0], &[2, 5, 1], &[0, 6, 2]])?;
    let z0 = Mat::from_i64(field, &[&[2, 1, 1], &[1, 0, 3], &[0, 0, 5]])?;
    let f = BlockLinMap::from_fn(field, (2, 3), (2, 3), |c| x0.mul(c)?.add(&c.mul(&y0)?))?;
    let g = BlockLinMap::from_fn(field, (2, 3), (2, 3), |a| x0.mul(a)?.add(&a.mul(&z0)?))?;
    let h = BlockLinMap::from_fn(field, (3, 3), (3, 3), |b| b.mul(&y0)?.sub(&z0.mul(b)?))?;
    let sol = solve_sandwich(&f, &g, &h)?;
    println!("sandwich solution with the gauge X[1,1] = 0:");
    println!("X =\n{}", sol.x);
    println!("Y =\n{}", sol.y);
    println!("Z =\n{}", sol.z);
    assert!(sol.x.at(1, 1).is_zero());
    // The witness triple reappears shifted by c = X0[1,1] along the identity.
    let c = x0.at(1, 1);
    assert_eq!(sol.x, x0.sub(&Mat::identity(field, 2).scale(c))?);
    assert_eq!(sol.y, y0.add(&Mat::identity(field, 3).scale(c))?);
    assert_eq!(sol.z, z0.add(&Mat::identity(field, 3).scale(c))?);

    // Corrupt one entry of one image and the hypothesis check catches it.
    let good = BlockLinMap::from_fn(field, (3, 2), (3, 3), |m| m.mul(&x))?;
    let mut action = good.action().clone();
    action.set(1, 1, field.add(action.at(1, 1), &field.one()));
    let broken = BlockLinMap::from_action(field, (3, 2), (3, 3), action)?;
    match solve_right_factor(&broken, &varphi_right(field, &x)?) {
        Err(Error::HypothesisViolated { solver, a0, a1, b0, b1 }) => {
            println!("corruption detected by {solver}: units E_{{{a0},{a1}}}, E_{{{b0},{b1}}}")
        }
        other => panic!("expected a hypothesis violation, got {other:?}"),
    }
    Ok(())
}

fn varphi_right(field: Field, x: &Mat) -> Result<BlockLinMap> {
    BlockLinMap::from_fn(field, (4, 2), (4, 3), |m| m.mul(x))
}
