//! Split a derivation into an inner part plus explicit structural pieces,
//! then reassemble it exactly.
//!
//! The input here is built from three known ingredients: ad(x0) for a block
//! upper x0, a center-valued map on the adjacent blocks, and a corner map
//! from block (1,2) into block (2,t) that exists because the first part of
//! the partition is 1. `decompose` recovers each piece.

use nilblock::{ad, decompose, synthesize, Algebra, Endo, Field, Mat, Partition, Result};

fn main() -> Result<()> {
    let part = Partition::new(vec![1, 2, 2, 1])?;
    let field = Field::rationals();
    let alg = Algebra::new(field, part.clone());
    println!("partition {part}, dim N = {}", alg.dim());

    // Ingredient 1: an inner derivation. The canonical x is supported on the
    // diagonal blocks and the block pairs in omega(t): ad is blind to the
    // center block (1,t), and blocks (1,t-1) and (2,t) act exactly like
    // center-valued maps, so they belong to varphi_1t instead of x.
    let x0 = Mat::from_i64(
        field,
        &[
            &[3, 1, 2, 0, 0, 0],
            &[0, 1, 4, 2, 0, 0],
            &[0, 2, 1, 0, 5, 0],
            &[0, 0, 0, 2, 1, 3],
            &[0, 0, 0, 6, 2, 1],
            &[0, 0, 0, 0, 0, 5],
        ],
    )?;
    let inner = ad(&alg, &x0)?;

    // Ingredient 2: a map killing [N, N] and landing in the center. Any such
    // map is a derivation.
    let t = part.t();
    let varphi = Endo::from_basis_images(&alg, |id| {
        let mut img = Mat::zero(field, part.n(), part.n());
        if (id.i, id.j, id.p, id.q) == (1, 2, 1, 1) {
            img = alg.standard_elem(1, t, 1, 1)?.scale(&field.from_i64(2));
        }
        if (id.i, id.j, id.p, id.q) == (2, 3, 2, 1) {
            img = alg.standard_elem(1, t, 1, 1)?.scale(&field.from_i64(-3));
        }
        Ok(img)
    })?;

    // Ingredient 3: the corner map E[1,2;1,i] -> sum_j c[i][j] E[2,t;j,1]
    // with a symmetric coefficient matrix c.
    let c = [[1i64, 4], [4, 0]];
    let corner = Endo::from_basis_images(&alg, |id| {
        let mut img = Mat::zero(field, part.n(), part.n());
        if (id.i, id.j) == (1, 2) {
            for j in 1..=part.size(2) {
                let unit = alg.standard_elem(2, t, j, 1)?;
                img = img.add(&unit.scale(&field.from_i64(c[id.q - 1][j - 1])))?;
            }
        }
        Ok(img)
    })?;

    let f = inner.add(&varphi)?.add(&corner)?;
    assert!(f.is_derivation(&alg));
    println!("input f = ad(x0) + center-valued map + corner map");
    println!();

    let dec = decompose(&alg, &f)?;
    println!("recovered inner matrix x (gauge: x[1,1] = 0):\n{}", dec.x);
    assert!(dec.x.at(1, 1).is_zero());
    // ad(x) is blind to scalar matrices, so x comes back shifted to the gauge.
    let shift = Mat::identity(field, part.n()).scale(x0.at(1, 1));
    assert_eq!(dec.x, x0.sub(&shift)?);

    println!("component            nonzero  derivation");
    for (name, e) in [
        ("varphi_1t", &dec.varphi_1t),
        ("phi_12_2t", &dec.phi_12_2t),
        ("phi_t1t_1t1", &dec.phi_t1t_1t1),
    ] {
        println!(
            "  {name:<18} {:<8} {}",
            !e.is_zero(),
            e.is_derivation(&alg)
        );
    }
    assert!(dec.psi_12_13.is_none() && dec.psi_t1_t2.is_none());
    println!("  psi components     absent outside characteristic 2");
    println!();

    // The pieces really are the ingredients.
    assert_eq!(dec.varphi_1t, varphi);
    assert_eq!(dec.phi_12_2t, corner);
    assert!(dec.phi_t1t_1t1.is_zero());

    // And the sum puts f back together with no residue.
    let back = synthesize(&alg, &dec)?;
    assert_eq!(back, f);
    println!("synthesize(decompose(f)) == f holds exactly");
    Ok(())
}
