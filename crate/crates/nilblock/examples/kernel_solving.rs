//! Row reduction, rank, nullspace, and linear solving over exact fields.
//!
//! The same integer matrix can behave very differently over Q and over
//! GF(p): here det = 5, so the matrix is invertible over Q but singular
//! mod 5.

use nilblock::{Field, Mat, Result};

fn label(field: Field) -> String {
    match field.characteristic() {
        0 => "Q".into(),
        p => format!("GF({p})"),
    }
}

fn demo(field: Field) -> Result<()> {
    let m = Mat::from_i64(field, &[&[1, 2], &[3, 11]])?;
    println!("over {}:", label(field));
    println!("{m}");
    println!("  rank = {}", m.rank());

    let kernel = m.nullspace();
    if kernel.is_empty() {
        println!("  nullspace = 0");
    } else {
        for v in &kernel {
            println!("  kernel vector: {}", v.transpose());
        }
    }

    let b = Mat::from_i64(field, &[&[1], &[3]])?;
    match m.solve(&b)? {
        Some(x) => println!("  solve(m, [1,3]) = {}", x.transpose()),
        None => println!("  solve(m, [1,3]) has no solution"),
    }
    println!();
    Ok(())
}

fn main() -> Result<()> {
    demo(Field::rationals())?;
    demo(Field::new(5)?)?;

    // RREF exposes the pivot columns directly.
    let wide = Mat::from_i64(Field::new(3)?, &[&[1, 2, 0, 1], &[2, 1, 1, 0]])?;
    let (r, pivots) = wide.rref();
    println!("RREF of a 2x4 matrix over GF(3):");
    println!("{r}");
    println!("pivot columns: {pivots:?}");
    Ok(())
}
