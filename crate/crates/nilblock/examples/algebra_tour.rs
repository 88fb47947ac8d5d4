//! Tour of the nilpotent algebra N for one partition: basis layout, bracket,
//! derived subalgebra, center.

use nilblock::algebra::bracket;
use nilblock::{Algebra, Field, Mat, Partition, Result};

fn main() -> Result<()> {
    let part = Partition::new(vec![2, 1, 2])?;
    let alg = Algebra::new(Field::new(3)?, part.clone());

    println!("partition {part} of n = {}", part.n());
    println!("dim N = {}  (sum of n_i * n_j over i < j)", alg.dim());
    println!();

    println!("basis, ordered by block (i,j) then row-major within the block:");
    for (k, id) in alg.basis().iter().enumerate() {
        println!("  {k:2}  {id}");
    }
    println!();

    // The bracket of two basis units is 0 or a single signed unit.
    let u = alg.standard_elem(1, 2, 1, 1)?;
    let v = alg.standard_elem(2, 3, 1, 2)?;
    println!("[E[1,2;1,1], E[2,3;1,2]] =\n{}", bracket(&u, &v)?);
    println!("[E[2,3;1,2], E[1,2;1,1]] =\n{}", bracket(&v, &u)?);
    println!();

    // Structure constants agree with the matrix product.
    let a = alg.basis_position(1, 2, 1, 1)?;
    let b = alg.basis_position(2, 3, 1, 2)?;
    match alg.bracket_coords(a, b) {
        Some((k, sign)) => println!(
            "table says [basis {a}, basis {b}] = {}{}",
            if sign < 0 { "-" } else { "" },
            alg.basis_id(k)
        ),
        None => println!("table says the bracket vanishes"),
    }
    println!();

    println!("derived subalgebra [N, N] is spanned by the blocks with j > i + 1:");
    for k in alg.derived_basis() {
        println!("  {}", alg.basis_id(k));
    }
    let brute = alg.derived_span_bruteforce();
    println!("(matches the span of all brackets: rank {})", brute.rank());
    println!();

    let center = alg.center_basis();
    println!("center Z(N) is the corner block (1,t):");
    for &k in &center.positions {
        println!("  {}", alg.basis_id(k));
    }

    // Any strictly block upper triangular matrix round-trips through
    // coordinates.
    let mut x = Mat::zero(alg.field(), part.n(), part.n());
    x.set(1, 3, alg.field().from_i64(2));
    x.set(2, 5, alg.field().one());
    let coords = alg.to_coords(&x)?;
    assert_eq!(alg.from_coords(&coords)?, x);
    println!("\ncoordinate roundtrip ok for\n{x}");
    Ok(())
}
