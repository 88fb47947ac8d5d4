//! Exact scalar arithmetic in GF(p) and in the rationals.
//!
//! Every scalar is tied to its field, so mixing fields is impossible and
//! nothing ever rounds.

use nilblock::{Field, Result};

fn main() -> Result<()> {
    let f7 = Field::new(7)?;
    let a = f7.from_i64(5);
    let b = f7.from_i64(4);
    println!("GF(7):  5 + 4 = {}", f7.add(&a, &b));
    println!("GF(7):  5 * 4 = {}", f7.mul(&a, &b));
    println!("GF(7):  5^-1  = {}", f7.inv(&a)?);
    println!("GF(7):  5 / 4 = {}", f7.div(&a, &b)?);
    println!("GF(7):  5^100 = {}  (Fermat: 5^6 = 1)", f7.pow(&a, 100));

    // Negative inputs normalize into [0, p).
    println!("GF(7):  -3    = {}", f7.from_i64(-3));

    let f2 = Field::new(2)?;
    let one = f2.one();
    println!("GF(2):  1 + 1 = {}", f2.add(&one, &one));

    let q = Field::rationals();
    let x = q.parse("2/3")?;
    let y = q.parse("-5/7")?;
    println!("Q:      2/3 + -5/7 = {}", q.add(&x, &y));
    println!("Q:      2/3 * -5/7 = {}", q.mul(&x, &y));
    println!("Q:      (2/3)^-1   = {}", q.inv(&x)?);

    // Parsing understands fractions mod p too: 1/2 = 4 in GF(7).
    println!("GF(7):  parse(\"1/2\") = {}", f7.parse("1/2")?);

    // Field::new rejects composite characteristics.
    match Field::new(6) {
        Err(e) => println!("Field::new(6) rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
