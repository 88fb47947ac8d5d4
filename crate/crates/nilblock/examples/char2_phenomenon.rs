//! A map that is a derivation in characteristic 2 and in no other
//! characteristic.
//!
//! On the partition (1,1,1,1) define f by
//!
//!   f(E12) = -E34,   f(E13) = E24,   f(everything else) = 0.
//!
//! Checked against [E12, E23] = E13 the product rule needs f(E13) = E24,
//! which holds. Checked against [E12, E13] = 0 it needs
//! [f(E12), E13] + [E12, f(E13)] = 0, and both brackets equal E14, leaving
//! the defect 2 E14. That defect vanishes exactly when 1 + 1 = 0.

use nilblock::{
    char2_showcase, decompose, derivation_space_bruteforce, psi_12_13_class_dim,
    psi_t1_t2_class_dim, Algebra, Field, Partition, Result,
};

fn main() -> Result<()> {
    let (alg2, f2) = char2_showcase(Field::new(2)?);
    println!("over GF(2): is_derivation = {}", f2.is_derivation(&alg2));
    let dec = decompose(&alg2, &f2)?;
    let psi = dec.psi_12_13.as_ref().expect("present in characteristic 2");
    println!(
        "decomposition: x = 0 is {}, psi_12_13 == f is {}, all other parts zero: {}",
        dec.x.is_zero(),
        *psi == f2,
        dec.varphi_1t.is_zero() && dec.phi_12_2t.is_zero() && dec.phi_t1t_1t1.is_zero()
    );
    println!();

    for ch in [3u64, 5, 0] {
        let field = if ch == 0 { Field::rationals() } else { Field::new(ch)? };
        let (alg, f) = char2_showcase(field);
        let d = f.derivation_defect(&alg).expect("fails outside char 2");
        let defect: Vec<String> = d.defect.iter().map(|s| s.to_string()).collect();
        let name = if ch == 0 { "Q".into() } else { format!("GF({ch})") };
        println!("over {name}: product rule fails at ({}, {}), defect {:?}", d.u, d.v, defect);
    }
    println!();

    // The same gap shows up in dimensions: Der(N) picks up one generator per
    // paired family, one at each end of the partition.
    let part = Partition::new(vec![1, 1, 1, 1])?;
    let dim2 = derivation_space_bruteforce(&Algebra::new(Field::new(2)?, part.clone())).dim();
    let dim3 = derivation_space_bruteforce(&Algebra::new(Field::new(3)?, part.clone())).dim();
    println!("partition {part}: dim Der = {dim2} over GF(2), {dim3} over GF(3)");
    println!(
        "gap {} = psi_12_13 family ({}) + psi_t1_t2 family ({})",
        dim2 - dim3,
        psi_12_13_class_dim(&part, true),
        psi_t1_t2_class_dim(&part, true)
    );
    Ok(())
}
