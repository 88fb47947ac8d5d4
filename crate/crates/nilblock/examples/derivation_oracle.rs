//! Der(N) by brute force: set up the product-rule constraints on a general
//! endomorphism of N and read the derivation algebra off the nullspace.

use nilblock::{ad, derivation_space_bruteforce, Algebra, Endo, Field, Mat, Partition, Result};

fn main() -> Result<()> {
    // The Heisenberg case: partition (1,1,1), dim N = 3.
    let part = Partition::new(vec![1, 1, 1])?;
    for ch in [2u64, 5, 0] {
        let field = if ch == 0 { Field::rationals() } else { Field::new(ch)? };
        let alg = Algebra::new(field, part.clone());
        let der = derivation_space_bruteforce(&alg);
        let name = if ch == 0 { "Q".into() } else { format!("GF({ch})") };
        println!("{name}: dim Der(N) = {} for partition {part}", der.dim());
        for g in der.gens() {
            assert!(g.is_derivation(&alg));
        }
    }
    println!("every generator satisfies f([u,v]) = [f(u),v] + [u,f(v)]");
    println!();

    // Inner derivations ad(x) for x in the block upper triangular normalizer
    // always land in the space.
    let alg = Algebra::new(Field::new(5)?, part.clone());
    let der = derivation_space_bruteforce(&alg);
    let x = Mat::from_i64(alg.field(), &[&[2, 1, 0], &[0, 4, 3], &[0, 0, 1]])?;
    let inner = ad(&alg, &x)?;
    println!("ad of a block upper matrix lies in Der(N): {}", der.contains(&alg, &inner));

    // The grading map (scale block (i,j) by j - i) is a derivation that is
    // not inner.
    let grading = Endo::from_basis_images(&alg, |id| {
        let k = alg.field().from_i64((id.j - id.i) as i64);
        Ok(alg.standard_elem(id.i, id.j, id.p, id.q)?.scale(&k))
    })?;
    println!("the grading map is a derivation:              {}", der.contains(&alg, &grading));

    // The identity is not one; the checker names the offending pair and the
    // defect.
    let ident = Endo::from_basis_images(&alg, |id| alg.standard_elem(id.i, id.j, id.p, id.q))?;
    match ident.derivation_defect(&alg) {
        Some(d) => {
            println!("the identity map is not: the product rule fails at u = {}, v = {}", d.u, d.v);
            println!("defect f([u,v]) - [f(u),v] - [u,f(v)] has coordinates {:?}",
                d.defect.iter().map(|s| s.to_string()).collect::<Vec<_>>());
        }
        None => unreachable!(),
    }
    Ok(())
}
