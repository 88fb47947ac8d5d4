//! Where can a derivation send each block? Audit the brute-force generators
//! against the allowed-block rules.

use nilblock::endo::allowed_image_blocks;
use nilblock::{check_support_lemmas, derivation_space_bruteforce, Algebra, Field, Partition, Result};

fn main() -> Result<()> {
    let t = 5;

    println!("allowed image blocks for t = {t} sources, characteristic not 2:");
    for (i, j) in [(1, 2), (2, 3), (4, 5), (1, 3), (2, 4)] {
        println!("  ({i},{j}) -> {:?}", allowed_image_blocks(t, false, i, j));
    }
    println!();
    println!("characteristic 2 widens four of the rules:");
    for (i, j) in [(1, 2), (4, 5), (1, 3), (3, 5)] {
        let odd = allowed_image_blocks(t, false, i, j);
        let even = allowed_image_blocks(t, true, i, j);
        let extra: Vec<_> = even.iter().filter(|b| !odd.contains(b)).collect();
        println!("  ({i},{j}) gains {extra:?}");
    }
    println!();

    // Every generator of Der(N) respects the rules, for every basis image.
    for sizes in [vec![1, 1, 1, 1, 1], vec![2, 1, 2], vec![1, 3, 1, 1]] {
        let part = Partition::new(sizes)?;
        for ch in [2u64, 3, 0] {
            let field = if ch == 0 { Field::rationals() } else { Field::new(ch)? };
            let alg = Algebra::new(field, part.clone());
            let der = derivation_space_bruteforce(&alg);
            let report = check_support_lemmas(&alg, der.gens());
            let name = if ch == 0 { "Q".into() } else { format!("GF({ch})") };
            println!(
                "partition {part} over {name}: {} generators, {} images audited, violations: {}",
                der.dim(),
                report.checked_images,
                report.violations.len()
            );
            assert!(report.passed());
        }
    }
    Ok(())
}
