//! Enumerates Eisenstein root diagrams up to rank 5 and reduces the circuits.

use reflekt::diagrams::{circ_reduce, classify_eisenstein, CircReduction};
use reflekt::rings::{units, RingId};

fn main() {
    let report = classify_eisenstein(5);
    for c in &report.classes {
        println!("{}: {} representatives", c.name, c.count_of_representatives_seen);
    }
    println!("diagrams per rank {:?}, rejected {:?}", report.diagrams_per_rank, report.rejected);
    for (d, n) in &report.affine {
        let n: Vec<String> = n.iter().map(|x| x.to_string()).collect();
        println!("affine rank {}: numbering ({})", d.size(), n.join(", "));
    }
    for k in 3..=5 {
        for u in units(RingId::Eisenstein) {
            let verdict = match circ_reduce(k, u).unwrap() {
                CircReduction::Definite { .. } => "reduces to a path",
                CircReduction::Indefinite { .. } => "indefinite",
            };
            println!("Circ({k}, {u}): {verdict}");
        }
    }
}
