//! Tests the cyclic-relation lemmas in concrete groups and finite quotients.

use reflekt::catalog::GroupId;
use reflekt::group::ReflectionGroup;
use reflekt::lattices::build_root_system;
use reflekt::presentations::lemmas::{cyclicity_test, enumerate_elements, lemma44_affine, lemma44_exhaustive, Pattern};
use reflekt::weyl::{run_trials, WeylParams, WeylSetup};

fn main() {
    let setup = WeylSetup::new(
        ReflectionGroup::full(build_root_system(GroupId::Exceptional(4)).unwrap()).unwrap(),
        WeylParams::default(),
    );
    let report = run_trials(&setup, 20, 1).unwrap();
    let gens: Vec<_> = report
        .representative()
        .unwrap()
        .roots
        .iter()
        .map(|&i| setup.group.perm(&setup.group.rs.generator(i)).unwrap())
        .collect();
    let elements = enumerate_elements(&gens, 100).unwrap();
    println!("G4, pattern A over all pairs: {:?}", lemma44_exhaustive(&elements, Pattern::A));
    println!("affine permutations, pattern C: {:?}", lemma44_affine(1));
    for (n, m) in [(2, 4), (2, 6), (3, 9)] {
        println!("{:?}", cyclicity_test(n, m, 1_000_000).unwrap());
    }
}
