//! Builds the affine diagram of G34 and checks the affine identities on a
//! small word ball.

use reflekt::affine::{build_affine_diagram, verify_affine_generation, verify_identities, AffineSetup};
use reflekt::catalog::GroupId;
use reflekt::group::ReflectionGroup;
use reflekt::weyl::{run_trials, WeylParams, WeylSetup};

fn main() {
    let id = GroupId::Exceptional(34);
    let setup = AffineSetup::new(id).unwrap();
    let weyl = WeylSetup::new(ReflectionGroup::full(setup.rs.clone()).unwrap(), WeylParams::default());
    let report = run_trials(&weyl, 30, 1).unwrap();
    let simple = report.representative().unwrap();
    let diag = build_affine_diagram(&setup, &simple.roots).unwrap();
    println!("numbering ({}), balanced {}", diag.numbering.join(", "), diag.balanced);
    println!("automorphism orders {:?}", diag.automorphism_orders);
    print!("{}", diag.dot);
    let g = verify_affine_generation(&setup, &diag).unwrap();
    println!("orbit {} spans with index {}: {}", g.orbit_size, g.span_index, g.ok());
    let ids = verify_identities(&setup, &diag, 3).unwrap();
    println!("{ids:?}");
}
