//! Runs the Weyl-vector iteration on G32 and prints the simple system found.

use reflekt::catalog::GroupId;
use reflekt::group::ReflectionGroup;
use reflekt::lattices::build_root_system;
use reflekt::weyl::{run_trials, WeylParams, WeylSetup};

fn main() {
    let rs = build_root_system(GroupId::Exceptional(32)).unwrap();
    let setup = WeylSetup::new(ReflectionGroup::full(rs).unwrap(), WeylParams::default());
    let report = run_trials(&setup, 100, 1).unwrap();
    println!("{}", report.summary_line());
    let simple = report.representative().expect("an independent simple system");
    for (text, d) in simple.texts.iter().zip(&simple.distances) {
        println!("  ({text})  distance {d:.9}");
    }
    print!("{}", simple.diagram().to_dot("G32"));
}
