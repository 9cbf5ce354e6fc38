//! Finds a Coxeter element among products of the simple generators of G33.

use reflekt::catalog::GroupId;
use reflekt::group::{coxeter_element_check, ReflectionGroup};
use reflekt::lattices::build_root_system;
use reflekt::weyl::{run_trials, WeylParams, WeylSetup};

fn main() {
    let id = GroupId::Exceptional(33);
    let setup = WeylSetup::new(ReflectionGroup::full(build_root_system(id).unwrap()).unwrap(), WeylParams::default());
    let report = run_trials(&setup, 200, 1).unwrap();
    let simple = report.representative().unwrap();
    let mats: Vec<_> = simple.roots.iter().map(|&i| setup.group.rs.generator(i)).collect();
    let degrees = setup.group.rs.config.degrees.clone().unwrap();
    let c = coxeter_element_check(&mats, &degrees, 1000).unwrap();
    println!("degrees {degrees:?}");
    println!("ordering {:?} has order {}", c.permutation, c.order);
    println!("phases   {:?}", c.phases);
    println!("expected {:?}", c.expected);
    println!("match: {}", c.ok());
}
