//! Checks the braid-type presentation of G29 on the algorithm's generators
//! and certifies its order by coset enumeration.

use reflekt::catalog::GroupId;
use reflekt::group::ReflectionGroup;
use reflekt::lattices::build_root_system;
use reflekt::presentations::verify::verify_group;
use reflekt::weyl::{run_trials, WeylParams, WeylSetup};

fn main() {
    let id = GroupId::Exceptional(29);
    let setup = WeylSetup::new(ReflectionGroup::full(build_root_system(id).unwrap()).unwrap(), WeylParams::default());
    let report = run_trials(&setup, 100, 1).unwrap();
    let simple = report.representative().unwrap();
    let gens: Vec<_> = simple
        .roots
        .iter()
        .map(|&i| setup.group.perm(&setup.group.rs.generator(i)).unwrap())
        .collect();
    let v = verify_group(id, &gens, &setup.group.order(), 1_000_000).expect("a labeling");
    println!("{}", v.presentation);
    for r in &v.relations {
        println!("{:<24} {}", r.relation, r.holds);
    }
    let c = v.certification.as_ref().unwrap();
    for s in &c.steps {
        println!("[<{}> : <{}>] = {}", s.generators.join(","), s.subgroup.join(","), s.index);
    }
    println!("certified order {} = |G29| {}: {}", c.order, v.group_order, v.order_certified);
}
