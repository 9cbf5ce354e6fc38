//! Builds the root systems of a few groups and prints their sizes.

use reflekt::catalog::GroupId;
use reflekt::group::ReflectionGroup;
use reflekt::lattices::build_root_system;

fn main() {
    for name in ["g4", "g5", "g25", "g26", "g29", "g31", "g32", "g12", "g24"] {
        let id: GroupId = name.parse().unwrap();
        let rs = build_root_system(id).unwrap();
        let n = rs.projective.len();
        let roots = rs.roots.len();
        let group = ReflectionGroup::full(rs).unwrap();
        println!("{id:>4}: {n:>3} projective roots, {roots:>4} roots, |G| = {}", group.order());
    }
}
