//! One-stop verification of a presentation on concrete simple generators:
//! relations, mutation maps and order certification.

use num_bigint::BigUint;
use serde::Serialize;

use super::braid::{
    bar_presentation, checks, find_labeling, find_labeling_for, g12_presentation, g24_presentation, mutation_check,
    pair_matrix, BraidGroup, MutationReport, RelationCheck,
};
use super::coset::{certify_order_auto, Certification};
use super::Presentation;
use crate::catalog::GroupId;
use crate::group::{Perm, StabChain};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PresentationKind {
    /// `B̄_N = Cox.Rel(D_N) ∪ E_N` with involutive generators.
    Braid,
    /// Pairwise least relations plus reflection orders (Coxeter's diagrams).
    Diagram,
    /// A fixed presentation from the literature.
    Listed,
}

#[derive(Clone, Debug, Serialize)]
pub struct OpenRelation {
    pub relation: String,
    pub holds_in_group: bool,
    pub status: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub group: String,
    pub kind: PresentationKind,
    /// Position in the simple system of each presentation generator.
    pub labeling: Vec<usize>,
    pub presentation: String,
    pub relations: Vec<RelationCheck>,
    pub relations_hold: bool,
    pub generators_generate: bool,
    pub mutation: Option<MutationReport>,
    pub open_relations: Vec<OpenRelation>,
    pub group_order: String,
    pub certification: Option<Certification>,
    pub certification_error: Option<String>,
    pub order_certified: bool,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.relations_hold
            && self.generators_generate
            && self.order_certified
            && self.mutation.as_ref().is_none_or(|m| m.ok)
    }
}

/// Which presentation applies to `group`, if any.
pub fn presentation_kind(group: GroupId) -> Option<PresentationKind> {
    match group {
        GroupId::Exceptional(29 | 31 | 33 | 34) => Some(PresentationKind::Braid),
        GroupId::Exceptional(4 | 25 | 26 | 32) => Some(PresentationKind::Diagram),
        GroupId::Exceptional(12 | 24) => Some(PresentationKind::Listed),
        _ => None,
    }
}

/// Presentation with pairwise least relations and the generators' orders as torsion.
pub fn diagram_presentation(gens: &[Perm]) -> Presentation {
    let names = (1..=gens.len()).map(|i| format!("r{i}")).collect();
    let torsion = gens.iter().map(|g| g.order() as usize).collect();
    Presentation::coxeter(names, &pair_matrix(gens)).with_torsion(torsion)
}

/// Checks the group's presentation on the simple generators `gens` and
/// certifies the presented order by coset enumeration. `None` if no
/// presentation is configured for `group` or no labeling satisfies it.
pub fn verify_group(group: GroupId, gens: &[Perm], group_order: &BigUint, max_cosets: usize) -> Option<VerifyReport> {
    let kind = presentation_kind(group)?;
    let degree = gens.first()?.degree();
    let (labeling, pres, mutation) = match kind {
        PresentationKind::Braid => {
            let GroupId::Exceptional(n) = group else { return None };
            let b = BraidGroup::from_number(n)?;
            let labeling = find_labeling(b, gens)?;
            let a: Vec<Perm> = labeling.iter().map(|&i| gens[i].clone()).collect();
            let m = mutation_check(b, &a);
            (labeling, bar_presentation(b, &m.d_edges), Some(m))
        }
        PresentationKind::Diagram => ((0..gens.len()).collect(), diagram_presentation(gens), None),
        PresentationKind::Listed => {
            let pres = if group == GroupId::Exceptional(12) { g12_presentation() } else { g24_presentation() };
            (find_labeling_for(&pres, gens)?, pres, None)
        }
    };
    let labeled: Vec<Perm> = labeling.iter().map(|&i| gens[i].clone()).collect();
    let mut rels = pres.relations.clone();
    if let Some(t) = &pres.torsion {
        rels.extend(t.iter().enumerate().map(|(g, &n)| super::Relation::torsion(g, n)));
    }
    let relations = checks(&rels, &pres.names, &labeled);
    let relations_hold = relations.iter().all(|r| r.holds);
    let generators_generate = StabChain::new(degree, &labeled).order() == *group_order;
    let open_relations = mutation
        .as_ref()
        .map(|m| {
            m.open
                .iter()
                .map(|c| OpenRelation {
                    relation: c.relation.clone(),
                    holds_in_group: c.holds,
                    status: format!("holds in {group}: {}; abstract implication unknown", c.holds),
                })
                .collect()
        })
        .unwrap_or_default();
    let (certification, certification_error) = match certify_order_auto(&pres, max_cosets) {
        Ok(c) => (Some(c), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let order_certified = certification.as_ref().is_some_and(|c| c.order() == *group_order);
    Some(VerifyReport {
        group: group.to_string(),
        kind,
        labeling,
        presentation: pres.to_text(),
        relations,
        relations_hold,
        generators_generate,
        mutation,
        open_relations,
        group_order: group_order.to_string(),
        certification,
        certification_error,
        order_certified,
    })
}
