//! The new diagrams `D_N` for `N ∈ {29, 31, 33, 34}`: extra relation sets
//! `E_N`, `E′_N`, the mutation maps `φ_N`, `ψ_N`, and their verification in
//! the finite groups `G_N`. Also the recorded presentations for `G12`, `G24`.

use itertools::Itertools;
use serde::Serialize;

use super::{least_p, pair_relation, Presentation, Relation, Word};
use crate::group::Perm;

/// Pairwise relations searched up to this `m`.
pub const PAIR_CAP: usize = 30;

/// Braid-type groups with relation data.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BraidGroup {
    G29,
    G31,
    G33,
    G34,
}

impl BraidGroup {
    pub fn from_number(n: u32) -> Option<Self> {
        match n {
            29 => Some(BraidGroup::G29),
            31 => Some(BraidGroup::G31),
            33 => Some(BraidGroup::G33),
            34 => Some(BraidGroup::G34),
            _ => None,
        }
    }

    pub fn number(self) -> u32 {
        match self {
            BraidGroup::G29 => 29,
            BraidGroup::G31 => 31,
            BraidGroup::G33 => 33,
            BraidGroup::G34 => 34,
        }
    }

    /// Number of generators `a_i`.
    pub fn rank(self) -> usize {
        match self {
            BraidGroup::G29 => 4,
            BraidGroup::G31 | BraidGroup::G33 => 5,
            BraidGroup::G34 => 6,
        }
    }

    pub fn names(self) -> Vec<String> {
        (1..=self.rank()).map(|i| format!("a{i}")).collect()
    }

    /// Generator names of `B′_N`, in the order the maps are listed.
    pub fn prime_names(self) -> Vec<String> {
        let n: &[&str] = match self {
            BraidGroup::G29 => &["s", "t", "v", "u"],
            BraidGroup::G31 => &["s", "t", "u", "w", "v"],
            BraidGroup::G33 => &["s", "t", "u", "v", "w"],
            BraidGroup::G34 => &["s", "t", "u", "v", "w", "x"],
        };
        n.iter().map(|s| s.to_string()).collect()
    }

    /// `E_N` over `a_1..a_k` (0-based indices).
    pub fn e_relations(self) -> Vec<Relation> {
        let p = |m: usize, g: &[usize]| Relation::p(m, &g.iter().map(|i| i - 1).collect::<Vec<_>>());
        match self {
            BraidGroup::G34 => vec![
                p(4, &[2, 3, 4]),
                p(4, &[3, 4, 5]),
                p(9, &[3, 2, 1, 5]),
                p(4, &[2, 1, 6]),
                p(4, &[2, 3, 6]),
                p(9, &[1, 5, 3, 6]),
            ],
            BraidGroup::G33 => BraidGroup::G34
                .e_relations()
                .into_iter()
                .filter(|r| r.generators().iter().all(|&g| g < 5))
                .collect(),
            BraidGroup::G29 => vec![p(4, &[4, 2, 1]), p(4, &[3, 1, 4]), p(6, &[3, 1, 2])],
            BraidGroup::G31 => vec![
                p(4, &[4, 2, 1]),
                p(6, &[2, 3, 4]),
                p(3, &[3, 5, 4]),
                p(3, &[5, 4, 3]),
                p(4, &[1, 5, 2]),
                p(4, &[3, 1, 4]),
                p(4, &[4, 2, 5]),
            ],
        }
    }

    /// `E′_N` over the primed generators, indexed as in [`Self::prime_names`].
    pub fn e_prime_relations(self) -> Vec<Relation> {
        let names = self.prime_names();
        let ix = |s: &str| names.iter().position(|n| n == s).unwrap();
        let p = |m: usize, g: &[&str]| Relation::p(m, &g.iter().map(|s| ix(s)).collect::<Vec<_>>());
        match self {
            BraidGroup::G34 | BraidGroup::G33 => vec![p(6, &["t", "u", "w"])],
            BraidGroup::G29 => vec![p(6, &["u", "t", "v"])],
            BraidGroup::G31 => vec![p(3, &["s", "u", "w"]), p(3, &["u", "w", "s"])],
        }
    }

    /// `φ_N`: images of the primed generators as words in the `a_i`.
    pub fn phi(self) -> Vec<Word> {
        let a = |i: usize| Word::gen(i - 1);
        let prod = |v: &[usize]| Word::positive(&v.iter().map(|i| i - 1).collect::<Vec<_>>());
        match self {
            BraidGroup::G29 => vec![
                Word::conj(&prod(&[2, 3, 1]).inverse(), &a(4)),
                a(1),
                a(2),
                a(3),
            ],
            BraidGroup::G31 => vec![
                a(5),
                a(1),
                a(3),
                Word::conj(&a(3).inverse(), &a(4)),
                Word::conj(&a(4), &a(2)),
            ],
            BraidGroup::G33 => BraidGroup::G34.phi().into_iter().take(5).collect(),
            BraidGroup::G34 => vec![
                a(1),
                a(2),
                a(3),
                Word::conj(&a(3), &a(4)),
                Word::conj(&prod(&[2, 1]), &a(5)),
                Word::conj(&prod(&[4, 2, 1, 5, 3]), &a(6)),
            ],
        }
    }

    /// `ψ_N`: images of `a_1..a_k` as words in the primed generators.
    pub fn psi(self) -> Vec<Word> {
        let names = self.prime_names();
        let g = |s: &str| Word::gen(names.iter().position(|n| n == s).unwrap());
        let prod = |v: &[&str]| {
            v.iter()
                .map(|s| g(s))
                .fold(Word::identity(), |acc, w| acc.mul(&w))
        };
        match self {
            BraidGroup::G29 => vec![g("t"), g("v"), g("u"), Word::conj(&prod(&["v", "u", "t"]), &g("s"))],
            BraidGroup::G31 => {
                // listed in the order (a5, a1, a3, a4, a2)
                let a5 = g("s");
                let a1 = g("t");
                let a3 = g("u");
                let a4 = Word::conj(&g("u"), &g("w"));
                let a2 = Word::conj(&prod(&["u"]).mul(&g("w").inverse()).mul(&g("u").inverse()), &g("v"));
                vec![a1, a2, a3, a4, a5]
            }
            BraidGroup::G33 => {
                let mut v = BraidGroup::G34.psi_with(&names);
                v.truncate(5);
                v
            }
            BraidGroup::G34 => self.psi_with(&names),
        }
    }

    fn psi_with(self, names: &[String]) -> Vec<Word> {
        let g = |s: &str| Word::gen(names.iter().position(|n| n == s).unwrap_or(usize::MAX));
        let prod = |v: &[&str]| v.iter().map(|s| g(s)).fold(Word::identity(), |acc, w| acc.mul(&w));
        let mut out = vec![
            g("s"),
            g("t"),
            g("u"),
            Word::conj(&g("u").inverse(), &g("v")),
            Word::conj(&prod(&["t", "s"]).inverse(), &g("w")),
        ];
        if names.iter().any(|n| n == "x") {
            out.push(Word::conj(&prod(&["v", "u", "w", "t", "s", "u"]).inverse(), &g("x")));
        }
        out
    }

    /// Consequences recorded in the appendix, over the `a_i`.
    pub fn consequences(self) -> Vec<Relation> {
        let p = |m: usize, g: &[usize]| Relation::p(m, &g.iter().map(|i| i - 1).collect::<Vec<_>>());
        match self {
            BraidGroup::G33 | BraidGroup::G34 => vec![p(9, &[4, 2, 1, 5])],
            BraidGroup::G29 => vec![p(6, &[2, 3, 4])],
            BraidGroup::G31 => vec![],
        }
    }

    /// Pairs of `a_i` joined by an `∞` edge in `D_N`: their `P(4; ·,·)`
    /// holds in `G31` but is not known to follow from `R_31`.
    pub fn open_pairs(self) -> Vec<(usize, usize)> {
        match self {
            BraidGroup::G31 => vec![(1, 2), (1, 4), (2, 5), (3, 4), (3, 5), (4, 5)]
                .into_iter()
                .map(|(a, b)| (a - 1, b - 1))
                .collect(),
            _ => vec![],
        }
    }

    /// The `∞` edges of `D′_N`, as indices into [`Self::prime_names`].
    pub fn open_prime_pairs(self) -> Vec<(usize, usize)> {
        let names = self.prime_names();
        let ix = |s: &str| names.iter().position(|n| n == s).unwrap();
        match self {
            BraidGroup::G31 => vec![(ix("s"), ix("u")), (ix("u"), ix("w")), (ix("s"), ix("w"))],
            _ => vec![],
        }
    }
}

/// Edge matrix of least pairwise relations `P(m; x_i, x_j)`.
pub fn pair_matrix(gens: &[Perm]) -> Vec<Vec<Option<usize>>> {
    let k = gens.len();
    let mut m = vec![vec![None; k]; k];
    for i in 0..k {
        for j in i + 1..k {
            let v = pair_relation(&gens[i], &gens[j], PAIR_CAP);
            m[i][j] = v;
            m[j][i] = v;
        }
    }
    m
}

/// Drops the `∞` pairs from an edge matrix.
pub fn without_pairs(m: &[Vec<Option<usize>>], open: &[(usize, usize)]) -> Vec<Vec<Option<usize>>> {
    let mut out = m.to_vec();
    for &(i, j) in open {
        out[i][j] = None;
        out[j][i] = None;
    }
    out
}

/// Edges of `D_N` read off from labeled generators in `G_N`.
pub fn d_edges(n: BraidGroup, a: &[Perm]) -> Vec<Vec<Option<usize>>> {
    without_pairs(&pair_matrix(a), &n.open_pairs())
}

/// `B̄_N`: `Cox.Rel(D_N) ∪ E_N` with every generator of order 2.
pub fn bar_presentation(n: BraidGroup, edges: &[Vec<Option<usize>>]) -> Presentation {
    Presentation::coxeter(n.names(), edges)
        .with_relations(n.e_relations())
        .with_torsion(vec![2; n.rank()])
}

/// Least permutation `π` (lexicographically) such that `a_i = gens[π(i)]`
/// satisfies `E_N`.
pub fn find_labeling(n: BraidGroup, gens: &[Perm]) -> Option<Vec<usize>> {
    let rels = n.e_relations();
    (0..gens.len()).permutations(n.rank()).find(|pi| {
        let a: Vec<Perm> = pi.iter().map(|&i| gens[i].clone()).collect();
        rels.iter().all(|r| r.holds(&a))
    })
}

/// Labeling for a presentation given as relations only (G12, G24).
pub fn find_labeling_for(pres: &Presentation, gens: &[Perm]) -> Option<Vec<usize>> {
    (0..gens.len()).permutations(pres.num_gens()).find(|pi| {
        let a: Vec<Perm> = pi.iter().map(|&i| gens[i].clone()).collect();
        pres.failures(&a).is_empty()
    })
}

/// The presentation of `Braid(G12)` on the algorithm's generators `s, t, v`.
pub fn g12_presentation() -> Presentation {
    "gens 3\nnames s t v\nrel W : 1 2 1 3 = 2 1 3 2\nrel W : 2 1 3 1 = 3 2 1 3\ntorsion 2 2 2\n"
        .parse()
        .expect("valid presentation")
}

/// The presentation of `Braid(G24)` on the algorithm's generators `s, t, u`.
pub fn g24_presentation() -> Presentation {
    "gens 3\nnames s t u\nrel P 3 : 1 2\nrel P 4 : 1 3\nrel P 4 : 3 2\n\
     rel W : 1 3 2 1 3 2 1 = 3 1 3 2 1 3 2\ntorsion 2 2 2\n"
        .parse()
        .expect("valid presentation")
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub relation: String,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct MinimalityCheck {
    pub relation: String,
    /// Least `m` for which `P(m; cycle)` holds in the group.
    pub least_m: Option<usize>,
    pub minimal: bool,
}

/// Everything checked about `R_N`, `R′_N` and `φ_N`, `ψ_N` in `G_N`.
#[derive(Clone, Debug, Serialize)]
pub struct MutationReport {
    pub group: String,
    /// Edges of `D_N`: least pairwise relations among the `a_i`, `None` for `∞`.
    pub d_edges: Vec<Vec<Option<usize>>>,
    /// Edges of `D′_N` on the images `φ_N(s), φ_N(t), …`.
    pub d_prime_edges: Vec<Vec<Option<usize>>>,
    pub r_n: Vec<RelationCheck>,
    pub r_prime_images: Vec<RelationCheck>,
    pub r_n_images: Vec<RelationCheck>,
    /// `φ_N(ψ_N(a_i)) = a_i` for each `i`.
    pub phi_psi_identity: Vec<bool>,
    /// `ψ_N(φ_N(x)) = x` for each primed generator.
    pub psi_phi_identity: Vec<bool>,
    pub minimality: Vec<MinimalityCheck>,
    pub consequences: Vec<RelationCheck>,
    /// Relations that hold in `G_N` but are not known to follow from `R_N`.
    pub open: Vec<RelationCheck>,
    pub ok: bool,
}

pub(crate) fn checks(rels: &[Relation], names: &[String], gens: &[Perm]) -> Vec<RelationCheck> {
    rels.iter()
        .map(|r| RelationCheck {
            relation: r.display(names),
            holds: r.holds(gens),
        })
        .collect()
}

fn eval_all(words: &[Word], gens: &[Perm]) -> Vec<Perm> {
    words.iter().map(|w| w.eval(gens)).collect()
}

/// Runs every check on labeled generators `a` (already satisfying `E_N`).
pub fn mutation_check(n: BraidGroup, a: &[Perm]) -> MutationReport {
    let names = n.names();
    let pnames = n.prime_names();
    let d = d_edges(n, a);
    let r_n = bar_presentation(n, &d);
    let r_n_checks = checks(&r_n.relations, &names, a);

    let primes = eval_all(&n.phi(), a);
    let dp = without_pairs(&pair_matrix(&primes), &n.open_prime_pairs());
    let r_prime = Presentation::coxeter(pnames.clone(), &dp).with_relations(n.e_prime_relations());
    let r_prime_images = checks(&r_prime.relations, &pnames, &primes);

    let back = eval_all(&n.psi(), &primes);
    let r_n_images = checks(&r_n.relations, &names, &back);
    let phi_psi_identity: Vec<bool> = back.iter().zip(a).map(|(x, y)| x == y).collect();

    let psi_of_phi: Vec<Word> = n.phi().iter().map(|w| w.substitute(&n.psi())).collect();
    let psi_phi_identity: Vec<bool> = eval_all(&psi_of_phi, &primes)
        .iter()
        .zip(&primes)
        .map(|(x, y)| x == y)
        .collect();

    let minimality = n
        .e_relations()
        .iter()
        .map(|r| {
            let tag = r.tag.as_ref().expect("E_N relations are tagged");
            let cyc: Vec<Perm> = tag.gens.iter().map(|&g| a[g].clone()).collect();
            let least = least_p(&cyc, tag.m);
            MinimalityCheck {
                relation: r.display(&names),
                least_m: least,
                minimal: least == Some(tag.m),
            }
        })
        .collect();
    let consequences = checks(&n.consequences(), &names, a);
    let open_rels: Vec<Relation> = n.open_pairs().iter().map(|&(x, y)| Relation::p(4, &[x, y])).collect();
    let open = checks(&open_rels, &names, a);
    let ok = r_n_checks.iter().all(|c| c.holds)
        && r_prime_images.iter().all(|c| c.holds)
        && r_n_images.iter().all(|c| c.holds)
        && phi_psi_identity.iter().all(|&b| b)
        && psi_phi_identity.iter().all(|&b| b)
        && consequences.iter().all(|c| c.holds);
    MutationReport {
        group: format!("G{}", n.number()),
        d_edges: d,
        d_prime_edges: dp,
        r_n: r_n_checks,
        r_prime_images,
        r_n_images,
        phi_psi_identity,
        psi_phi_identity,
        minimality,
        consequences,
        open,
        ok,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e33_is_e34_without_a6() {
        assert_eq!(BraidGroup::G33.e_relations().len(), 3);
        assert_eq!(BraidGroup::G34.e_relations().len(), 6);
        assert_eq!(BraidGroup::G31.e_relations().len(), 7);
    }

    #[test]
    fn maps_compose_to_identity_as_words_where_free() {
        // φ₃₁∘ψ₃₁ and φ₂₉∘ψ₂₉ reduce to the identity in the free group
        for n in [BraidGroup::G29, BraidGroup::G31] {
            let phi = n.phi();
            for (i, w) in n.psi().iter().enumerate() {
                assert_eq!(w.substitute(&phi), Word::gen(i), "{n:?} a{}", i + 1);
            }
        }
    }

    #[test]
    fn recorded_presentations_parse() {
        assert_eq!(g12_presentation().relations.len(), 2);
        assert_eq!(g24_presentation().relations.len(), 4);
    }
}
