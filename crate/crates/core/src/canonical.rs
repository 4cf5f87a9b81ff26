//! The canonical automorphism group `B` contained in every `Aut(Cay(R, S))`.
//!
//! * Generic `R`: `B = R ⋊ ⟨ι⟩`, of order `2n`.
//! * `R ≅ Q8 × C2^ℓ`: `B = ⟨R, α_i, α_j, α_k⟩`, of order `8n`.
//!
//! For the second case the quaternion labels are read off the dicyclic
//! coordinates through the fixed isomorphism `i ↦ (g₄, 0)`, `j ↦ (1, 1)`,
//! `k ↦ i·j`, `−1 ↦ y`, where `g₄` is an element of order 4 of `A`. Then
//! `M = ⟨−1⟩ × E` is `A₂ = {a : a² = 1}` and the three involutions become
//!
//! ```text
//! α_i : (a, 0) ↔ (a·y, 0)   for a ∉ A₂   (the ±i·e)
//! α_j : (a, 1) ↔ (a·y, 1)   for a ∈ A₂   (the ±j·e)
//! α_k : (a, 1) ↔ (a·y, 1)   for a ∉ A₂   (the ±k·e)
//! ```
//!
//! each fixing every other element. In particular `ι = α_j α_k`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use rand_core::SeedableRng;
use rand_xoshiro::SplitMix64;
use serde::Serialize;

use crate::cayley::count_inverse_closed;
use crate::dicyclic::{DicyclicElement, DicyclicGroup};
use crate::perm::{is_subgroup, PermGroup, Permutation};

/// Full enumeration of `B` is used for the exponent check up to this order.
pub const EXPONENT_EXHAUSTIVE_MAX: u64 = 1 << 12;
const EXPONENT_SAMPLES: usize = 10_000;
const EXPONENT_SEED: u64 = 0x5eed_0b1e_c7ed_0004;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BKind {
    Generic,
    Q8e,
}

#[derive(Clone, Debug)]
pub struct Alphas {
    pub i: Permutation,
    pub j: Permutation,
    pub k: Permutation,
}

#[derive(Clone, Debug)]
pub struct CanonicalB {
    pub kind: BKind,
    pub group: PermGroup,
    pub regular_generators: Vec<Permutation>,
    pub iota: Permutation,
    pub alphas: Option<Alphas>,
    /// `|M|`, only for the `Q8 × C2^ℓ` kind.
    pub m_orbit_size: Option<usize>,
}

/// `R` acting on itself by right multiplication, generated by the right
/// translations of the standard generators.
pub fn regular_representation(g: &DicyclicGroup) -> PermGroup {
    let gens = regular_generators(g);
    PermGroup::new(g.order(), gens).expect("translations have degree n")
}

fn regular_generators(g: &DicyclicGroup) -> Vec<Permutation> {
    g.generators().iter().map(|s| g.right_translation(s)).collect()
}

/// `A₂ = {a ∈ A : a² = 1}`; as a subset of `R` this is `M` in the Q8 case.
fn is_in_a2(g: &DicyclicGroup, u: &DicyclicElement) -> bool {
    g.base().is_identity(&g.base().square(&u.a))
}

/// The involution swapping `(a, eps) ↔ (a·y, eps)` on the elements picked by `pick`.
fn y_swap(g: &DicyclicGroup, pick: impl Fn(&DicyclicElement) -> bool) -> Permutation {
    let images = g
        .elements()
        .map(|u| {
            if pick(&u) {
                let ay = DicyclicElement {
                    a: g.base().mul(&u.a, g.y()).expect("same group"),
                    eps: u.eps,
                };
                g.index_of(&ay).expect("same group")
            } else {
                g.index_of(&u).expect("same group")
            }
        })
        .collect();
    Permutation::from_images(images).expect("y-swap is an involution")
}

pub fn alpha_involutions(g: &DicyclicGroup) -> Alphas {
    Alphas {
        i: y_swap(g, |u| !u.eps && !is_in_a2(g, u)),
        j: y_swap(g, |u| u.eps && is_in_a2(g, u)),
        k: y_swap(g, |u| u.eps && !is_in_a2(g, u)),
    }
}

pub fn build_canonical_b(g: &DicyclicGroup) -> CanonicalB {
    let regular = regular_generators(g);
    let iota = g.iota();
    let n = g.order();
    if g.is_q8_x_c2l() {
        let alphas = alpha_involutions(g);
        let mut gens = regular.clone();
        gens.extend([alphas.i.clone(), alphas.j.clone(), alphas.k.clone()]);
        CanonicalB {
            kind: BKind::Q8e,
            group: PermGroup::new(n, gens).expect("degree n"),
            regular_generators: regular,
            iota,
            alphas: Some(alphas),
            m_orbit_size: Some(g.base().involution_closure_count()),
        }
    } else {
        let mut gens = regular.clone();
        gens.push(iota.clone());
        CanonicalB {
            kind: BKind::Generic,
            group: PermGroup::new(n, gens).expect("degree n"),
            regular_generators: regular,
            iota,
            alphas: None,
            m_orbit_size: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactsReport {
    pub group: String,
    pub kind: BKind,
    pub facts: BTreeMap<String, bool>,
}

impl FactsReport {
    pub fn all_passed(&self) -> bool {
        self.facts.values().all(|&v| v)
    }

    pub fn failed(&self) -> Vec<&str> {
        self.facts
            .iter()
            .filter(|(_, &v)| !v)
            .map(|(k, _)| k.as_str())
            .collect()
    }
}

fn as_set(perms: impl IntoIterator<Item = Permutation>) -> BTreeSet<Permutation> {
    perms.into_iter().collect()
}

/// Every element of `group` has order dividing `d`; exhaustive up to
/// [`EXPONENT_EXHAUSTIVE_MAX`], else over a fixed-seed random sample.
fn exponent_divides(group: &PermGroup, d: u64) -> bool {
    let chain = group.schreier_sims();
    if chain.order() <= &BigUint::from(EXPONENT_EXHAUSTIVE_MAX) {
        chain.elements().iter().all(|p| d.is_multiple_of(p.order()))
    } else {
        let mut rng = SplitMix64::seed_from_u64(EXPONENT_SEED);
        (0..EXPONENT_SAMPLES).all(|_| d.is_multiple_of(chain.random_element(&mut rng).order()))
    }
}

pub fn verify_canonical_facts(g: &DicyclicGroup, b: &CanonicalB) -> FactsReport {
    let n = g.order();
    let mut facts = BTreeMap::new();
    let regular = regular_representation(g);
    let iota = &b.iota;

    facts.insert(
        "regular_is_regular".to_string(),
        regular.order() == &BigUint::from(n) && regular.is_transitive(),
    );
    facts.insert(
        "regular_in_b".to_string(),
        is_subgroup(&regular, &b.group).unwrap_or(false),
    );
    let iota_is_aut = (0..n).all(|u| {
        (0..n).all(|v| iota.image(g.mul_index(u, v)) == g.mul_index(iota.image(u), iota.image(v)))
    });
    facts.insert("iota_is_group_automorphism".to_string(), iota_is_aut);
    facts.insert(
        "iota_is_involution".to_string(),
        iota.then(iota).map(|p| p.is_identity()).unwrap_or(false),
    );
    facts.insert(
        "iota_in_b".to_string(),
        b.group.contains(iota),
    );

    match b.kind {
        BKind::Q8e => {
            let alphas = b.alphas.as_ref().expect("q8e kind has alphas");
            let m_size = b.m_orbit_size.expect("q8e kind has |M|");
            facts.insert(
                "b_index_over_r_is_8".to_string(),
                b.group.order() == &BigUint::from(8 * n),
            );
            let m_translations = as_set(
                g.elements()
                    .filter(|u| !u.eps && is_in_a2(g, u))
                    .map(|u| g.right_translation(&u)),
            );
            facts.insert(
                "center_is_m".to_string(),
                as_set(b.group.center()) == m_translations,
            );
            let m = g.element_order_le2_count();
            facts.insert(
                "m_equals_m_size_equals_n_over_4".to_string(),
                m == m_size && m_translations.len() == m_size && 4 * m_size == n,
            );
            facts.insert("b_exponent_4".to_string(), exponent_divides(&b.group, 4));
            facts.insert(
                "inverse_closed_count_is_2_pow_5n_over_8".to_string(),
                count_inverse_closed(g) == BigUint::from(1u8) << (5 * n / 8),
            );
            facts.insert(
                "iota_equals_alpha_j_alpha_k".to_string(),
                alphas.j.then(&alphas.k).ok().as_ref() == Some(iota),
            );
        }
        BKind::Generic => {
            facts.insert(
                "b_order_is_2n".to_string(),
                b.group.order() == &BigUint::from(2 * n),
            );
            facts.insert("iota_not_in_r".to_string(), !regular.contains(iota));

            let half = g.base().order();
            let a_regular: Vec<Permutation> = (0..g.base().rank())
                .map(|i| {
                    g.right_translation(&DicyclicElement {
                        a: g.base().basis(i),
                        eps: false,
                    })
                })
                .collect();
            let a_group = PermGroup::new(n, a_regular.clone()).expect("degree n");

            let mut c_gens = a_regular.clone();
            c_gens.push(iota.clone());
            let c = PermGroup::new(n, c_gens).expect("degree n");
            facts.insert(
                "c_abelian".to_string(),
                c.is_abelian() && c.order() == &BigUint::from(2 * half),
            );

            let iota_x = iota.then(&g.right_translation(&g.x())).expect("degree n");
            let mut d_gens = a_regular.clone();
            d_gens.push(iota_x);
            let d = PermGroup::new(n, d_gens).expect("degree n");
            let d_elements = d.elements();
            let outside: Vec<&Permutation> =
                d_elements.iter().filter(|t| !a_group.contains(t)).collect();
            let inverts_a = |t: &Permutation| {
                let t_inv = t.inverse();
                a_regular.iter().all(|a| {
                    t_inv.then(a).and_then(|p| p.then(t)).ok() == Some(a.inverse())
                })
            };
            facts.insert(
                "d_generalised_dihedral".to_string(),
                d_elements.len() == 2 * half
                    && outside.len() == half
                    && outside.iter().all(|t| t.order() == 2 && inverts_a(t)),
            );
        }
    }

    FactsReport {
        group: g.spec(),
        kind: b.kind,
        facts,
    }
}
