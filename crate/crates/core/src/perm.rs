//! Permutations and permutation groups given by generators.
//!
//! Composition is left-to-right everywhere: `p.then(&q)` maps `v ↦ q(p(v))`.
//! Group order and membership come from a deterministic Schreier–Sims
//! stabiliser chain, built lazily on first use.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rand_core::Rng;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n || seen[v] {
                return Err(Error::domain(format!(
                    "image list is not a permutation of 0..{n}"
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Permutation::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    /// Builds a permutation from disjoint cycles, e.g. `&[&[0, 1, 2]]` is `0→1→2→0`.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &v) in cycle.iter().enumerate() {
                if v >= degree || touched[v] {
                    return Err(Error::domain("cycles must be disjoint and in range"));
                }
                touched[v] = true;
                images[v] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, v: usize) -> usize {
        self.images[v]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.then_unchecked(other))
    }

    #[inline]
    pub(crate) fn then_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self.images.iter().map(|&v| other.images[v]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (v, &w) in self.images.iter().enumerate() {
            images[w] = v;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(v, &w)| v == w)
    }

    pub fn first_moved(&self) -> Option<usize> {
        self.images.iter().enumerate().find(|&(v, &w)| v != w).map(|(v, _)| v)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut v = self.images[start];
            while v != start {
                seen[v] = true;
                cycle.push(v);
                v = self.images[v];
            }
            out.push(cycle);
        }
        out
    }

    /// Order as the lcm of cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| acc.lcm(&(c.len() as u64)))
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.degree() == other.degree()
            && self
                .images
                .iter()
                .zip(&other.images)
                .all(|(&s, &o)| other.images[s] == self.images[o])
    }
}

/// Free-function form of [`Permutation::then`]: `v ↦ q(p(v))`.
pub fn compose(p: &Permutation, q: &Permutation) -> Result<Permutation> {
    p.then(q)
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Whitespace-separated image list.
    fn from_str(s: &str) -> Result<Self> {
        let images = s
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::parse(s, "images must be non-negative integers"))?;
        Permutation::from_images(images)
    }
}

#[derive(Clone, Debug)]
struct Level {
    point: usize,
    orbit: Vec<usize>,
    /// `transversal[β]` maps the level's base point to `β`.
    transversal: Vec<Option<Permutation>>,
}

/// Base and strong generating set with explicit transversals.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
    strong: Vec<Permutation>,
    order: BigUint,
}

impl StabChain {
    fn build(degree: usize, gens: &[Permutation], base_hint: &[usize], target: Option<&BigUint>) -> Self {
        let mut strong: Vec<Permutation> = Vec::new();
        for g in gens {
            if !g.is_identity() && !strong.contains(g) {
                strong.push(g.clone());
            }
        }
        let mut base: Vec<usize> = Vec::new();
        for &b in base_hint {
            if !base.contains(&b) {
                base.push(b);
            }
        }
        for g in &strong {
            if base.iter().all(|&b| g.image(b) == b) {
                base.push(g.first_moved().expect("non-identity"));
            }
        }
        let mut chain = StabChain {
            degree,
            levels: base
                .iter()
                .map(|&point| Level::new(degree, point))
                .collect(),
            strong: Vec::new(),
            order: BigUint::one(),
        };
        // Depth of a strong generator: index of the first base point it moves.
        let mut depth: Vec<usize> = Vec::new();
        for g in strong {
            depth.push(chain.first_moved_base(&g));
            chain.strong.push(g);
        }
        for l in 0..chain.levels.len() {
            chain.extend_orbit(l, &depth);
        }
        chain.recompute_order();

        let mut checked: Vec<HashSet<(usize, usize)>> = vec![HashSet::new(); chain.levels.len()];
        let done = |c: &StabChain| target.is_some_and(|t| &c.order == t);
        let mut i = chain.levels.len();
        'outer: while i > 0 {
            let level = i - 1;
            if done(&chain) {
                break;
            }
            let mut k = 0;
            while k < chain.levels[level].orbit.len() {
                let beta = chain.levels[level].orbit[k];
                k += 1;
                for s in 0..chain.strong.len() {
                    if depth[s] < level || checked[level].contains(&(beta, s)) {
                        continue;
                    }
                    checked[level].insert((beta, s));
                    let lvl = &chain.levels[level];
                    let u_beta = lvl.transversal[beta].as_ref().expect("orbit point");
                    let gamma = chain.strong[s].image(beta);
                    let u_gamma = lvl.transversal[gamma].as_ref().expect("orbit closed");
                    let h = u_beta
                        .then_unchecked(&chain.strong[s])
                        .then_unchecked(&u_gamma.inverse());
                    let (res, j) = chain.sift_from(h, level + 1);
                    if res.is_identity() {
                        continue;
                    }
                    if j == chain.levels.len() {
                        chain
                            .levels
                            .push(Level::new(degree, res.first_moved().expect("non-identity")));
                        checked.push(HashSet::new());
                    }
                    depth.push(j);
                    chain.strong.push(res);
                    for l in 0..=j {
                        chain.extend_orbit(l, &depth);
                    }
                    chain.recompute_order();
                    i = j + 1;
                    continue 'outer;
                }
            }
            i -= 1;
        }
        chain
    }

    fn first_moved_base(&self, g: &Permutation) -> usize {
        self.levels
            .iter()
            .position(|l| g.image(l.point) != l.point)
            .unwrap_or(self.levels.len())
    }

    fn extend_orbit(&mut self, l: usize, depth: &[usize]) {
        let gens: Vec<usize> = (0..self.strong.len()).filter(|&s| depth[s] >= l).collect();
        let level = &mut self.levels[l];
        let mut k = 0;
        while k < level.orbit.len() {
            let beta = level.orbit[k];
            k += 1;
            for &s in &gens {
                let g = &self.strong[s];
                let gamma = g.image(beta);
                if level.transversal[gamma].is_none() {
                    let u = level.transversal[beta]
                        .as_ref()
                        .expect("orbit point")
                        .then_unchecked(g);
                    level.transversal[gamma] = Some(u);
                    level.orbit.push(gamma);
                }
            }
        }
    }

    fn recompute_order(&mut self) {
        self.order = self
            .levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()));
    }

    /// Sifts `g` through levels `from..`, returning the residue and the
    /// level at which it dropped out (`levels.len()` if it passed all).
    fn sift_from(&self, mut g: Permutation, from: usize) -> (Permutation, usize) {
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            let beta = g.image(level.point);
            match &level.transversal[beta] {
                None => return (g, l),
                Some(u) => g = g.then_unchecked(&u.inverse()),
            }
        }
        let len = self.levels.len();
        (g, len)
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn basic_orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        &self.strong
    }

    /// Membership by sifting.
    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (res, _) = self.sift_from(g.clone(), 0);
        res.is_identity()
    }

    /// Every element, as products of transversal representatives.
    pub fn elements(&self) -> Vec<Permutation> {
        let mut acc = vec![Permutation::identity(self.degree)];
        // g = u_{k-1} ⋯ u_1 u_0, so build from the deepest level outwards.
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(acc.len() * level.orbit.len());
            for h in &acc {
                for &beta in &level.orbit {
                    let u = level.transversal[beta].as_ref().expect("orbit point");
                    next.push(h.then_unchecked(u));
                }
            }
            acc = next;
        }
        acc
    }

    /// Uniformly random element: one random transversal entry per level.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for level in self.levels.iter().rev() {
            let beta = level.orbit[(rng.next_u64() % level.orbit.len() as u64) as usize];
            g = g.then_unchecked(level.transversal[beta].as_ref().expect("orbit point"));
        }
        g
    }
}

impl Level {
    fn new(degree: usize, point: usize) -> Self {
        let mut transversal = vec![None; degree];
        transversal[point] = Some(Permutation::identity(degree));
        Level {
            point,
            orbit: vec![point],
            transversal,
        }
    }
}

/// A permutation group on `0..degree` given by generators.
#[derive(Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    base_hint: Vec<usize>,
    order_hint: Option<BigUint>,
    chain: OnceLock<StabChain>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        let chain = OnceLock::new();
        if let Some(c) = self.chain.get() {
            let _ = chain.set(c.clone());
        }
        PermGroup {
            degree: self.degree,
            generators: self.generators.clone(),
            base_hint: self.base_hint.clone(),
            order_hint: self.order_hint.clone(),
            chain,
        }
    }
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        Ok(PermGroup {
            degree,
            generators,
            base_hint: Vec::new(),
            order_hint: None,
            chain: OnceLock::new(),
        })
    }

    /// Group whose generators are already known to be strong relative to
    /// `base`, with the order known in advance. Schreier–Sims still runs, but
    /// it stops as soon as the chain reaches `order`.
    pub fn with_base(
        degree: usize,
        generators: Vec<Permutation>,
        base: Vec<usize>,
        order: BigUint,
    ) -> Result<Self> {
        let mut g = PermGroup::new(degree, generators)?;
        g.base_hint = base;
        g.order_hint = Some(order);
        Ok(g)
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::new(degree, Vec::new()).expect("no generators")
    }

    pub fn symmetric(degree: usize) -> Self {
        let mut gens = Vec::new();
        if degree >= 2 {
            gens.push(Permutation::from_cycles(degree, &[&[0, 1]]).expect("valid"));
            let cycle: Vec<usize> = (0..degree).collect();
            gens.push(Permutation::from_cycles(degree, &[&cycle]).expect("valid"));
        }
        PermGroup::new(degree, gens).expect("consistent degree")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn schreier_sims(&self) -> &StabChain {
        self.chain.get_or_init(|| {
            StabChain::build(
                self.degree,
                &self.generators,
                &self.base_hint,
                self.order_hint.as_ref(),
            )
        })
    }

    pub fn order(&self) -> &BigUint {
        self.schreier_sims().order()
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.order().to_u64()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.schreier_sims().contains(g)
    }

    pub fn elements(&self) -> Vec<Permutation> {
        self.schreier_sims().elements()
    }

    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        let mut orbit = vec![point];
        seen[point] = true;
        let mut k = 0;
        while k < orbit.len() {
            let v = orbit[k];
            k += 1;
            for g in &self.generators {
                let w = g.image(v);
                if !seen[w] {
                    seen[w] = true;
                    orbit.push(w);
                }
            }
        }
        orbit.sort_unstable();
        orbit
    }

    pub fn is_transitive(&self) -> bool {
        self.degree == 0 || self.orbit(0).len() == self.degree
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().enumerate().all(|(i, g)| {
            self.generators[i + 1..]
                .iter()
                .all(|h| g.then_unchecked(h) == h.then_unchecked(g))
        })
    }

    /// Elements commuting with every generator; enumerates the whole group.
    pub fn center(&self) -> Vec<Permutation> {
        self.elements()
            .into_iter()
            .filter(|z| {
                self.generators
                    .iter()
                    .all(|g| z.then_unchecked(g) == g.then_unchecked(z))
            })
            .collect()
    }

    /// One generator per line.
    pub fn to_lines(&self) -> String {
        let mut s = String::new();
        for g in &self.generators {
            s.push_str(&g.to_string());
            s.push('\n');
        }
        s
    }

    pub fn from_lines(degree: usize, text: &str) -> Result<Self> {
        let gens = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(str::parse)
            .collect::<Result<Vec<Permutation>>>()?;
        PermGroup::new(degree, gens)
    }
}

/// True iff every generator of `h` lies in `g`.
pub fn is_subgroup(h: &PermGroup, g: &PermGroup) -> Result<bool> {
    if h.degree() != g.degree() {
        return Err(Error::DegreeMismatch {
            left: h.degree(),
            right: g.degree(),
        });
    }
    Ok(h.generators().iter().all(|p| g.contains(p)))
}

pub fn groups_equal(h: &PermGroup, g: &PermGroup) -> Result<bool> {
    Ok(is_subgroup(h, g)? && h.order() == g.order())
}
