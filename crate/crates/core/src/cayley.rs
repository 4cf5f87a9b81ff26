//! Connection sets and Cayley (di)graphs over a fixed element numbering.
//!
//! `Cay(R, S)` has vertex set `R` and an arc `(g, h)` iff `g·h⁻¹ ∈ S`. For
//! an inverse-closed `S` the arc relation is symmetric and the graph is
//! treated as undirected. Loops appear exactly when `1 ∈ S`.
//!
//! Inverse-closed sets are indexed by the choices they make on the orbits
//! `{r, r⁻¹}`: bit `j` of an index selects orbit `j`, where orbits are listed
//! with the self-inverse elements first (ascending), then the pairs ordered
//! by their smaller element.

use fixedbitset::FixedBitSet;
use num_bigint::BigUint;
use num_traits::One;
use rand_core::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::dicyclic::DicyclicGroup;
use crate::error::{Error, Result};

/// Default limit on the number of sets an exhaustive enumeration may visit.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConnectionSet {
    bits: FixedBitSet,
}

impl ConnectionSet {
    pub fn empty(n: usize) -> Self {
        ConnectionSet {
            bits: FixedBitSet::with_capacity(n),
        }
    }

    pub fn from_indices(n: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut s = ConnectionSet::empty(n);
        for i in indices {
            if i >= n {
                return Err(Error::domain(format!("element index {i} out of range 0..{n}")));
            }
            s.bits.insert(i);
        }
        Ok(s)
    }

    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.bits.contains(i)
    }

    pub fn insert(&mut self, i: usize) {
        self.bits.insert(i);
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn is_inverse_closed(&self, g: &DicyclicGroup) -> bool {
        self.bits.len() == g.order() && self.indices().all(|i| self.contains(g.inv_index(i)))
    }

    /// Lowercase hex of the bitmask read as an integer, element 0 being the
    /// least significant bit; always `ceil(n/4)` digits.
    pub fn to_hex(&self) -> String {
        let n = self.bits.len();
        let digits = n.div_ceil(4).max(1);
        let mut out = String::with_capacity(digits);
        for d in (0..digits).rev() {
            let mut nibble = 0u32;
            for b in 0..4 {
                let i = 4 * d + b;
                if i < n && self.bits.contains(i) {
                    nibble |= 1 << b;
                }
            }
            out.push(char::from_digit(nibble, 16).expect("nibble"));
        }
        out
    }

    /// Inverse of [`ConnectionSet::to_hex`]; shorter inputs are zero-extended,
    /// an optional `0x` prefix is allowed, and set bits beyond `n` are rejected.
    pub fn from_hex(n: usize, hex: &str) -> Result<Self> {
        let t = hex.trim();
        let t = t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")).unwrap_or(t);
        if t.is_empty() {
            return Err(Error::parse(hex, "empty hex string"));
        }
        let mut s = ConnectionSet::empty(n);
        for (d, ch) in t.chars().rev().enumerate() {
            let nibble = ch
                .to_digit(16)
                .ok_or_else(|| Error::parse(hex, format!("`{ch}` is not a hex digit")))?;
            for b in 0..4 {
                if nibble & (1 << b) != 0 {
                    let i = 4 * d + b;
                    if i >= n {
                        return Err(Error::parse(
                            hex,
                            format!("bit {i} set but the group has only {n} elements"),
                        ));
                    }
                    s.bits.insert(i);
                }
            }
        }
        Ok(s)
    }
}

/// Orbits of `r ↦ r⁻¹` in index order: self-inverse elements first, then
/// pairs `[r, r⁻¹]` with `r < r⁻¹`, ordered by `r`.
pub fn inverse_orbits(g: &DicyclicGroup) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut orbits: Vec<Vec<usize>> = (0..n)
        .filter(|&i| g.inv_index(i) == i)
        .map(|i| vec![i])
        .collect();
    orbits.extend((0..n).filter_map(|i| {
        let j = g.inv_index(i);
        (i < j).then(|| vec![i, j])
    }));
    orbits
}

/// `2^(m/2 + n/2)`, the number of inverse-closed subsets.
pub fn count_inverse_closed(g: &DicyclicGroup) -> BigUint {
    BigUint::one() << inverse_closed_log2(g)
}

/// `m/2 + n/2`, the base-2 logarithm of [`count_inverse_closed`].
pub fn inverse_closed_log2(g: &DicyclicGroup) -> u64 {
    let m = g.element_order_le2_count() as u64;
    let n = g.order() as u64;
    (m + n) / 2
}

/// The inverse-closed set selected by the orbit-choice bits of `index`.
pub fn inverse_closed_at(g: &DicyclicGroup, orbits: &[Vec<usize>], index: u64) -> ConnectionSet {
    let mut s = ConnectionSet::empty(g.order());
    for (j, orbit) in orbits.iter().enumerate().take(64) {
        if index >> j & 1 == 1 {
            for &i in orbit {
                s.insert(i);
            }
        }
    }
    s
}

/// Position of an inverse-closed set in the enumeration order.
pub fn inverse_closed_index(g: &DicyclicGroup, s: &ConnectionSet) -> Option<u64> {
    let orbits = inverse_orbits(g);
    if orbits.len() > 64 || !s.is_inverse_closed(g) {
        return None;
    }
    Some(
        orbits
            .iter()
            .enumerate()
            .filter(|(_, o)| s.contains(o[0]))
            .fold(0u64, |acc, (j, _)| acc | 1 << j),
    )
}

/// Iterator over all inverse-closed sets in index order.
pub struct InverseClosedIter {
    group: DicyclicGroup,
    orbits: Vec<Vec<usize>>,
    next: u64,
    total: u64,
}

impl Iterator for InverseClosedIter {
    type Item = ConnectionSet;

    fn next(&mut self) -> Option<ConnectionSet> {
        if self.next >= self.total {
            return None;
        }
        let s = inverse_closed_at(&self.group, &self.orbits, self.next);
        self.next += 1;
        Some(s)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for InverseClosedIter {}

pub fn enumerate_inverse_closed(g: &DicyclicGroup, cap: u64) -> Result<InverseClosedIter> {
    let log2 = inverse_closed_log2(g);
    if log2 >= 64 || (1u64 << log2) > cap {
        return Err(Error::CapExceeded {
            what: "number of inverse-closed subsets",
            value: format!("2^{log2}"),
            cap: cap.to_string(),
            hint: "use sampling instead of exhaustive enumeration",
        });
    }
    Ok(InverseClosedIter {
        group: g.clone(),
        orbits: inverse_orbits(g),
        next: 0,
        total: 1u64 << log2,
    })
}

/// Uniform inverse-closed set: every orbit `{r, r⁻¹}` is included
/// independently with probability 1/2, driven by SplitMix64 seeded with
/// `seed` (one output word per orbit, top bit decides).
pub fn sample_inverse_closed(g: &DicyclicGroup, seed: u64) -> ConnectionSet {
    sample_inverse_closed_with_orbits(g, &inverse_orbits(g), seed)
}

pub(crate) fn sample_inverse_closed_with_orbits(
    g: &DicyclicGroup,
    orbits: &[Vec<usize>],
    seed: u64,
) -> ConnectionSet {
    let mut rng = SplitMix64::seed_from_u64(seed);
    let mut s = ConnectionSet::empty(g.order());
    for orbit in orbits {
        if rng.next_u64() >> 63 == 1 {
            for &i in orbit {
                s.insert(i);
            }
        }
    }
    s
}

/// Uniform arbitrary subset of an `n`-element group (directed census).
pub fn sample_subset(n: usize, seed: u64) -> ConnectionSet {
    let mut rng = SplitMix64::seed_from_u64(seed);
    let mut s = ConnectionSet::empty(n);
    for i in 0..n {
        if rng.next_u64() >> 63 == 1 {
            s.insert(i);
        }
    }
    s
}

/// Arbitrary subset by bitmask, for exhaustive directed runs (`n ≤ 64`).
pub fn subset_from_mask(n: usize, mask: u64) -> ConnectionSet {
    let mut s = ConnectionSet::empty(n);
    for i in 0..n.min(64) {
        if mask >> i & 1 == 1 {
            s.insert(i);
        }
    }
    s
}

/// A simple (di)graph on `0..n`, possibly with loops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyGraph {
    n: usize,
    directed: bool,
    adjacency: Vec<FixedBitSet>,
    out_lists: Vec<Vec<usize>>,
    in_lists: Vec<Vec<usize>>,
}

impl CayleyGraph {
    /// General constructor. In undirected mode every arc is mirrored.
    pub fn from_arcs(n: usize, directed: bool, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adjacency = vec![FixedBitSet::with_capacity(n); n];
        for (u, v) in arcs {
            if u >= n || v >= n {
                return Err(Error::domain(format!("arc ({u},{v}) out of range")));
            }
            adjacency[u].insert(v);
            if !directed {
                adjacency[v].insert(u);
            }
        }
        Ok(CayleyGraph::from_adjacency(n, directed, adjacency))
    }

    fn from_adjacency(n: usize, directed: bool, adjacency: Vec<FixedBitSet>) -> Self {
        let out_lists: Vec<Vec<usize>> = adjacency.iter().map(|row| row.ones().collect()).collect();
        let mut in_lists = vec![Vec::new(); n];
        for (u, outs) in out_lists.iter().enumerate() {
            for &v in outs {
                in_lists[v].push(u);
            }
        }
        CayleyGraph {
            n,
            directed,
            adjacency,
            out_lists,
            in_lists,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    #[inline]
    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].contains(v)
    }

    pub fn has_loop(&self, u: usize) -> bool {
        self.has_arc(u, u)
    }

    pub fn out_neighbors(&self, u: usize) -> &[usize] {
        &self.out_lists[u]
    }

    pub fn in_neighbors(&self, u: usize) -> &[usize] {
        &self.in_lists[u]
    }

    pub fn arc_count(&self) -> usize {
        self.out_lists.iter().map(Vec::len).sum()
    }
}

/// `Cay(G, S)`: arc `(u, v)` iff `u·v⁻¹ ∈ S`.
pub fn build_cayley(g: &DicyclicGroup, s: &ConnectionSet, directed: bool) -> Result<CayleyGraph> {
    let n = g.order();
    if s.universe() != n {
        return Err(Error::domain(format!(
            "connection set has universe {} but the group has order {n}",
            s.universe()
        )));
    }
    if !directed && !s.is_inverse_closed(g) {
        return Err(Error::domain(
            "an undirected Cayley graph needs an inverse-closed connection set",
        ));
    }
    let inv: Vec<usize> = (0..n).map(|v| g.inv_index(v)).collect();
    let adjacency = (0..n)
        .map(|u| {
            let mut row = FixedBitSet::with_capacity(n);
            for (v, &vi) in inv.iter().enumerate() {
                if s.contains(g.mul_index(u, vi)) {
                    row.insert(v);
                }
            }
            row
        })
        .collect();
    Ok(CayleyGraph::from_adjacency(n, directed, adjacency))
}
