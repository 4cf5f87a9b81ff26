//! Independent oracles shared by the integration tests. None of them use the
//! refinement search or the stabiliser chain.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::{HashSet, VecDeque};

use dicaut::{CayleyGraph, DicyclicGroup, Permutation};
use rand_core::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

/// Every element of `⟨gens⟩` by breadth-first closure under right
/// multiplication by generators.
pub fn closure(degree: usize, gens: &[Permutation]) -> HashSet<Vec<usize>> {
    let id: Vec<usize> = (0..degree).collect();
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(id.clone());
    queue.push_back(id);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let next: Vec<usize> = p.iter().map(|&v| g.image(v)).collect();
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen
}

pub fn closure_order(degree: usize, gens: &[Permutation]) -> usize {
    closure(degree, gens).len()
}

/// Plain backtracking: extend the partial map `fixed` to a full automorphism
/// if one exists.
fn extend(graph: &CayleyGraph, map: &mut Vec<Option<usize>>, used: &mut Vec<bool>, pos: usize) -> bool {
    let n = graph.n();
    if pos == n {
        return true;
    }
    if map[pos].is_some() {
        return extend(graph, map, used, pos + 1);
    }
    for w in 0..n {
        if used[w] || !consistent(graph, map, pos, w) {
            continue;
        }
        map[pos] = Some(w);
        used[w] = true;
        if extend(graph, map, used, pos + 1) {
            return true;
        }
        map[pos] = None;
        used[w] = false;
    }
    false
}

fn consistent(graph: &CayleyGraph, map: &[Option<usize>], v: usize, w: usize) -> bool {
    if graph.has_loop(v) != graph.has_loop(w)
        || graph.out_neighbors(v).len() != graph.out_neighbors(w).len()
    {
        return false;
    }
    map.iter().enumerate().all(|(u, img)| match img {
        Some(x) if u != v => graph.has_arc(u, v) == graph.has_arc(*x, w) && graph.has_arc(v, u) == graph.has_arc(w, *x),
        _ => true,
    })
}

/// `|Aut(graph)|` as the product of the orbit lengths of `v_i` under the
/// pointwise stabiliser of `v_0, …, v_{i-1}`, each orbit found by asking the
/// backtracker for a witness per target.
pub fn naive_aut_order(graph: &CayleyGraph) -> u128 {
    let n = graph.n();
    let mut order: u128 = 1;
    for i in 0..n {
        let mut orbit = 0u128;
        for w in 0..n {
            if w < i {
                continue;
            }
            let mut map: Vec<Option<usize>> = vec![None; n];
            let mut used = vec![false; n];
            let mut ok = true;
            for (u, slot) in map.iter_mut().enumerate().take(i) {
                *slot = Some(u);
                used[u] = true;
            }
            for u in 0..i {
                ok &= consistent(graph, &map, u, u);
            }
            if !ok || !consistent(graph, &map, i, w) {
                continue;
            }
            map[i] = Some(w);
            used[w] = true;
            if extend(graph, &mut map, &mut used, 0) {
                orbit += 1;
            }
        }
        order *= orbit;
    }
    order
}

/// The integer group law of `R` as a table, derived by rewriting words in
/// normal form `a·x^ε` with `x a = a⁻¹ x` and `x² = y`.
pub fn rewriting_table(g: &DicyclicGroup) -> Vec<Vec<usize>> {
    let base = g.base();
    let factors = base.factors().to_vec();
    let y = g.y().coords().to_vec();
    let elems: Vec<(Vec<u32>, bool)> = (0..g.order())
        .map(|i| {
            let e = g.element_at(i);
            (e.a.coords().to_vec(), e.eps)
        })
        .collect();
    let add = |u: &[u32], v: &[u32]| -> Vec<u32> {
        u.iter().zip(v).zip(&factors).map(|((a, b), d)| (a + b) % d).collect()
    };
    let neg = |u: &[u32]| -> Vec<u32> { u.iter().zip(&factors).map(|(a, d)| (d - a) % d).collect() };
    let find = |a: &[u32], e: bool| elems.iter().position(|(c, f)| c == a && *f == e).unwrap();
    let mut table = vec![vec![0; elems.len()]; elems.len()];
    for (i, (a, d)) in elems.iter().enumerate() {
        for (j, (b, e)) in elems.iter().enumerate() {
            // a x^d · b x^e: move x^d past b, flipping b when d = 1.
            let moved = if *d { neg(b) } else { b.clone() };
            let mut prod = add(a, &moved);
            let eps = if *d && *e {
                prod = add(&prod, &y);
                false
            } else {
                *d || *e
            };
            table[i][j] = find(&prod, eps);
        }
    }
    table
}

/// `Q8 × C2^ℓ` recognised by an explicit isomorphism search against a model
/// built from quaternion units and bit vectors.
pub fn is_q8_x_c2l_oracle(g: &DicyclicGroup) -> bool {
    let n = g.order();
    if n < 8 || !n.is_power_of_two() {
        return false;
    }
    let ell = n.trailing_zeros() as usize - 3;
    let target = q8_model(ell);
    let table = rewriting_table(g);
    isomorphic(&table, &target)
}

/// Multiplication table of `Q8 × C2^ℓ` on pairs (quaternion unit, vector).
fn q8_model(ell: usize) -> Vec<Vec<usize>> {
    // Q8 elements as (sign, unit) with units 1,i,j,k = 0..4.
    let unit_mul = |a: usize, b: usize| -> (bool, usize) {
        const T: [[(bool, usize); 4]; 4] = [
            [(false, 0), (false, 1), (false, 2), (false, 3)],
            [(false, 1), (true, 0), (false, 3), (true, 2)],
            [(false, 2), (true, 3), (true, 0), (false, 1)],
            [(false, 3), (false, 2), (true, 1), (true, 0)],
        ];
        T[a][b]
    };
    let q8 = |x: usize, z: usize| -> usize {
        let (sa, ua) = (x / 4 == 1, x % 4);
        let (sb, ub) = (z / 4 == 1, z % 4);
        let (s, u) = unit_mul(ua, ub);
        ((sa ^ sb ^ s) as usize) * 4 + u
    };
    let e = 1usize << ell;
    let n = 8 * e;
    let mut t = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            t[i][j] = q8(i / e, j / e) * e + ((i % e) ^ (j % e));
        }
    }
    t
}

fn identity_of(t: &[Vec<usize>]) -> usize {
    (0..t.len()).find(|&e| (0..t.len()).all(|v| t[e][v] == v)).unwrap()
}

/// Isomorphism search: pick a generating sequence of the target by greedy
/// closure, then try every image tuple in the source.
fn isomorphic(src: &[Vec<usize>], dst: &[Vec<usize>]) -> bool {
    let n = src.len();
    if dst.len() != n {
        return false;
    }
    let order_profile = |t: &[Vec<usize>]| {
        let e = identity_of(t);
        let mut orders: Vec<usize> = (0..n)
            .map(|v| {
                let mut k = 1;
                let mut p = v;
                while p != e {
                    p = t[p][v];
                    k += 1;
                }
                k
            })
            .collect();
        orders.sort_unstable();
        orders
    };
    if order_profile(src) != order_profile(dst) {
        return false;
    }
    let e_dst = identity_of(dst);
    let mut gens = Vec::new();
    let mut span: HashSet<usize> = [e_dst].into_iter().collect();
    for v in 0..n {
        if !span.contains(&v) {
            gens.push(v);
            span = close(dst, &gens, e_dst);
        }
    }
    let e_src = identity_of(src);
    let mut choice = vec![0usize; gens.len()];
    try_images(src, dst, &gens, &mut choice, 0, e_src, e_dst)
}

fn close(t: &[Vec<usize>], gens: &[usize], e: usize) -> HashSet<usize> {
    let mut seen: HashSet<usize> = [e].into_iter().collect();
    let mut queue: VecDeque<usize> = [e].into_iter().collect();
    while let Some(v) = queue.pop_front() {
        for &g in gens {
            let w = t[v][g];
            if seen.insert(w) {
                queue.push_back(w);
            }
        }
    }
    seen
}

fn try_images(
    src: &[Vec<usize>],
    dst: &[Vec<usize>],
    gens: &[usize],
    choice: &mut [usize],
    pos: usize,
    e_src: usize,
    e_dst: usize,
) -> bool {
    let n = src.len();
    if pos == gens.len() {
        // Extend the generator map along the closure and check it is a
        // well-defined bijective homomorphism.
        let mut phi = vec![usize::MAX; n];
        phi[e_dst] = e_src;
        let mut queue: VecDeque<usize> = [e_dst].into_iter().collect();
        while let Some(v) = queue.pop_front() {
            for (k, &g) in gens.iter().enumerate() {
                let w = dst[v][g];
                let img = src[phi[v]][choice[k]];
                if phi[w] == usize::MAX {
                    phi[w] = img;
                    queue.push_back(w);
                } else if phi[w] != img {
                    return false;
                }
            }
        }
        let distinct: HashSet<usize> = phi.iter().copied().collect();
        if distinct.len() != n {
            return false;
        }
        return (0..n).all(|a| (0..n).all(|b| phi[dst[a][b]] == src[phi[a]][phi[b]]));
    }
    for c in 0..n {
        if c == e_src {
            continue;
        }
        choice[pos] = c;
        if try_images(src, dst, gens, choice, pos + 1, e_src, e_dst) {
            return true;
        }
    }
    false
}

/// `|{g ∈ R : g² = 1}|` from the integer table.
pub fn involution_count(table: &[Vec<usize>]) -> usize {
    let e = identity_of(table);
    (0..table.len()).filter(|&v| table[v][v] == e).count()
}

/// Abelian groups by invariant factors `d₁ | d₂ | … | d_k`, each `dᵢ ≥ 2`,
/// with product at most `max_order`.
pub fn invariant_factor_lists(max_order: usize) -> Vec<Vec<u32>> {
    fn go(prefix: &mut Vec<u32>, prod: usize, max: usize, out: &mut Vec<Vec<u32>>) {
        if !prefix.is_empty() {
            out.push(prefix.clone());
        }
        let last = prefix.last().copied().unwrap_or(1);
        let mut d = if prefix.is_empty() { 2 } else { last };
        while prod * d as usize <= max {
            if d % last == 0 {
                prefix.push(d);
                go(prefix, prod * d as usize, max, out);
                prefix.pop();
            }
            d += 1;
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), 1, max_order, &mut out);
    out
}

/// Seeded fixture generator for test inputs.
pub struct Fixture(SplitMix64);

impl Fixture {
    pub fn new(seed: u64) -> Self {
        Fixture(SplitMix64::seed_from_u64(seed))
    }

    pub fn next(&mut self) -> u64 {
        self.0.next_u64()
    }

    pub fn below(&mut self, k: usize) -> usize {
        (self.next() % k as u64) as usize
    }

    pub fn permutation(&mut self, degree: usize) -> Permutation {
        let mut images: Vec<usize> = (0..degree).collect();
        for i in (1..degree).rev() {
            let j = self.below(i + 1);
            images.swap(i, j);
        }
        Permutation::from_images(images).unwrap()
    }
}
