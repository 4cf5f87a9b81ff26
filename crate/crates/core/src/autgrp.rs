//! Full automorphism groups of small (di)graphs.
//!
//! The search is a plain individualization–refinement backtrack. The first
//! path of the search tree fixes a base `b₀, b₁, …`; then, from the deepest
//! level up, every vertex `w` of the target cell at level `d` that is not
//! yet known to share an orbit with `b_d` gets its own subtree searched for a
//! leaf that induces an automorphism. Each hit is a new strong generator, so
//! the orbit lengths multiply to the group order and the generators already
//! form a strong generating set relative to the base.
//!
//! [`brute_force_aut`] filters all `n!` permutations and exists to validate
//! the search.

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::One;

use crate::cayley::CayleyGraph;
use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};

pub const DEFAULT_DEGREE_CAP: usize = 256;
pub const BRUTE_FORCE_MAX_DEGREE: usize = 10;

/// Ordered partition of the vertex set, stored as a color per vertex.
/// Colors are `0..cells` and their numeric order is the cell order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    colors: Vec<u32>,
    cells: usize,
}

impl Coloring {
    pub fn unit(n: usize) -> Self {
        Coloring {
            colors: vec![0; n],
            cells: usize::from(n > 0),
        }
    }

    pub fn color(&self, v: usize) -> u32 {
        self.colors[v]
    }

    pub fn cell_count(&self) -> usize {
        self.cells
    }

    pub fn is_discrete(&self) -> bool {
        self.cells == self.colors.len()
    }

    pub fn cell_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.cells];
        for &c in &self.colors {
            sizes[c as usize] += 1;
        }
        sizes
    }

    /// Members of cell `c` in ascending vertex order.
    pub fn cell(&self, c: u32) -> Vec<usize> {
        (0..self.colors.len()).filter(|&v| self.colors[v] == c).collect()
    }

    /// First smallest non-singleton cell.
    pub fn target_cell(&self) -> Option<u32> {
        self.cell_sizes()
            .iter()
            .enumerate()
            .filter(|&(_, &s)| s > 1)
            .min_by_key(|&(c, &s)| (s, c))
            .map(|(c, _)| c as u32)
    }

    /// Splits `v` off its cell; `v` takes the cell's position and the rest
    /// of the cell moves directly after it.
    pub fn individualize(&self, v: usize) -> Coloring {
        let c = self.colors[v];
        let colors = self
            .colors
            .iter()
            .enumerate()
            .map(|(w, &d)| if d > c || (d == c && w != v) { d + 1 } else { d })
            .collect();
        Coloring {
            colors,
            cells: self.cells + 1,
        }
    }
}

/// Color signature of a vertex: own color, loop flag, then the histogram of
/// out-neighbor colors and (directed graphs only) in-neighbor colors.
fn signature(graph: &CayleyGraph, colors: &[u32], v: usize, scratch: &mut Vec<u32>, out: &mut Vec<u32>) {
    out.clear();
    out.push(colors[v]);
    out.push(u32::from(graph.has_loop(v)));
    histogram(graph.out_neighbors(v), colors, scratch, out);
    if graph.is_directed() {
        histogram(graph.in_neighbors(v), colors, scratch, out);
    }
}

fn histogram(nbrs: &[usize], colors: &[u32], scratch: &mut Vec<u32>, out: &mut Vec<u32>) {
    scratch.clear();
    scratch.extend(nbrs.iter().map(|&w| colors[w]));
    scratch.sort_unstable();
    let len_pos = out.len();
    out.push(0);
    let mut runs = 0;
    for chunk in scratch.chunk_by(|a, b| a == b) {
        out.push(chunk[0]);
        out.push(chunk.len() as u32);
        runs += 1;
    }
    out[len_pos] = runs;
}

/// Iterated color-degree refinement to the coarsest equitable refinement.
/// Returns the refined coloring and a label-independent invariant of it
/// (cell sizes plus each cell's signature).
pub fn refine(graph: &CayleyGraph, start: &Coloring) -> (Coloring, Vec<u32>) {
    let n = graph.n();
    let mut coloring = start.clone();
    let mut scratch = Vec::new();
    let mut sigs: Vec<Vec<u32>> = vec![Vec::new(); n];
    loop {
        for (v, sig) in sigs.iter_mut().enumerate() {
            signature(graph, &coloring.colors, v, &mut scratch, sig);
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| sigs[a].cmp(&sigs[b]));
        let mut colors = vec![0u32; n];
        let mut next = 0u32;
        for (k, &v) in order.iter().enumerate() {
            if k > 0 && sigs[v] != sigs[order[k - 1]] {
                next += 1;
            }
            colors[v] = next;
        }
        let cells = if n == 0 { 0 } else { next as usize + 1 };
        let stable = cells == coloring.cells;
        coloring = Coloring { colors, cells };
        if stable {
            let mut invariant = vec![cells as u32];
            let sizes = coloring.cell_sizes();
            let mut rep = vec![usize::MAX; cells];
            for v in (0..n).rev() {
                rep[coloring.colors[v] as usize] = v;
            }
            for c in 0..cells {
                invariant.push(sizes[c] as u32);
                // Signatures were computed against the previous (equal) partition,
                // whose color numbering coincides with the new one.
                invariant.extend_from_slice(&sigs[rep[c]][1..]);
            }
            return (coloring, invariant);
        }
    }
}

/// True iff `p` maps arcs to arcs (edges to edges when undirected).
pub fn is_automorphism(graph: &CayleyGraph, p: &Permutation) -> bool {
    if p.degree() != graph.n() {
        return false;
    }
    (0..graph.n()).all(|u| {
        let pu = p.image(u);
        graph.out_neighbors(u).len() == graph.out_neighbors(pu).len()
            && graph
                .out_neighbors(u)
                .iter()
                .all(|&v| graph.has_arc(pu, p.image(v)))
    })
}

struct Node {
    coloring: Coloring,
    invariant: Vec<u32>,
}

struct Search<'a> {
    graph: &'a CayleyGraph,
    path: Vec<Node>,
    base: Vec<usize>,
    first_leaf: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(graph: &'a CayleyGraph) -> Self {
        let (coloring, invariant) = refine(graph, &Coloring::unit(graph.n()));
        let mut path = vec![Node { coloring, invariant }];
        let mut base = Vec::new();
        while let Some(cell) = path.last().expect("root").coloring.target_cell() {
            let node = path.last().expect("root");
            let v = node.coloring.cell(cell)[0];
            let (coloring, invariant) = refine(graph, &node.coloring.individualize(v));
            base.push(v);
            path.push(Node { coloring, invariant });
        }
        let first_leaf = path.last().expect("leaf").coloring.colors.iter().map(|&c| c as usize).collect();
        Search {
            graph,
            path,
            base,
            first_leaf,
        }
    }

    /// Permutation sending the first leaf to `leaf`, if it is an automorphism.
    fn leaf_automorphism(&self, leaf: &Coloring) -> Option<Permutation> {
        let n = self.graph.n();
        let mut vertex_of_color = vec![0usize; n];
        for v in 0..n {
            vertex_of_color[leaf.colors[v] as usize] = v;
        }
        let images = (0..n).map(|v| vertex_of_color[self.first_leaf[v]]).collect();
        let p = Permutation::from_images_unchecked(images);
        is_automorphism(self.graph, &p).then_some(p)
    }

    /// Searches the subtree reached by individualizing `v` at a node whose
    /// partition is `parent`, which sits at depth `depth - 1`.
    fn probe(&self, parent: &Coloring, v: usize, depth: usize) -> Option<Permutation> {
        let (coloring, invariant) = refine(self.graph, &parent.individualize(v));
        if invariant != self.path[depth].invariant {
            return None;
        }
        match coloring.target_cell() {
            None => self.leaf_automorphism(&coloring),
            Some(cell) => coloring
                .cell(cell)
                .into_iter()
                .find_map(|w| self.probe(&coloring, w, depth + 1)),
        }
    }

    fn run(self) -> Result<PermGroup> {
        let n = self.graph.n();
        let mut gens: Vec<Permutation> = Vec::new();
        let mut order = BigUint::one();
        for d in (0..self.base.len()).rev() {
            let node = &self.path[d];
            let b = self.base[d];
            let cell = node
                .coloring
                .cell(node.coloring.target_cell().expect("non-leaf node"));
            let mut orbits = UnionFind::new(n);
            for g in &gens {
                orbits.absorb(g);
            }
            let mut failed: Vec<usize> = Vec::new();
            for &w in &cell {
                if w == b || orbits.same(w, b) || failed.iter().any(|&f| orbits.same(f, w)) {
                    continue;
                }
                match self.probe(&node.coloring, w, d + 1) {
                    Some(p) => {
                        orbits.absorb(&p);
                        gens.push(p);
                    }
                    None => failed.push(w),
                }
            }
            let orbit_len = cell.iter().filter(|&&w| orbits.same(w, b)).count();
            order *= BigUint::from(orbit_len);
        }
        PermGroup::with_base(n, gens, self.base, order)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn same(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }

    fn absorb(&mut self, p: &Permutation) {
        for v in 0..self.parent.len() {
            let (a, b) = (self.find(v), self.find(p.image(v)));
            if a != b {
                self.parent[a.max(b)] = a.min(b);
            }
        }
    }
}

/// `Aut(Γ)` with the default degree cap.
pub fn automorphism_group(graph: &CayleyGraph) -> Result<PermGroup> {
    automorphism_group_capped(graph, DEFAULT_DEGREE_CAP)
}

pub fn automorphism_group_capped(graph: &CayleyGraph, cap: usize) -> Result<PermGroup> {
    if graph.n() > cap {
        return Err(Error::CapExceeded {
            what: "graph order",
            value: graph.n().to_string(),
            cap: cap.to_string(),
            hint: "raise the degree cap if the search is known to be tractable",
        });
    }
    if graph.n() == 0 {
        return Ok(PermGroup::trivial(0));
    }
    Search::new(graph).run()
}

/// `Aut(Γ)` by testing all `n!` permutations; `n ≤ 10` only. Generators are
/// the automorphisms not already generated by earlier ones, in
/// lexicographic order of image lists.
pub fn brute_force_aut(graph: &CayleyGraph) -> Result<PermGroup> {
    let n = graph.n();
    if n > BRUTE_FORCE_MAX_DEGREE {
        return Err(Error::CapExceeded {
            what: "graph order for brute force",
            value: n.to_string(),
            cap: BRUTE_FORCE_MAX_DEGREE.to_string(),
            hint: "use automorphism_group instead",
        });
    }
    let mut gens: Vec<Permutation> = Vec::new();
    let mut group = PermGroup::trivial(n);
    for images in (0..n).permutations(n) {
        let p = Permutation::from_images_unchecked(images);
        if is_automorphism(graph, &p) && !group.contains(&p) {
            gens.push(p);
            group = PermGroup::new(n, gens.clone())?;
        }
    }
    Ok(group)
}
