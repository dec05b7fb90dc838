//! Fully interconnected decompositions: vertex partitions in which every
//! pair of blocks is either completely joined or completely disjoint.
//!
//! A [`FidPartition`] can only be obtained through [`verify_fid`] (or a
//! constructor that runs it), so holding one means the block structure has
//! been checked against the graph.
//!
//! Block indices are 0-based; vertex labels are 1-based like everywhere
//! else in the crate.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::{SquareMatrix, SymmetricMatrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FidPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
    position: Vec<usize>,
    adjacency: Vec<bool>,
    d_tilde: Vec<usize>,
}

/// Why a proposed list of blocks is not a valid decomposition. Block
/// numbers are 0-based indices into the proposed list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FidViolation {
    /// `vertex` appears in two blocks (or twice in one).
    Overlap {
        vertex: usize,
        first_block: usize,
        second_block: usize,
    },
    /// `vertex` is in no block.
    Uncovered { vertex: usize },
    /// Between `blocks`, the edge `present` exists but `absent` does not.
    MixedCrossEdges {
        blocks: (usize, usize),
        present: (usize, usize),
        absent: (usize, usize),
    },
}

impl FidViolation {
    /// Re-checks the witness against `g` and the proposed `blocks`.
    pub fn is_reproduced_by(&self, g: &Graph, blocks: &[Vec<usize>]) -> bool {
        let count = |v: usize, b: usize| blocks[b].iter().filter(|&&w| w == v).count();
        match *self {
            FidViolation::Overlap {
                vertex,
                first_block,
                second_block,
            } => {
                if first_block == second_block {
                    count(vertex, first_block) >= 2
                } else {
                    count(vertex, first_block) >= 1 && count(vertex, second_block) >= 1
                }
            }
            FidViolation::Uncovered { vertex } => blocks.iter().all(|b| !b.contains(&vertex)),
            FidViolation::MixedCrossEdges {
                blocks: (i, j),
                present,
                absent,
            } => {
                let crosses =
                    |(u, v): (usize, usize)| blocks[i].contains(&u) && blocks[j].contains(&v);
                crosses(present)
                    && crosses(absent)
                    && g.has_edge(present.0, present.1)
                    && !g.has_edge(absent.0, absent.1)
            }
        }
    }
}

impl fmt::Display for FidViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FidViolation::Overlap { vertex, first_block, second_block } => write!(
                f,
                "vertex {vertex} is in block {} and block {}",
                first_block + 1,
                second_block + 1
            ),
            FidViolation::Uncovered { vertex } => write!(f, "vertex {vertex} is in no block"),
            FidViolation::MixedCrossEdges { blocks, present, absent } => write!(
                f,
                "blocks {} and {} are neither fully joined nor disjoint: edge ({}, {}) present, ({}, {}) absent",
                blocks.0 + 1,
                blocks.1 + 1,
                present.0,
                present.1,
                absent.0,
                absent.1
            ),
        }
    }
}

impl FidPartition {
    /// The one-block partition `[V]`.
    pub fn trivial(g: &Graph) -> Self {
        verify_fid(g, &[g.vertices().collect()]).expect("whole vertex set is always valid")
    }

    /// Every vertex in its own block.
    pub fn singletons(g: &Graph) -> Self {
        let blocks: Vec<Vec<usize>> = g.vertices().map(|v| vec![v]).collect();
        verify_fid(g, &blocks).expect("singleton blocks are always valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of blocks.
    pub fn k(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Vertices of block `i`, ascending.
    pub fn block(&self, i: usize) -> &[usize] {
        &self.blocks[i]
    }

    pub fn size(&self, i: usize) -> usize {
        self.blocks[i].len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    /// Block containing vertex `v`. Panics on an out-of-range label.
    pub fn block_of(&self, v: usize) -> usize {
        self.block_of[v - 1]
    }

    /// Position of `v` inside its block's vertex list.
    pub fn position_in_block(&self, v: usize) -> usize {
        self.position[v - 1]
    }

    /// True iff blocks `i != j` are fully interconnected.
    pub fn is_adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacency[i * self.k() + j]
    }

    /// Number of vertices in blocks fully joined to block `i`.
    pub fn d_tilde(&self, i: usize) -> usize {
        self.d_tilde[i]
    }

    pub fn d_tildes(&self) -> &[usize] {
        &self.d_tilde
    }
}

/// Checks that `blocks` is a fully interconnected decomposition of `g`.
///
/// Input problems (empty block, unknown vertex) are reported as the
/// matching [`Error`] variant; a structurally invalid partition yields
/// [`Error::NotFid`] carrying a concrete witness.
pub fn verify_fid(g: &Graph, blocks: &[Vec<usize>]) -> Result<FidPartition> {
    let n = g.n();
    let mut block_of = vec![usize::MAX; n];
    let mut position = vec![0; n];
    let mut sorted = Vec::with_capacity(blocks.len());

    for (b, block) in blocks.iter().enumerate() {
        if block.is_empty() {
            return Err(Error::EmptyBlock(b));
        }
        for &v in block {
            g.check_vertex(v)?;
        }
        let mut members = block.clone();
        members.sort_unstable();
        for &v in &members {
            let slot = &mut block_of[v - 1];
            if *slot != usize::MAX {
                return Err(Error::NotFid(FidViolation::Overlap {
                    vertex: v,
                    first_block: *slot,
                    second_block: b,
                }));
            }
            *slot = b;
        }
        for (pos, &v) in members.iter().enumerate() {
            position[v - 1] = pos;
        }
        sorted.push(members);
    }
    if let Some(v) = block_of.iter().position(|&b| b == usize::MAX) {
        return Err(Error::NotFid(FidViolation::Uncovered { vertex: v + 1 }));
    }

    let k = sorted.len();
    let zero_based: Vec<Vec<usize>> = sorted
        .iter()
        .map(|b| b.iter().map(|v| v - 1).collect())
        .collect();
    let masks: Vec<Vec<u64>> = zero_based.iter().map(|b| g.mask_of(b)).collect();
    let mut adjacency = vec![false; k * k];
    for i in 0..k {
        for j in i + 1..k {
            let target = zero_based[j].len();
            let mut full = true;
            let mut empty = true;
            for &u in &zero_based[i] {
                match g.neighbors_in(u, &masks[j]) {
                    0 => full = false,
                    c if c == target => empty = false,
                    _ => {
                        full = false;
                        empty = false;
                    }
                }
            }
            if !full && !empty {
                return Err(Error::NotFid(mixed_witness(g, &sorted, i, j)));
            }
            adjacency[i * k + j] = full;
            adjacency[j * k + i] = full;
        }
    }

    let d_tilde = (0..k)
        .map(|i| {
            (0..k)
                .filter(|&j| adjacency[i * k + j])
                .map(|j| sorted[j].len())
                .sum()
        })
        .collect();

    Ok(FidPartition {
        n,
        blocks: sorted,
        block_of,
        position,
        adjacency,
        d_tilde,
    })
}

/// First present and first absent cross pair in (block i, block j) scan
/// order.
fn mixed_witness(g: &Graph, blocks: &[Vec<usize>], i: usize, j: usize) -> FidViolation {
    let mut present = None;
    let mut absent = None;
    'scan: for &u in &blocks[i] {
        for &v in &blocks[j] {
            let slot = if g.has_edge(u, v) {
                &mut present
            } else {
                &mut absent
            };
            if slot.is_none() {
                *slot = Some((u, v));
            }
            if present.is_some() && absent.is_some() {
                break 'scan;
            }
        }
    }
    FidViolation::MixedCrossEdges {
        blocks: (i, j),
        present: present.expect("mixed block pair has an edge"),
        absent: absent.expect("mixed block pair has a non-edge"),
    }
}

/// Groups vertices into twin classes: true twins (`N[u] = N[v]`) or false
/// twins (`N(u) = N(v)`). A vertex cannot have twins of both kinds, so the
/// classes are well defined, and each class is a module of `g`.
fn twin_classes(g: &Graph, vertices: &[usize]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..vertices.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }

    let mut open: HashMap<&[u64], usize> = HashMap::new();
    let mut closed: HashMap<Vec<u64>, usize> = HashMap::new();
    for (idx, &v) in vertices.iter().enumerate() {
        let row = g.row_bits(v - 1);
        let mut with_self = row.to_vec();
        with_self[(v - 1) / 64] |= 1 << ((v - 1) % 64);
        for first in [open.get(row).copied(), closed.get(&with_self).copied()]
            .into_iter()
            .flatten()
        {
            let (a, b) = (find(&mut parent, first), find(&mut parent, idx));
            if a != b {
                parent[b.max(a)] = a.min(b);
            }
        }
        open.entry(row).or_insert(idx);
        closed.entry(with_self).or_insert(idx);
    }

    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut class_of_root = HashMap::new();
    for (idx, &v) in vertices.iter().enumerate() {
        let root = find(&mut parent, idx);
        let c = *class_of_root.entry(root).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[c].push(v);
    }
    for c in &mut classes {
        c.sort_unstable();
    }
    classes.sort_by_key(|c| c[0]);
    classes
}

/// Partition into twin classes, blocks ordered by smallest vertex.
pub fn twin_coarsen(g: &Graph) -> FidPartition {
    let all: Vec<usize> = g.vertices().collect();
    verify_fid(g, &twin_classes(g, &all)).expect("twin classes are modules")
}

/// `[dominating vertices, rest]`, or the trivial partition when every
/// vertex dominates. `None` when no vertex is dominating.
pub fn dominating_split(g: &Graph) -> Option<FidPartition> {
    let dominating = g.dominating_vertices();
    if dominating.is_empty() {
        return None;
    }
    if dominating.len() == g.n() {
        return Some(FidPartition::trivial(g));
    }
    let rest: Vec<usize> = g.vertices().filter(|v| !dominating.contains(v)).collect();
    Some(verify_fid(g, &[dominating, rest]).expect("dominating set is joined to everything"))
}

/// Clique members with at least one neighbour outside the clique.
pub fn gateway_vertices(g: &Graph, clique: &[usize]) -> Vec<usize> {
    let members: Vec<usize> = clique.iter().map(|v| v - 1).collect();
    let mask = g.mask_of(&members);
    let mut gateways: Vec<usize> = members
        .iter()
        .filter(|&&u| g.degree_idx(u) > g.neighbors_in(u, &mask))
        .map(|u| u + 1)
        .collect();
    gateways.sort_unstable();
    gateways
}

/// Splits around a clique: `[clique without gateways, each gateway alone,
/// everything else]`. When the outside vertices do not form a valid block
/// they are split into their twin classes. Empty blocks are dropped.
pub fn clique_gateway_split(g: &Graph, clique: &[usize]) -> Result<FidPartition> {
    for &v in clique {
        g.check_vertex(v)?;
    }
    let mut clique = clique.to_vec();
    clique.sort_unstable();
    clique.dedup();
    for (a, &u) in clique.iter().enumerate() {
        for &v in &clique[a + 1..] {
            if !g.has_edge(u, v) {
                return Err(Error::NotClique(u, v));
            }
        }
    }

    let gateways = gateway_vertices(g, &clique);
    let inner: Vec<usize> = clique
        .iter()
        .copied()
        .filter(|v| !gateways.contains(v))
        .collect();
    let outer: Vec<usize> = g
        .vertices()
        .filter(|v| clique.binary_search(v).is_err())
        .collect();

    let mut head: Vec<Vec<usize>> = Vec::new();
    if !inner.is_empty() {
        head.push(inner);
    }
    head.extend(gateways.iter().map(|&v| vec![v]));

    let mut blocks = head.clone();
    if !outer.is_empty() {
        blocks.push(outer.clone());
    }
    match verify_fid(g, &blocks) {
        Err(Error::NotFid(_)) => {
            let mut refined = head;
            refined.extend(twin_classes(g, &outer));
            verify_fid(g, &refined)
        }
        other => other,
    }
}

/// Block-level coupling matrix: `d̃ᵢ I` on diagonal blocks, `-J` between
/// joined blocks, zero elsewhere.
pub fn tilde_matrix(p: &FidPartition) -> SymmetricMatrix {
    let mut m = SymmetricMatrix::zeros(p.n());
    for (i, block) in p.blocks().iter().enumerate() {
        for &u in block {
            m.set(u - 1, u - 1, p.d_tilde(i) as f64);
        }
        for j in i + 1..p.k() {
            if p.is_adjacent(i, j) {
                for &u in block {
                    for &v in p.block(j) {
                        m.set(u - 1, v - 1, -1.0);
                    }
                }
            }
        }
    }
    m
}

/// `diag(L₁, …, L_k)` laid out in the original vertex order, where `Lᵢ` is
/// the Laplacian of the subgraph induced by block `i`.
pub fn block_diagonal_laplacian(g: &Graph, p: &FidPartition) -> SymmetricMatrix {
    let mut m = SymmetricMatrix::zeros(g.n());
    for block in p.blocks() {
        for (a, &u) in block.iter().enumerate() {
            let mut degree = 0usize;
            for &v in block {
                if u != v && g.has_edge(u, v) {
                    degree += 1;
                }
            }
            m.set(u - 1, u - 1, degree as f64);
            for &v in &block[a + 1..] {
                if g.has_edge(u, v) {
                    m.set(u - 1, v - 1, -1.0);
                }
            }
        }
    }
    m
}

/// The k×k matrix acting on block-constant vectors: `d̃ᵢ` on the diagonal,
/// `-nⱼ` where blocks `i` and `j` are joined.
pub fn reduced_matrix(p: &FidPartition) -> SquareMatrix {
    let k = p.k();
    let mut m = SquareMatrix::zeros(k);
    for i in 0..k {
        m.set(i, i, p.d_tilde(i) as f64);
        for j in 0..k {
            if i != j && p.is_adjacent(i, j) {
                m.set(i, j, -(p.size(j) as f64));
            }
        }
    }
    m
}

/// One block per non-empty line, vertex labels separated by whitespace.
/// Lines starting with `#` are ignored.
pub fn parse_partition(text: &str) -> Result<Vec<Vec<usize>>> {
    let mut blocks = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let block = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>().map_err(|_| Error::Parse {
                    line: i + 1,
                    message: format!("bad vertex label {tok:?}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        blocks.push(block);
    }
    Ok(blocks)
}

pub fn serialize_partition(p: &FidPartition) -> String {
    let mut out = String::new();
    for block in p.blocks() {
        let labels: Vec<String> = block.iter().map(usize::to_string).collect();
        out.push_str(&labels.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{disjoint_union, generate, join, Family};

    fn family(f: Family) -> Graph {
        generate(&f).unwrap()
    }

    #[test]
    fn trivial_and_singletons_always_valid() {
        for g in [
            family(Family::Path(5)),
            family(Family::Cycle(7)),
            family(Family::Star(4)),
        ] {
            let t = FidPartition::trivial(&g);
            assert_eq!(t.k(), 1);
            assert_eq!(t.d_tilde(0), 0);
            let s = FidPartition::singletons(&g);
            assert_eq!(s.k(), g.n());
            for v in g.vertices() {
                assert_eq!(s.d_tilde(v - 1), g.degree(v));
            }
        }
    }

    #[test]
    fn path_with_mixed_blocks_reports_witness() {
        let g = family(Family::Path(4));
        let blocks = vec![vec![1, 2], vec![3, 4]];
        let err = verify_fid(&g, &blocks).unwrap_err();
        let Error::NotFid(violation) = err else {
            panic!("{err:?}")
        };
        assert_eq!(
            violation,
            FidViolation::MixedCrossEdges {
                blocks: (0, 1),
                present: (2, 3),
                absent: (1, 3)
            }
        );
        assert!(violation.is_reproduced_by(&g, &blocks));
    }

    #[test]
    fn overlap_uncovered_and_empty() {
        let g = family(Family::Path(3));
        let blocks = vec![vec![1, 2], vec![2, 3]];
        let Err(Error::NotFid(v)) = verify_fid(&g, &blocks) else {
            panic!()
        };
        assert_eq!(
            v,
            FidViolation::Overlap {
                vertex: 2,
                first_block: 0,
                second_block: 1
            }
        );
        assert!(v.is_reproduced_by(&g, &blocks));

        let blocks = vec![vec![1, 2]];
        let Err(Error::NotFid(v)) = verify_fid(&g, &blocks) else {
            panic!()
        };
        assert_eq!(v, FidViolation::Uncovered { vertex: 3 });
        assert!(v.is_reproduced_by(&g, &blocks));

        assert_eq!(
            verify_fid(&g, &[vec![1, 2, 3], vec![]]),
            Err(Error::EmptyBlock(1))
        );
        assert!(matches!(
            verify_fid(&g, &[vec![1, 2, 3, 4]]),
            Err(Error::VertexOutOfRange { vertex: 4, n: 3 })
        ));
    }

    #[test]
    fn twin_coarsen_examples() {
        let k6 = family(Family::Complete(6));
        assert_eq!(twin_coarsen(&k6).blocks(), &[(1..=6).collect::<Vec<_>>()]);

        let star = family(Family::Star(6));
        let p = twin_coarsen(&star);
        assert_eq!(p.blocks(), &[vec![1], vec![2, 3, 4, 5, 6]]);
        assert_eq!(p.d_tildes(), &[5, 1]);

        let p4 = family(Family::Path(4));
        assert_eq!(twin_coarsen(&p4).k(), 4);
    }

    #[test]
    fn twin_coarsen_on_cograph() {
        // (K2 ⊔ K̄3) ∨ K̄2
        let g = join(
            &disjoint_union(&family(Family::Complete(2)), &Graph::edgeless(3)),
            &Graph::edgeless(2),
        );
        let p = twin_coarsen(&g);
        assert_eq!(p.blocks(), &[vec![1, 2], vec![3, 4, 5], vec![6, 7]]);
        assert!(!p.is_adjacent(0, 1));
        assert!(p.is_adjacent(0, 2) && p.is_adjacent(1, 2));
        assert_eq!(p.d_tildes(), &[2, 2, 5]);
    }

    #[test]
    fn dominating_split_examples() {
        let k5 = family(Family::Complete(5));
        assert_eq!(dominating_split(&k5).unwrap().k(), 1);

        let star = family(Family::Star(7));
        let p = dominating_split(&star).unwrap();
        assert_eq!(p.blocks(), &[vec![1], (2..=7).collect::<Vec<_>>()]);
        assert_eq!(p.d_tildes(), &[6, 1]);

        assert!(dominating_split(&family(Family::Cycle(5))).is_none());
    }

    #[test]
    fn clique_gateway_examples() {
        let mut edges: Vec<(usize, usize)> =
            generate(&Family::Complete(5)).unwrap().edges().collect();
        edges.push((1, 6));
        let g = Graph::from_edges(6, &edges).unwrap();
        let p = clique_gateway_split(&g, &[1, 2, 3, 4, 5]).unwrap();
        assert_eq!(p.blocks(), &[vec![2, 3, 4, 5], vec![1], vec![6]]);

        let k4 = family(Family::Complete(4));
        let p = clique_gateway_split(&k4, &[1, 2, 3, 4]).unwrap();
        assert_eq!(p.k(), 1);

        let g = disjoint_union(&k4, &Graph::edgeless(1));
        let p = clique_gateway_split(&g, &[1, 2, 3, 4]).unwrap();
        assert_eq!(p.blocks(), &[vec![1, 2, 3, 4], vec![5]]);
    }

    #[test]
    fn clique_gateway_refines_outer_block() {
        // K4 on 1..4; gateway 1 sees outer 5, gateway 2 sees outer 6; 5-6-7 path.
        let mut edges: Vec<(usize, usize)> =
            generate(&Family::Complete(4)).unwrap().edges().collect();
        edges.extend([(1, 5), (2, 6), (5, 6), (6, 7)]);
        let g = Graph::from_edges(7, &edges).unwrap();
        let p = clique_gateway_split(&g, &[1, 2, 3, 4]).unwrap();
        assert_eq!(p.blocks()[..3], [vec![3, 4], vec![1], vec![2]]);
        assert_eq!(p.k(), 6);
    }

    #[test]
    fn clique_must_be_complete() {
        let g = family(Family::Path(3));
        assert_eq!(
            clique_gateway_split(&g, &[1, 2, 3]),
            Err(Error::NotClique(1, 3))
        );
    }

    #[test]
    fn tilde_matrix_of_star3() {
        let g = family(Family::Star(3));
        let p = dominating_split(&g).unwrap();
        let expected = vec![
            vec![2.0, -1.0, -1.0],
            vec![-1.0, 1.0, 0.0],
            vec![-1.0, 0.0, 1.0],
        ];
        assert_eq!(tilde_matrix(&p).to_rows(), expected);
        assert_eq!(
            &block_diagonal_laplacian(&g, &p) + &tilde_matrix(&p),
            g.laplacian()
        );
    }

    #[test]
    fn tilde_matrix_of_trivial_is_zero() {
        let g = family(Family::Cycle(6));
        let p = FidPartition::trivial(&g);
        assert_eq!(tilde_matrix(&p), SymmetricMatrix::zeros(6));
        assert_eq!(reduced_matrix(&p).to_rows(), vec![vec![0.0]]);
    }

    #[test]
    fn reduced_matrix_of_dominating_split() {
        // threshold-like graph: vertices 1, 2 dominate, 3..6 arbitrary
        let rest = family(Family::Path(4));
        let g = join(&family(Family::Complete(2)), &rest);
        let p = dominating_split(&g).unwrap();
        assert_eq!(p.sizes(), vec![2, 4]);
        let n = 6.0;
        let nd = 2.0;
        assert_eq!(
            reduced_matrix(&p).to_rows(),
            vec![vec![n - nd, -(n - nd)], vec![-nd, nd]]
        );
    }

    #[test]
    fn interdisconnected_pair_has_zero_reduced_matrix() {
        let g = disjoint_union(&family(Family::Complete(3)), &family(Family::Path(2)));
        let p = verify_fid(&g, &[vec![1, 2, 3], vec![4, 5]]).unwrap();
        assert_eq!(reduced_matrix(&p), SquareMatrix::zeros(2));
    }

    #[test]
    fn partition_text_round_trip() {
        let g = family(Family::Star(5));
        let p = twin_coarsen(&g);
        let text = serialize_partition(&p);
        assert_eq!(text, "1\n2 3 4 5\n");
        let again = verify_fid(&g, &parse_partition(&text).unwrap()).unwrap();
        assert_eq!(again, p);
        assert!(matches!(
            parse_partition("1 2\n3 x\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }
}
