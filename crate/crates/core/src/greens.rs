//! Closed-form Green's relations on the enumerated semigroup and the
//! eggbox diagram.
//!
//! The closed forms are only meaningful under the standing assumptions
//! (a non-regular instance); callers gate on the classification. Every
//! relation is returned as a canonical `RelationPartition`, the common
//! currency of the closed-form predicates and the brute-force oracles.

use crate::error::{Error, Result};
use crate::semigroup::SemigroupTable;
use serde::Serialize;
use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

/// The thirteen relations exposed by the library and the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum RelKind {
    R,
    L,
    H,
    D,
    J,
    LStar,
    RStar,
    LTilde,
    RTilde,
    DStar,
    JStar,
    DTilde,
    JTilde,
}

impl RelKind {
    pub const ALL: [RelKind; 13] = [
        RelKind::R,
        RelKind::L,
        RelKind::H,
        RelKind::D,
        RelKind::J,
        RelKind::LStar,
        RelKind::RStar,
        RelKind::LTilde,
        RelKind::RTilde,
        RelKind::DStar,
        RelKind::JStar,
        RelKind::DTilde,
        RelKind::JTilde,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RelKind::R => "R",
            RelKind::L => "L",
            RelKind::H => "H",
            RelKind::D => "D",
            RelKind::J => "J",
            RelKind::LStar => "Lstar",
            RelKind::RStar => "Rstar",
            RelKind::LTilde => "Ltilde",
            RelKind::RTilde => "Rtilde",
            RelKind::DStar => "Dstar",
            RelKind::JStar => "Jstar",
            RelKind::DTilde => "Dtilde",
            RelKind::JTilde => "Jtilde",
        }
    }
}

impl fmt::Display for RelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<RelKind> {
        RelKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Malformed(format!("unknown relation {s:?}")))
    }
}

/// An equivalence relation on element indices in canonical form: blocks
/// sorted internally, blocks ordered by least element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationPartition {
    pub name: String,
    pub blocks: Vec<Vec<u32>>,
    #[serde(skip)]
    class_of: Vec<u32>,
}

impl RelationPartition {
    fn canonicalize(name: String, mut blocks: Vec<Vec<u32>>, n: usize) -> RelationPartition {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_by_key(|b| b[0]);
        let mut class_of = vec![0u32; n];
        for (c, b) in blocks.iter().enumerate() {
            for &i in b {
                class_of[i as usize] = c as u32;
            }
        }
        RelationPartition {
            name,
            blocks,
            class_of,
        }
    }

    /// Groups `0..n` by key equality.
    pub fn from_keys<K: Hash + Eq>(name: impl Into<String>, keys: Vec<K>) -> RelationPartition {
        let n = keys.len();
        let mut slots: HashMap<K, usize> = HashMap::new();
        let mut blocks: Vec<Vec<u32>> = Vec::new();
        for (i, k) in keys.into_iter().enumerate() {
            match slots.entry(k) {
                std::collections::hash_map::Entry::Occupied(e) => blocks[*e.get()].push(i as u32),
                std::collections::hash_map::Entry::Vacant(e) => {
                    e.insert(blocks.len());
                    blocks.push(vec![i as u32]);
                }
            }
        }
        Self::canonicalize(name.into(), blocks, n)
    }

    /// Builds the partition generated by a symmetric pair predicate via
    /// union-find. The predicate is expected to already be an
    /// equivalence; any failure of transitivity would be silently closed
    /// over here and caught by the oracle comparison instead.
    pub fn from_pairs(
        name: impl Into<String>,
        n: usize,
        related: impl Fn(u32, u32) -> bool,
    ) -> RelationPartition {
        let mut uf = UnionFind::new(n);
        for i in 0..n as u32 {
            for j in (i + 1)..n as u32 {
                if related(i, j) {
                    uf.union(i as usize, j as usize);
                }
            }
        }
        uf.into_partition(name.into())
    }

    pub fn identity(name: impl Into<String>, n: usize) -> RelationPartition {
        Self::from_keys(name, (0..n as u32).collect())
    }

    pub fn len(&self) -> usize {
        self.class_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.class_of.is_empty()
    }

    pub fn class_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn class_of(&self, i: u32) -> u32 {
        self.class_of[i as usize]
    }

    pub fn same_class(&self, i: u32, j: u32) -> bool {
        self.class_of[i as usize] == self.class_of[j as usize]
    }

    /// Block equality, ignoring the relation name.
    pub fn same_blocks(&self, other: &RelationPartition) -> bool {
        self.blocks == other.blocks
    }

    /// True iff every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &RelationPartition) -> bool {
        self.blocks.iter().all(|b| {
            b.iter()
                .all(|&x| coarser.class_of(x) == coarser.class_of(b[0]))
        })
    }

    /// Greatest common refinement (meet of the two equivalences).
    pub fn meet(&self, other: &RelationPartition, name: impl Into<String>) -> RelationPartition {
        let keys: Vec<(u32, u32)> = (0..self.len() as u32)
            .map(|i| (self.class_of(i), other.class_of(i)))
            .collect();
        Self::from_keys(name, keys)
    }

    /// Smallest common coarsening (join of the two equivalences).
    pub fn join(&self, other: &RelationPartition, name: impl Into<String>) -> RelationPartition {
        let mut uf = UnionFind::new(self.len());
        for part in [self, other] {
            for b in &part.blocks {
                for w in b.windows(2) {
                    uf.union(w[0] as usize, w[1] as usize);
                }
            }
        }
        uf.into_partition(name.into())
    }

    pub fn renamed(mut self, name: impl Into<String>) -> RelationPartition {
        self.name = name.into();
        self
    }

    pub fn to_csv(&self, table: &SemigroupTable) -> String {
        let mut out = String::from("class,element,label\n");
        for (c, b) in self.blocks.iter().enumerate() {
            for &i in b {
                out.push_str(&format!("{c},{i},{}\n", table.elements[i as usize].label()));
            }
        }
        out
    }

    pub fn to_dot(&self, table: &SemigroupTable) -> String {
        let mut out = format!("graph \"{}\" {{\n", self.name);
        out.push_str("  node [shape=box];\n");
        for (c, b) in self.blocks.iter().enumerate() {
            let rep = table.elements[b[0] as usize].label();
            out.push_str(&format!(
                "  c{c} [label=\"{} class {c}\\n{} elements\\nrep {}\"];\n",
                self.name,
                b.len(),
                rep
            ));
        }
        out.push_str("}\n");
        out
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // smaller root wins, keeping blocks anchored at least elements
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    fn into_partition(mut self, name: String) -> RelationPartition {
        let n = self.parent.len();
        let mut groups: HashMap<usize, Vec<u32>> = HashMap::new();
        for x in 0..n {
            let r = self.find(x);
            groups.entry(r).or_default().push(x as u32);
        }
        RelationPartition::canonicalize(name, groups.into_values().collect(), n)
    }
}

// Pair predicates for the classical relations, exposed so witness-level
// tests can probe single pairs.

pub fn r_related(t: &SemigroupTable, a: u32, b: u32) -> bool {
    t.kernel_ids[a as usize] == t.kernel_ids[b as usize]
}

pub fn l_related(t: &SemigroupTable, a: u32, b: u32) -> bool {
    a == b
        || (t.q_mask[a as usize]
            && t.q_mask[b as usize]
            && t.image_ids[a as usize] == t.image_ids[b as usize])
}

pub fn d_related(t: &SemigroupTable, a: u32, b: u32) -> bool {
    r_related(t, a, b)
        || (t.q_mask[a as usize]
            && t.q_mask[b as usize]
            && t.ranks[a as usize] == t.ranks[b as usize])
}

pub fn j_related(t: &SemigroupTable, a: u32, b: u32) -> bool {
    r_related(t, a, b)
        || (t.ranks[a as usize] == t.range_ranks[a as usize]
            && t.range_ranks[a as usize] == t.range_ranks[b as usize]
            && t.range_ranks[b as usize] == t.ranks[b as usize])
}

/// R: equal kernels.
pub fn rel_r(t: &SemigroupTable) -> RelationPartition {
    RelationPartition::from_keys(RelKind::R.name(), t.kernel_ids.clone())
}

/// L: equality, or equal images with both elements in Q.
pub fn rel_l(t: &SemigroupTable) -> RelationPartition {
    #[derive(Hash, PartialEq, Eq)]
    enum Key {
        InQ(u32),
        Singleton(u32),
    }
    let keys: Vec<Key> = (0..t.len() as u32)
        .map(|i| {
            if t.q_mask[i as usize] {
                Key::InQ(t.image_ids[i as usize])
            } else {
                Key::Singleton(i)
            }
        })
        .collect();
    RelationPartition::from_keys(RelKind::L.name(), keys)
}

/// H = R meet L.
pub fn rel_h(t: &SemigroupTable) -> RelationPartition {
    rel_r(t).meet(&rel_l(t), RelKind::H.name())
}

/// D: equal kernels, or equal ranks with both elements in Q.
pub fn rel_d(t: &SemigroupTable) -> RelationPartition {
    RelationPartition::from_pairs(RelKind::D.name(), t.len(), |a, b| d_related(t, a, b))
}

/// J: equal kernels, or rank and range-rank all coincide across the pair.
pub fn rel_j(t: &SemigroupTable) -> RelationPartition {
    RelationPartition::from_pairs(RelKind::J.name(), t.len(), |a, b| j_related(t, a, b))
}

/// One D-class of the eggbox diagram: a grid of H-classes indexed by
/// (R-class, L-class) restricted to the D-class.
#[derive(Debug, Clone, Serialize)]
pub struct DClassBox {
    pub representative: u32,
    pub regular: bool,
    /// `grid[row][col]` is the H-class at (R-class row, L-class col)
    pub grid: Vec<Vec<Vec<u32>>>,
    /// (row, col) positions holding an idempotent
    pub idempotents: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EggboxDiagram {
    pub d_classes: Vec<DClassBox>,
}

/// Builds the eggbox diagram from the closed-form partitions.
pub fn eggbox(t: &SemigroupTable) -> EggboxDiagram {
    let r = rel_r(t);
    let l = rel_l(t);
    let d = rel_d(t);
    let mut d_classes = Vec::new();
    for block in &d.blocks {
        let mut rows: Vec<u32> = block.iter().map(|&i| r.class_of(i)).collect();
        rows.sort_unstable();
        rows.dedup();
        let mut cols: Vec<u32> = block.iter().map(|&i| l.class_of(i)).collect();
        cols.sort_unstable();
        cols.dedup();
        let mut grid: Vec<Vec<Vec<u32>>> = vec![vec![Vec::new(); cols.len()]; rows.len()];
        for &i in block {
            let ri = rows.binary_search(&r.class_of(i)).unwrap();
            let ci = cols.binary_search(&l.class_of(i)).unwrap();
            grid[ri][ci].push(i);
        }
        let mut idempotents = Vec::new();
        let mut regular = false;
        for (ri, row) in grid.iter().enumerate() {
            for (ci, cell) in row.iter().enumerate() {
                debug_assert!(!cell.is_empty(), "empty eggbox cell");
                if cell.iter().any(|&i| t.idem_mask[i as usize]) {
                    idempotents.push((ri, ci));
                    regular = true;
                }
            }
        }
        d_classes.push(DClassBox {
            representative: block[0],
            regular,
            grid,
            idempotents,
        });
    }
    EggboxDiagram { d_classes }
}

impl EggboxDiagram {
    /// DOT rendering with one subgraph per D-class and one node per
    /// H-class cell; idempotent cells are starred.
    pub fn to_dot(&self, t: &SemigroupTable) -> String {
        let mut out = String::from("digraph eggbox {\n  node [shape=box];\n");
        for (k, d) in self.d_classes.iter().enumerate() {
            out.push_str(&format!("  subgraph cluster_d{k} {{\n"));
            out.push_str(&format!(
                "    label=\"D{k} rep {} {}\";\n",
                t.elements[d.representative as usize].label(),
                if d.regular {
                    "(regular)"
                } else {
                    "(non-regular)"
                },
            ));
            for (ri, row) in d.grid.iter().enumerate() {
                for (ci, cell) in row.iter().enumerate() {
                    let star = if d.idempotents.contains(&(ri, ci)) {
                        "*"
                    } else {
                        ""
                    };
                    out.push_str(&format!(
                        "    h{k}_{ri}_{ci} [label=\"{}{star}\"];\n",
                        cell.len()
                    ));
                }
                // invisible edges keep each R-class on one row
                for ci in 1..row.len() {
                    out.push_str(&format!(
                        "    h{k}_{ri}_{} -> h{k}_{ri}_{ci} [style=invis];\n",
                        ci - 1
                    ));
                }
                out.push_str(&format!(
                    "    {{ rank=same; {} }}\n",
                    (0..row.len())
                        .map(|ci| format!("h{k}_{ri}_{ci};"))
                        .collect::<Vec<_>>()
                        .join(" ")
                ));
            }
            out.push_str("  }\n");
        }
        out.push_str("}\n");
        out
    }
}
