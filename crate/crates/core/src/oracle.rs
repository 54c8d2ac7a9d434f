//! Brute-force ground truth, independent of every closed-form
//! characterisation: Green's relations from principal ideals, the starred
//! relations from translation fingerprints, the tilde relations from
//! idempotent identity sets, saturated-ideal fixpoints for the starred
//! and tilde J relations, and exhaustive ideal enumeration.

use crate::error::{Error, Result};
use crate::greens::RelationPartition;
use crate::semigroup::SemigroupTable;
use std::collections::HashMap;

/// Fixed-capacity bit set over element indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(n: usize) -> BitSet {
        BitSet {
            words: vec![0; n.div_ceil(64)],
        }
    }

    pub fn insert(&mut self, i: u32) -> bool {
        let (w, b) = (i as usize / 64, i as usize % 64);
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn contains(&self, i: u32) -> bool {
        self.words[i as usize / 64] & (1 << (i as usize % 64)) != 0
    }

    pub fn union_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn iter(&self, n: usize) -> impl Iterator<Item = u32> + '_ {
        (0..n as u32).filter(move |&i| self.contains(i))
    }

    pub fn to_vec(&self, n: usize) -> Vec<u32> {
        self.iter(n).collect()
    }

    pub fn from_indices(n: usize, ids: &[u32]) -> BitSet {
        let mut s = BitSet::new(n);
        for &i in ids {
            s.insert(i);
        }
        s
    }
}

// ---------------------------------------------------------------------
// Classical Green's relations by principal ideals
// ---------------------------------------------------------------------

fn principal_right(t: &SemigroupTable, a: u32) -> BitSet {
    let n = t.len();
    let mut s = BitSet::new(n);
    s.insert(a);
    for x in 0..n as u32 {
        s.insert(t.product(a, x));
    }
    s
}

fn principal_left(t: &SemigroupTable, a: u32) -> BitSet {
    let n = t.len();
    let mut s = BitSet::new(n);
    s.insert(a);
    for x in 0..n as u32 {
        s.insert(t.product(x, a));
    }
    s
}

fn principal_two_sided(t: &SemigroupTable, a: u32) -> BitSet {
    let n = t.len();
    let right = principal_right(t, a);
    let mut s = BitSet::new(n);
    for g in right.iter(n) {
        s.union_with(&principal_left(t, g));
    }
    s
}

/// R by equality of principal right ideals.
pub fn oracle_r(t: &SemigroupTable) -> RelationPartition {
    let keys: Vec<BitSet> = (0..t.len() as u32).map(|a| principal_right(t, a)).collect();
    RelationPartition::from_keys("R", keys)
}

/// L by equality of principal left ideals.
pub fn oracle_l(t: &SemigroupTable) -> RelationPartition {
    let keys: Vec<BitSet> = (0..t.len() as u32).map(|a| principal_left(t, a)).collect();
    RelationPartition::from_keys("L", keys)
}

/// J by equality of principal two-sided ideals.
pub fn oracle_j(t: &SemigroupTable) -> RelationPartition {
    let keys: Vec<BitSet> = (0..t.len() as u32)
        .map(|a| principal_two_sided(t, a))
        .collect();
    RelationPartition::from_keys("J", keys)
}

pub fn oracle_h(t: &SemigroupTable) -> RelationPartition {
    oracle_r(t).meet(&oracle_l(t), "H")
}

/// D as the join of R and L. For a finite semigroup this equals the
/// relational composition in either order.
pub fn oracle_d(t: &SemigroupTable) -> RelationPartition {
    join(&oracle_r(t), &oracle_l(t), "D")
}

/// Smallest common coarsening of two partitions over the same index set.
pub fn join(a: &RelationPartition, b: &RelationPartition, name: &str) -> RelationPartition {
    a.join(b, name)
}

// ---------------------------------------------------------------------
// Starred relations by translation fingerprints
// ---------------------------------------------------------------------

/// First-occurrence fiber key of the translation x -> a*x over S^1: the
/// canonical form of the partition it induces on S^1 indices. Two
/// indices x, y get the same key entry iff a*x = a*y, so fingerprint
/// equality is exactly the defining cancellation condition for L*.
pub fn left_translation_fingerprint(t: &SemigroupTable, a: u32) -> Vec<u32> {
    let n = t.len() as u32;
    let mut seen: HashMap<u32, u32> = HashMap::new();
    let mut key = Vec::with_capacity(n as usize + 1);
    for x in 0..=n {
        let v = t.product1(a, x);
        let next = seen.len() as u32;
        key.push(*seen.entry(v).or_insert(next));
    }
    key
}

/// Dual fingerprint for the translation x -> x*a, deciding R*.
pub fn right_translation_fingerprint(t: &SemigroupTable, a: u32) -> Vec<u32> {
    let n = t.len() as u32;
    let mut seen: HashMap<u32, u32> = HashMap::new();
    let mut key = Vec::with_capacity(n as usize + 1);
    for x in 0..=n {
        let v = t.product1(x, a);
        let next = seen.len() as u32;
        key.push(*seen.entry(v).or_insert(next));
    }
    key
}

pub fn oracle_lstar(t: &SemigroupTable) -> RelationPartition {
    let keys: Vec<Vec<u32>> = (0..t.len() as u32)
        .map(|a| left_translation_fingerprint(t, a))
        .collect();
    RelationPartition::from_keys("Lstar", keys)
}

pub fn oracle_rstar(t: &SemigroupTable) -> RelationPartition {
    let keys: Vec<Vec<u32>> = (0..t.len() as u32)
        .map(|a| right_translation_fingerprint(t, a))
        .collect();
    RelationPartition::from_keys("Rstar", keys)
}

/// Definitional quantifier scan for L*: for all x, y in S^1,
/// a*x = a*y iff b*x = b*y. Kept as a cross-check of the fingerprint
/// encoding on small tables.
pub fn oracle_lstar_scan(t: &SemigroupTable) -> RelationPartition {
    let n = t.len() as u32;
    RelationPartition::from_pairs("Lstar", t.len(), |a, b| {
        (0..=n).all(|x| {
            (0..=n).all(|y| {
                (t.product1(a, x) == t.product1(a, y)) == (t.product1(b, x) == t.product1(b, y))
            })
        })
    })
}

pub fn oracle_rstar_scan(t: &SemigroupTable) -> RelationPartition {
    let n = t.len() as u32;
    RelationPartition::from_pairs("Rstar", t.len(), |a, b| {
        (0..=n).all(|x| {
            (0..=n).all(|y| {
                (t.product1(x, a) == t.product1(y, a)) == (t.product1(x, b) == t.product1(y, b))
            })
        })
    })
}

// ---------------------------------------------------------------------
// Tilde relations by idempotent identity sets
// ---------------------------------------------------------------------

pub fn oracle_ltilde(t: &SemigroupTable) -> RelationPartition {
    let idems = t.idempotent_indices();
    let keys: Vec<Vec<u32>> = (0..t.len() as u32)
        .map(|a| {
            idems
                .iter()
                .copied()
                .filter(|&f| t.product(a, f) == a)
                .collect()
        })
        .collect();
    RelationPartition::from_keys("Ltilde", keys)
}

pub fn oracle_rtilde(t: &SemigroupTable) -> RelationPartition {
    let idems = t.idempotent_indices();
    let keys: Vec<Vec<u32>> = (0..t.len() as u32)
        .map(|a| {
            idems
                .iter()
                .copied()
                .filter(|&f| t.product(f, a) == a)
                .collect()
        })
        .collect();
    RelationPartition::from_keys("Rtilde", keys)
}

// ---------------------------------------------------------------------
// Saturated-ideal fixpoints for J* and J~
// ---------------------------------------------------------------------

/// Least ideal containing `a` that is a union of classes of both given
/// partitions: alternately close under two-sided ideal generation and
/// class saturation until stable.
fn saturated_ideal(
    t: &SemigroupTable,
    principal: &[BitSet],
    left_classes: &RelationPartition,
    right_classes: &RelationPartition,
    a: u32,
) -> BitSet {
    let n = t.len();
    let mut current = BitSet::new(n);
    current.insert(a);
    loop {
        let mut next = BitSet::new(n);
        for g in current.iter(n) {
            next.union_with(&principal[g as usize]);
        }
        for part in [left_classes, right_classes] {
            let mut saturated = BitSet::new(n);
            for g in next.iter(n) {
                for &m in &part.blocks[part.class_of(g) as usize] {
                    saturated.insert(m);
                }
            }
            next = saturated;
        }
        if next == current {
            return current;
        }
        current = next;
    }
}

fn jstar_like(
    t: &SemigroupTable,
    left: &RelationPartition,
    right: &RelationPartition,
    name: &str,
) -> RelationPartition {
    let n = t.len();
    let principal: Vec<BitSet> = (0..n as u32).map(|a| principal_two_sided(t, a)).collect();
    let keys: Vec<BitSet> = (0..n as u32)
        .map(|a| saturated_ideal(t, &principal, left, right, a))
        .collect();
    // Saturating by the join classes instead must reach the same
    // fixpoint; the two-route agreement is part of the oracle contract.
    let d = join(left, right, "join");
    for a in 0..n as u32 {
        let via_join = saturated_ideal(t, &principal, &d, &d, a);
        assert_eq!(
            via_join, keys[a as usize],
            "saturation routes disagree at {a}"
        );
    }
    RelationPartition::from_keys(name, keys)
}

/// J* from the saturated-ideal fixpoint with L*- and R*-class closure.
pub fn oracle_jstar(t: &SemigroupTable) -> RelationPartition {
    jstar_like(t, &oracle_lstar(t), &oracle_rstar(t), "Jstar")
}

/// J~ from the saturated-ideal fixpoint with the tilde classes.
pub fn oracle_jtilde(t: &SemigroupTable) -> RelationPartition {
    jstar_like(t, &oracle_ltilde(t), &oracle_rtilde(t), "Jtilde")
}

/// The principal saturated ideal of a single element, for block-level
/// assertions.
pub fn jstar_ideal_of(t: &SemigroupTable, a: u32) -> Vec<u32> {
    let n = t.len();
    let principal: Vec<BitSet> = (0..n as u32).map(|x| principal_two_sided(t, x)).collect();
    saturated_ideal(t, &principal, &oracle_lstar(t), &oracle_rstar(t), a).to_vec(n)
}

// ---------------------------------------------------------------------
// Ideal enumeration and congruence scans
// ---------------------------------------------------------------------

/// The complete lattice of two-sided ideals, as sorted element-index
/// sets ordered by (size, content). Every ideal is a union of principal
/// ideals, so the enumeration closes the distinct principal ideals under
/// union; it refuses to run when there are more than `max_principal`
/// distinct principal ideals.
pub fn oracle_ideals(t: &SemigroupTable, max_principal: usize) -> Result<Vec<Vec<u32>>> {
    let n = t.len();
    let mut principal: Vec<BitSet> = Vec::new();
    for a in 0..n as u32 {
        let p = principal_two_sided(t, a);
        if !principal.contains(&p) {
            principal.push(p);
        }
    }
    if principal.len() > max_principal {
        return Err(Error::TooManyPrincipalIdeals {
            count: principal.len(),
            max: max_principal,
        });
    }
    let mut ideals: Vec<BitSet> = Vec::new();
    for mask in 1u32..(1 << principal.len()) {
        let mut u = BitSet::new(n);
        for (i, p) in principal.iter().enumerate() {
            if mask >> i & 1 == 1 {
                u.union_with(p);
            }
        }
        if !ideals.contains(&u) {
            ideals.push(u);
        }
    }
    let mut out: Vec<Vec<u32>> = ideals.iter().map(|s| s.to_vec(n)).collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// Two-sided closure test for an arbitrary element set.
pub fn is_ideal(t: &SemigroupTable, set: &[u32]) -> bool {
    if set.is_empty() {
        return false;
    }
    let n = t.len();
    let members = BitSet::from_indices(n, set);
    set.iter().all(|&a| {
        (0..n as u32)
            .all(|x| members.contains(t.product(a, x)) && members.contains(t.product(x, a)))
    })
}

/// True iff the partition is preserved by all left translations.
pub fn is_left_congruence(t: &SemigroupTable, p: &RelationPartition) -> bool {
    let n = t.len() as u32;
    p.blocks.iter().all(|block| {
        block
            .windows(2)
            .all(|w| (0..n).all(|g| p.same_class(t.product(g, w[0]), t.product(g, w[1]))))
    })
}

/// True iff the partition is preserved by all right translations.
pub fn is_right_congruence(t: &SemigroupTable, p: &RelationPartition) -> bool {
    let n = t.len() as u32;
    p.blocks.iter().all(|block| {
        block
            .windows(2)
            .all(|w| (0..n).all(|g| p.same_class(t.product(w[0], g), t.product(w[1], g))))
    })
}

/// Dual-route regularity mask: for each element, whether some inner
/// inverse exists in the whole semigroup.
pub fn regular_mask_by_search(t: &SemigroupTable) -> Vec<bool> {
    (0..t.len() as u32)
        .map(|a| t.is_regular_element(a))
        .collect()
}
