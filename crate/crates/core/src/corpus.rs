//! The bundled instance corpus: set models covering codimensions 1 to 3,
//! vector models over GF(2) and GF(3) covering both minimal-rank cases
//! and both branches of the left-congruence dichotomy, plus two regular
//! controls (range equal to the whole algebra, singleton range).

use crate::algebra::AlgebraInstance;
use std::sync::Arc;

pub struct CorpusEntry {
    pub name: &'static str,
    pub instance: Arc<AlgebraInstance>,
}

fn set(name: &'static str, n: usize, range: &[u32]) -> CorpusEntry {
    CorpusEntry {
        name,
        instance: Arc::new(AlgebraInstance::set(n, range).unwrap()),
    }
}

fn vec(name: &'static str, p: u8, dim: usize, w: usize) -> CorpusEntry {
    let gens: Vec<Vec<u8>> = (0..w)
        .map(|i| (0..dim).map(|j| u8::from(i == j)).collect())
        .collect();
    CorpusEntry {
        name,
        instance: Arc::new(AlgebraInstance::vector_space(p, dim, &gens).unwrap()),
    }
}

/// Every bundled instance, non-regular ones first. The 5-element set
/// keeps its range at the last three points to match the fixed maps used
/// by the non-commutation example.
pub fn corpus() -> Vec<CorpusEntry> {
    vec![
        set("set_3_2", 3, &[0, 1]),
        set("set_4_2", 4, &[0, 1]),
        set("set_4_3", 4, &[0, 1, 2]),
        set("set_5_2", 5, &[0, 1]),
        set("set_5_3", 5, &[2, 3, 4]),
        vec("vec_2_2_1", 2, 2, 1),
        vec("vec_2_3_1", 2, 3, 1),
        vec("vec_2_3_2", 2, 3, 2),
        vec("vec_3_2_1", 3, 2, 1),
        set("set_3_3", 3, &[0, 1, 2]),
        set("set_4_1", 4, &[0]),
    ]
}

/// The instances satisfying the standing assumptions.
pub fn non_regular_corpus() -> Vec<CorpusEntry> {
    corpus()
        .into_iter()
        .filter(|e| !crate::semigroup::classify_instance(&e.instance).regular)
        .collect()
}

pub fn by_name(name: &str) -> Option<CorpusEntry> {
    corpus().into_iter().find(|e| e.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::SemigroupTable;

    #[test]
    fn corpus_shapes() {
        let sizes: Vec<(String, u128)> = corpus()
            .iter()
            .map(|e| {
                (
                    e.name.to_string(),
                    SemigroupTable::element_count(&e.instance),
                )
            })
            .collect();
        let expected: Vec<(&str, u128)> = vec![
            ("set_3_2", 8),
            ("set_4_2", 16),
            ("set_4_3", 81),
            ("set_5_2", 32),
            ("set_5_3", 243),
            ("vec_2_2_1", 4),
            ("vec_2_3_1", 8),
            ("vec_2_3_2", 64),
            ("vec_3_2_1", 9),
            ("set_3_3", 27),
            ("set_4_1", 1),
        ];
        assert_eq!(
            sizes,
            expected
                .into_iter()
                .map(|(n, c)| (n.to_string(), c))
                .collect::<Vec<_>>()
        );
    }

    #[test]
    fn nine_non_regular_instances() {
        assert_eq!(non_regular_corpus().len(), 9);
    }

    #[test]
    fn codimension_coverage() {
        let codims: Vec<usize> = non_regular_corpus()
            .iter()
            .map(|e| e.instance.codim())
            .collect();
        assert!(codims.contains(&1));
        assert!(codims.contains(&2));
        assert!(codims.contains(&3));
    }
}
