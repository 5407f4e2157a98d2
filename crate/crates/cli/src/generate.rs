//! Seeded instance generators writing the file formats of [`crate::instance`].
//!
//! Randomness comes from PCG-XSL-RR 128/64 (`Pcg64`) seeded with the given
//! 64-bit seed, so the same seed gives the same file everywhere.

use capdp::gen::{self, KnapsackFamily, Rng64};
use capdp::{gen_perturbed_squared_monge, gen_random_monge, gen_squared_monge, Ext};

use crate::instance::{
    format_dag, format_items, format_monge, format_sequence, DagInstance, MongeInstance, SequenceInstance,
};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Family {
    FewDistinct,
    SmallM,
    SmallV,
    Uncorrelated,
}

impl Family {
    /// `param` is the number of distinct weights, the weight cap or the
    /// value cap, depending on the family.
    pub fn with_param(self, param: usize) -> KnapsackFamily {
        match self {
            Family::FewDistinct => KnapsackFamily::FewDistinct { distinct: param },
            Family::SmallM => KnapsackFamily::SmallM { max_weight: param },
            Family::SmallV => KnapsackFamily::SmallV { max_value: param as i64 },
            Family::Uncorrelated => KnapsackFamily::Uncorrelated,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum DagShape {
    /// Unit-interval order; always has the 2-path property.
    Semiorder,
    /// Interval order; transitive, 2-path property may fail.
    Interval,
    /// Closure of a random DAG.
    Transitive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum MongeShape {
    Squared,
    Perturbed,
    Random,
}

/// Knapsack or unbounded items; both kinds share the format.
pub fn items(family: Family, param: usize, n: usize, range: usize, capacity: usize, seed: u64) -> String {
    let mut rng = Rng64::new(seed);
    format_items(&gen::knapsack_items(&mut rng, family.with_param(param), n, range), capacity)
}

/// DAG of the given shape on `n` inner vertices with rewards in
/// `-range..=range`, plus a source and sink joined to everything.
pub fn dag(shape: DagShape, n: usize, range: i64, seed: u64) -> String {
    let mut rng = Rng64::new(seed);
    let g = match shape {
        DagShape::Semiorder => gen::semiorder_dag(&mut rng, n, 4 * n as i64 + 1, 3),
        DagShape::Interval => gen::interval_order_dag(&mut rng, n, 4 * n as i64 + 1, 8),
        DagShape::Transitive => gen::random_transitive_dag(&mut rng, n, 1, 3),
    };
    let g = g.with_rewards(gen::rewards(&mut rng, n, -range, range)).expect("same vertex count");
    let (graph, source, sink) = g.with_universal_endpoints();
    format_dag(&DagInstance { graph, source, sink })
}

/// Complete Monge graph on `n + 1` vertices.
pub fn monge(shape: MongeShape, n: usize, spread: i64, seed: u64) -> Result<String, CliError> {
    let graph = match shape {
        MongeShape::Squared => gen_squared_monge(n),
        MongeShape::Perturbed => gen_perturbed_squared_monge(n, seed, spread)?,
        MongeShape::Random => gen_random_monge(&mut Rng64::new(seed), n, spread)?,
    };
    Ok(format_monge(&MongeInstance { graph, source: 0, sink: n }))
}

/// `n` entries uniform in `-range..=range`.
pub fn sequence(n: usize, k: usize, delta: usize, range: i64, seed: u64) -> String {
    let mut rng = Rng64::new(seed);
    let values = gen::rewards(&mut rng, n, -range, range).into_iter().filter_map(Ext::finite).collect();
    format_sequence(&SequenceInstance { values, k, delta })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{parse_instance, Kind};

    #[test]
    fn generated_files_parse() {
        for fam in [Family::FewDistinct, Family::SmallM, Family::SmallV, Family::Uncorrelated] {
            let src = items(fam, 4, 30, 50, 100, 7);
            parse_instance(Kind::Knapsack, &src, false).unwrap();
            parse_instance(Kind::Unbounded, &src, false).unwrap();
        }
        for shape in [DagShape::Semiorder, DagShape::Interval, DagShape::Transitive] {
            parse_instance(Kind::Dag, &dag(shape, 12, 20, 3), false).unwrap();
        }
        for shape in [MongeShape::Squared, MongeShape::Perturbed, MongeShape::Random] {
            parse_instance(Kind::Monge, &monge(shape, 10, 3, 5).unwrap(), false).unwrap();
        }
        parse_instance(Kind::Sequence, &sequence(40, 3, 4, 100, 1), false).unwrap();
    }

    #[test]
    fn same_seed_same_file() {
        assert_eq!(items(Family::Uncorrelated, 0, 20, 9, 40, 11), items(Family::Uncorrelated, 0, 20, 9, 40, 11));
        assert_ne!(items(Family::Uncorrelated, 0, 20, 9, 40, 11), items(Family::Uncorrelated, 0, 20, 9, 40, 12));
        assert_eq!(dag(DagShape::Interval, 9, 5, 2), dag(DagShape::Interval, 9, 5, 2));
    }
}
