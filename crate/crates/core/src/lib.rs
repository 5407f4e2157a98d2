pub mod concave;
pub mod dag;
pub mod error;
pub mod gen;
pub mod knapsack;
pub mod lagrange;
pub mod monge;
pub mod scalar;
pub mod sequence;
pub mod smawk;
pub mod unbounded;

pub use concave::{conv_concave, conv_kstep_concave, sliding_window_max};
pub use dag::{
    check_property_p, counterexample_rewards, dp_hop_profile, knapsack_to_dag, knapsack_to_transitive_dag,
    lagrangian_probe, separated_graph, solve_lagrangian, solve_sparse_separated, sparse_separated_dp, HopProfile,
    KnapsackGadget, NodeWeightedDag, PropertyPWitness,
};
pub use error::{Error, Result};
pub use knapsack::{
    greedy_class_profile, solve_knapsack_bellman, solve_knapsack_td, solve_knapsack_value_domain, Item,
    KnapsackInstance, WeightClassProfile,
};
pub use lagrange::{BudgetMode, LagrangianOutcome, LagrangianSolution};
pub use monge::{
    canonical_first_hop, gen_perturbed_squared_monge, gen_random_monge, gen_squared_monge, monge_all_k,
    monge_all_k_independent, monge_all_targets, monge_best_path, monge_dp_all_targets, monge_dp_profile, monge_probe,
    MongeDag,
};
pub use scalar::Scalar;
pub use sequence::{
    check_concave, check_kstep_concave, naive_maxplus_conv, naive_minplus_conv, ConcavityWitness, Cost, Ext,
    ValueProfile,
};
pub use smawk::{brute_force_row_maxima, is_monge, smawk_row_maxima, FnMatrix, MatrixOracle};
pub use unbounded::{
    base_window, solve_unbounded_doubling, solve_unbounded_dp, solve_unbounded_steinitz, solve_unbounded_value_domain,
    unbounded_doubling_window, DensityChampion, UnboundedInstance,
};

/// Extended 64-bit value.
pub type Value = Ext<i64>;
/// 64-bit capacity- or hop-indexed profile.
pub type Profile = ValueProfile<i64>;
/// 64-bit 0/1 knapsack instance.
pub type Knapsack = KnapsackInstance<i64>;
/// 64-bit unbounded knapsack instance.
pub type Unbounded = UnboundedInstance<i64>;
/// 64-bit Monge-weighted DAG.
pub type Monge = MongeDag<i64>;
/// 64-bit node-weighted DAG.
pub type Dag = NodeWeightedDag<i64>;
