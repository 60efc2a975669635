//! Swapping partitions, inner-product discrepancy and prefix-window recurrences.

pub mod discrepancy;
pub mod recurrence;
pub mod swap;

pub use discrepancy::{discrepancy_bound_check, ip_discrepancy, DiscrepancyReport, DiscrepancyTrial};
pub use recurrence::{
    a_brute, a_table, delta, delta_check, growth_fit, max_choice_check, sum_recurrence_check, t_count, GrowthFit,
    MIndexSeries, RecurrenceTable,
};
pub use swap::{swap_partition, swap_verify, SwapBlock, SwapPartition};
