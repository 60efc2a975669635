//! The generator `G`, its range census and the fooling harness.

pub mod fooling;
pub mod generator;
pub mod transducer;

pub use fooling::{fool_stat, fool_suite, fooling_report, Distinguisher, FoolSuiteReport, FoolingReport, FoolingRow};
pub use generator::{
    g_generate, g_packed, g_preimage_census, g_range, g_range_equals_ip, generator_report, GeneratorReport, GeneratorRow,
};
pub use transducer::g_transducer;
