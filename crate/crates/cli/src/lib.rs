//! Report types and DOT rendering behind the `bnsep` binary. Kept in a
//! library so that reports can be parsed back by other tools and tests.

pub mod dot;
pub mod report;
