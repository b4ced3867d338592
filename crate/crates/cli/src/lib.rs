//! Document formats used by the `invmat` command-line tool.

pub mod schema;
