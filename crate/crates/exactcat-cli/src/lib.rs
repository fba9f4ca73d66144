//! File formats shared by the command line tool and its tests.

pub mod schema;
