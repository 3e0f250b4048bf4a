//! Library surface of the pcurv command line tool: expression parsing,
//! subcommand dispatch and structured report emission.

pub mod commands;
pub mod parser;
pub mod report;

pub use commands::{run, Cli, CmdError, Command};
pub use parser::{
    parse_bivar_poly, parse_expr, parse_multivariate, parse_operator, parse_poly, parse_ratfun,
    parse_rational_list, ExprAst, ParseError,
};
pub use report::Report;
