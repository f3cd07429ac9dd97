//! A small line-oriented language for declaring algebras, tensors and
//! cochains and running checks on them.

pub mod ast;
pub mod checks;
pub mod export;
pub mod lexer;
pub mod load;
pub mod parser;
pub mod report;

pub use ast::{Check, Expr, Statement, WorkbenchFile};
pub use checks::{run, run_check, run_file, RunOptions, MAX_ORDER};
pub use lexer::Span;
pub use load::{load, Session};
pub use parser::{parse, parse_expr};
pub use report::{CheckReport, Report, Status};
