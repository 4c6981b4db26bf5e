//! Group file formats, the constructor expression language, the shipped
//! corpus and report serialization.

mod builtin;
mod expr;
mod format;
mod report;

pub use builtin::builtin_corpus;
pub use expr::{eval_expression, parse_expression, render_expression, ExprError, Term};
pub use format::{
    parse_group_file, parse_manifest, render_manifest, BuildError, BuildOptions, CorpusError,
    CorpusManifest, GroupSource, GroupSpec, ParseError,
};
pub use report::{render_report, tsv_row, write_report, ReportFormat, TSV_HEADER};
