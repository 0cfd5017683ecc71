//! File formats, SVG export and the command line for `psembed-core`.

pub mod cli;
pub mod format;
pub mod svg;
