//! Textual knot presentations and knot tables.
//!
//! Grammars:
//!
//! * **PD code**: `[[i,j,k,l],...]`. Each quadruple lists the edge labels
//!   around a crossing counterclockwise, starting from the incoming
//!   under-strand. Labels are `1..=2n`, each used exactly twice, and the
//!   diagram must have a single component. `[]` is the unknot.
//! * **Gauss code**: whitespace separated tokens `O<label><sign>` or
//!   `U<label><sign>`, e.g. `O1+ U2+ O3+ U1+ O2+ U3+`. `O` is the over-pass
//!   (arrow tail), `U` the under-pass (arrow head). Each label occurs once as
//!   `O` and once as `U`, with the same sign. The empty string is the unknot.
//! * **DT code**: whitespace or comma separated even integers, negative
//!   entries marking crossings that break alternation.

mod dt;
mod gauss;
mod pd;
mod table;

pub use dt::parse_dt;
pub use gauss::{parse_gauss, render_gauss};
pub use pd::{gauss_to_pd, parse_pd, pd_to_gauss, Crossing, PlanarDiagram};
pub use table::{builtin_table, load_table, parse_table_csv, parse_table_json, table_to_json, KnotTableEntry};
