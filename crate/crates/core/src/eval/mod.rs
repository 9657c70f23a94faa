//! Ground truth, scoring and figure assembly.

mod fixture;
mod glyphs;
mod montage;
mod score;
mod synthetic;

pub use fixture::{
    fig3_image, table1_report, Table1Row, FIG3_GRID, TABLE1_PUBLISHED, TABLE1_TOLERANCE,
};
pub use montage::{montage, Montage, PanelLabel, SEPARATOR};
pub use score::{score, EvalReport, CSV_HEADER, DEFAULT_TOLERANCE_RADIUS};
pub use synthetic::{make_synthetic, Synthetic, SyntheticKind, KIND_NAMES};
