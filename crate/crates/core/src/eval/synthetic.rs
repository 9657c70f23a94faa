//! Two-level synthetic scenes with exact ground truth.
//!
//! Ground truth follows the stddev detector's convention: origin `(i, j)` is
//! an edge when the 2x2 window anchored there straddles a boundary between
//! the two intensity levels.

use std::fmt;

use crate::error::{Error, Result};
use crate::eval::glyphs::{glyph, glyph_bit, GLYPH_HEIGHT, GLYPH_WIDTH};
use crate::image::{EdgeMap, GrayImage};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SyntheticKind {
    Constant,
    /// Dark for columns `< column`, bright from `column` on.
    VStep {
        column: usize,
    },
    /// Dark for rows `< row`, bright from `row` on.
    HStep {
        row: usize,
    },
    /// Bright on and above the main diagonal (`col >= row`).
    Diagonal,
    /// Square cells of side `cell`, bright where `row/cell + col/cell` is even.
    Checkerboard {
        cell: usize,
    },
    /// Bright text on a dark page, `scale` pixels per glyph dot. The text is
    /// repeated until the page is full.
    Glyph {
        text: String,
        scale: usize,
    },
    /// Vertical step over the top half, checkerboard over the bottom half.
    Composite {
        cell: usize,
    },
}

pub const KIND_NAMES: [&str; 7] = [
    "constant",
    "vstep",
    "hstep",
    "diagonal",
    "checkerboard",
    "glyph",
    "composite",
];

impl SyntheticKind {
    /// Resolves a kind by name with size-dependent default parameters.
    pub fn from_name(name: &str, width: usize, height: usize) -> Result<Self> {
        let cell = if width.min(height) >= 32 { 8 } else { 2 };
        Ok(match name {
            "constant" => SyntheticKind::Constant,
            "vstep" => SyntheticKind::VStep { column: width / 2 },
            "hstep" => SyntheticKind::HStep { row: height / 2 },
            "diagonal" => SyntheticKind::Diagonal,
            "checkerboard" => SyntheticKind::Checkerboard { cell },
            "glyph" => SyntheticKind::Glyph {
                text: "EDGE".into(),
                scale: if width.min(height) >= 64 { 2 } else { 1 },
            },
            "composite" => SyntheticKind::Composite { cell },
            other => {
                return Err(Error::argument(format!(
                    "unknown synthetic kind '{other}', expected one of {}",
                    KIND_NAMES.join(", ")
                )))
            }
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            SyntheticKind::Constant => "constant",
            SyntheticKind::VStep { .. } => "vstep",
            SyntheticKind::HStep { .. } => "hstep",
            SyntheticKind::Diagonal => "diagonal",
            SyntheticKind::Checkerboard { .. } => "checkerboard",
            SyntheticKind::Glyph { .. } => "glyph",
            SyntheticKind::Composite { .. } => "composite",
        }
    }
}

impl fmt::Display for SyntheticKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Synthetic {
    pub kind: SyntheticKind,
    pub width: usize,
    pub height: usize,
    pub dark: u8,
    pub bright: u8,
}

impl Synthetic {
    pub fn new(kind: SyntheticKind, width: usize, height: usize) -> Self {
        Self {
            kind,
            width,
            height,
            dark: 0,
            bright: 255,
        }
    }

    pub fn levels(mut self, dark: u8, bright: u8) -> Self {
        self.dark = dark;
        self.bright = bright;
        self
    }
}

/// Builds the scene and its ground-truth edge map.
pub fn make_synthetic(spec: &Synthetic) -> Result<(GrayImage, EdgeMap)> {
    let (w, h) = (spec.width, spec.height);
    if w < 4 || h < 4 {
        return Err(Error::argument(format!(
            "synthetic scenes need at least 4x4 pixels, got {w}x{h}"
        )));
    }
    if spec.dark == spec.bright && spec.kind != SyntheticKind::Constant {
        return Err(Error::argument("dark and bright levels must differ"));
    }
    let bits = scene_bits(&spec.kind, w, h)?;
    let img = GrayImage::from_fn(w, h, |r, c| {
        if bits[r * w + c] {
            spec.bright
        } else {
            spec.dark
        }
    })?;
    let on_origin = |r: usize, c: usize| r + 1 < h && c + 1 < w;
    let truth = match spec.kind {
        SyntheticKind::Constant => EdgeMap::empty(w, h),
        SyntheticKind::VStep { column } => {
            EdgeMap::from_fn(w, h, |r, c| on_origin(r, c) && c + 1 == column)
        }
        SyntheticKind::HStep { row } => {
            EdgeMap::from_fn(w, h, |r, c| on_origin(r, c) && r + 1 == row)
        }
        SyntheticKind::Diagonal => {
            EdgeMap::from_fn(w, h, |r, c| on_origin(r, c) && (c == r || c + 1 == r))
        }
        SyntheticKind::Checkerboard { cell } => EdgeMap::from_fn(w, h, |r, c| {
            on_origin(r, c) && ((r + 1) % cell == 0 || (c + 1) % cell == 0)
        }),
        SyntheticKind::Glyph { .. } | SyntheticKind::Composite { .. } => {
            level_boundaries(&bits, w, h)
        }
    };
    Ok((img, truth))
}

/// Origins whose 2x2 window mixes both levels.
fn level_boundaries(bits: &[bool], w: usize, h: usize) -> EdgeMap {
    EdgeMap::from_fn(w, h, |r, c| {
        if r + 1 >= h || c + 1 >= w {
            return false;
        }
        let a = bits[r * w + c];
        bits[r * w + c + 1] != a || bits[(r + 1) * w + c] != a || bits[(r + 1) * w + c + 1] != a
    })
}

fn checker(r: usize, c: usize, cell: usize) -> bool {
    (r / cell + c / cell).is_multiple_of(2)
}

fn scene_bits(kind: &SyntheticKind, w: usize, h: usize) -> Result<Vec<bool>> {
    let grid = |f: &dyn Fn(usize, usize) -> bool| -> Vec<bool> {
        (0..h)
            .flat_map(|r| (0..w).map(move |c| (r, c)))
            .map(|(r, c)| f(r, c))
            .collect()
    };
    Ok(match kind {
        SyntheticKind::Constant => vec![false; w * h],
        SyntheticKind::VStep { column } => {
            if *column == 0 || *column >= w {
                return Err(Error::argument(format!("step column must be in 1..{w}")));
            }
            grid(&|_, c| c >= *column)
        }
        SyntheticKind::HStep { row } => {
            if *row == 0 || *row >= h {
                return Err(Error::argument(format!("step row must be in 1..{h}")));
            }
            grid(&|r, _| r >= *row)
        }
        SyntheticKind::Diagonal => grid(&|r, c| c >= r),
        SyntheticKind::Checkerboard { cell } => {
            if *cell == 0 {
                return Err(Error::argument("checkerboard cell must be positive"));
            }
            grid(&|r, c| checker(r, c, *cell))
        }
        SyntheticKind::Composite { cell } => {
            if *cell == 0 {
                return Err(Error::argument("checkerboard cell must be positive"));
            }
            grid(&|r, c| {
                if r < h / 2 {
                    c >= w / 2
                } else {
                    checker(r, c, *cell)
                }
            })
        }
        SyntheticKind::Glyph { text, scale } => render_text(text, *scale, w, h)?,
    })
}

fn render_text(text: &str, scale: usize, w: usize, h: usize) -> Result<Vec<bool>> {
    if scale == 0 {
        return Err(Error::argument("glyph scale must be positive"));
    }
    let glyphs = text
        .chars()
        .map(|ch| glyph(ch).ok_or_else(|| Error::argument(format!("no glyph for {ch:?}"))))
        .collect::<Result<Vec<_>>>()?;
    if glyphs.is_empty() {
        return Err(Error::argument("glyph text must not be empty"));
    }
    let advance = (GLYPH_WIDTH + 1) * scale;
    let line_height = (GLYPH_HEIGHT + 2) * scale;
    let margin = scale;
    let mut bits = vec![false; w * h];
    let mut next = glyphs.iter().cycle();
    let mut top = margin;
    while top + GLYPH_HEIGHT * scale <= h {
        let mut left = margin;
        while left + GLYPH_WIDTH * scale <= w {
            let rows = next.next().expect("cycle is infinite");
            for gr in 0..GLYPH_HEIGHT {
                for gc in 0..GLYPH_WIDTH {
                    if !glyph_bit(rows, gr, gc) {
                        continue;
                    }
                    for dr in 0..scale {
                        let r = top + gr * scale + dr;
                        let start = r * w + left + gc * scale;
                        bits[start..start + scale].fill(true);
                    }
                }
            }
            left += advance;
        }
        top += line_height;
    }
    Ok(bits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_truth_empty() {
        let (img, truth) = make_synthetic(&Synthetic::new(SyntheticKind::Constant, 8, 8)).unwrap();
        assert_eq!(img.min_max(), (0, 0));
        assert!(truth.is_empty());
    }

    #[test]
    fn vstep_truth() {
        let (img, truth) =
            make_synthetic(&Synthetic::new(SyntheticKind::VStep { column: 4 }, 8, 8)).unwrap();
        assert_eq!(img.at(0, 3), 0);
        assert_eq!(img.at(0, 4), 255);
        let expected: Vec<_> = (0..7).map(|i| (i, 3)).collect();
        assert_eq!(truth.edges().collect::<Vec<_>>(), expected);
    }

    #[test]
    fn hstep_truth() {
        let (_, truth) =
            make_synthetic(&Synthetic::new(SyntheticKind::HStep { row: 2 }, 6, 5)).unwrap();
        let expected: Vec<_> = (0..5).map(|j| (1, j)).collect();
        assert_eq!(truth.edges().collect::<Vec<_>>(), expected);
    }

    #[test]
    fn analytic_truth_matches_level_scan() {
        for kind in [
            SyntheticKind::VStep { column: 3 },
            SyntheticKind::HStep { row: 5 },
            SyntheticKind::Diagonal,
            SyntheticKind::Checkerboard { cell: 1 },
            SyntheticKind::Checkerboard { cell: 3 },
        ] {
            for (w, h) in [(4, 9), (9, 6), (12, 12)] {
                let spec = Synthetic::new(kind.clone(), w, h);
                let (img, truth) = make_synthetic(&spec).unwrap();
                let bits: Vec<bool> = img.pixels().iter().map(|&v| v == 255).collect();
                assert_eq!(truth, level_boundaries(&bits, w, h), "{kind} {w}x{h}");
            }
        }
    }

    #[test]
    fn parameter_errors() {
        assert!(SyntheticKind::from_name("spiral", 8, 8).is_err());
        let bad = [
            Synthetic::new(SyntheticKind::VStep { column: 0 }, 8, 8),
            Synthetic::new(SyntheticKind::VStep { column: 8 }, 8, 8),
            Synthetic::new(SyntheticKind::Checkerboard { cell: 0 }, 8, 8),
            Synthetic::new(SyntheticKind::Diagonal, 3, 8),
            Synthetic::new(SyntheticKind::Diagonal, 8, 8).levels(9, 9),
            Synthetic::new(
                SyntheticKind::Glyph {
                    text: "a~".into(),
                    scale: 1,
                },
                8,
                8,
            ),
            Synthetic::new(
                SyntheticKind::Glyph {
                    text: String::new(),
                    scale: 1,
                },
                8,
                8,
            ),
        ];
        for spec in bad {
            assert!(
                matches!(make_synthetic(&spec), Err(Error::Argument(_))),
                "{spec:?}"
            );
        }
    }

    #[test]
    fn names_round_trip() {
        for name in KIND_NAMES {
            assert_eq!(SyntheticKind::from_name(name, 64, 64).unwrap().name(), name);
        }
    }

    #[test]
    fn glyph_page_has_text() {
        let spec = Synthetic::new(SyntheticKind::from_name("glyph", 64, 32).unwrap(), 64, 32);
        let (img, truth) = make_synthetic(&spec).unwrap();
        let lit = img.pixels().iter().filter(|&&v| v == 255).count();
        assert!(lit > 50 && lit < 64 * 32 / 2, "lit {lit}");
        assert!(!truth.is_empty());
        // the margin row is blank
        assert!(img.row(0).iter().all(|&v| v == 0));
    }
}
