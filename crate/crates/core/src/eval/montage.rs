use crate::error::{Error, Result};
use crate::image::GrayImage;

/// Width of the white gap between panels.
pub const SEPARATOR: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PanelLabel {
    pub label: String,
    /// First column of the panel in the montage.
    pub offset: usize,
    pub width: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Montage {
    pub image: GrayImage,
    pub panels: Vec<PanelLabel>,
}

/// Lays equally sized panels out left to right with a 255-valued separator
/// between neighbours.
pub fn montage(panels: &[(&str, &GrayImage)]) -> Result<Montage> {
    let (_, first) = panels
        .first()
        .ok_or_else(|| Error::argument("montage needs at least one panel"))?;
    let (pw, ph) = (first.width(), first.height());
    if let Some((label, p)) = panels
        .iter()
        .find(|(_, p)| p.width() != pw || p.height() != ph)
    {
        return Err(Error::argument(format!(
            "panel '{label}' is {}x{}, expected {pw}x{ph}",
            p.width(),
            p.height()
        )));
    }
    let n = panels.len();
    let width = n * pw + (n - 1) * SEPARATOR;
    let mut data = Vec::with_capacity(width * ph);
    for r in 0..ph {
        for (i, (_, p)) in panels.iter().enumerate() {
            if i > 0 {
                data.extend(std::iter::repeat_n(255, SEPARATOR));
            }
            data.extend_from_slice(p.row(r));
        }
    }
    let labels = panels
        .iter()
        .enumerate()
        .map(|(i, (label, _))| PanelLabel {
            label: (*label).to_string(),
            offset: i * (pw + SEPARATOR),
            width: pw,
        })
        .collect();
    Ok(Montage {
        image: GrayImage::new(width, ph, data)?,
        panels: labels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_panels() {
        let a = GrayImage::filled(4, 4, 10).unwrap();
        let b = GrayImage::filled(4, 4, 20).unwrap();
        let m = montage(&[("a", &a), ("b", &b)]).unwrap();
        assert_eq!((m.image.width(), m.image.height()), (10, 4));
        assert_eq!(m.image.row(2), &[10, 10, 10, 10, 255, 255, 20, 20, 20, 20]);
        assert_eq!(m.panels[1].offset, 6);
    }

    #[test]
    fn single_panel_is_identity() {
        let a = GrayImage::from_fn(5, 3, |r, c| (r * 5 + c) as u8).unwrap();
        assert_eq!(montage(&[("only", &a)]).unwrap().image, a);
    }

    #[test]
    fn four_panel_width() {
        let a = GrayImage::filled(128, 128, 0).unwrap();
        let m = montage(&[("1", &a), ("2", &a), ("3", &a), ("4", &a)]).unwrap();
        assert_eq!((m.image.width(), m.image.height()), (518, 128));
    }

    #[test]
    fn errors() {
        assert!(montage(&[]).is_err());
        let a = GrayImage::filled(4, 4, 0).unwrap();
        let b = GrayImage::filled(4, 5, 0).unwrap();
        assert!(matches!(
            montage(&[("a", &a), ("b", &b)]),
            Err(Error::Argument(_))
        ));
    }
}
