//! Reading and writing grayscale images.
//!
//! PGM (binary `P5` and ASCII `P2`) is the canonical format; only maxval 255
//! is accepted. PNG input may be gray, gray+alpha, RGB, RGBA or indexed at
//! 8 bits or less per channel; color is reduced to BT.601 luma and alpha is
//! dropped. PNG output is always 8-bit grayscale.

use std::fmt;
use std::fs;
use std::io::Cursor;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::image::GrayImage;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ImageFormat {
    /// Netpbm `P5`.
    PgmBinary,
    /// Netpbm `P2`.
    PgmAscii,
    Png,
}

const PNG_SIGNATURE: [u8; 8] = [0x89, b'P', b'N', b'G', 0x0D, 0x0A, 0x1A, 0x0A];

impl ImageFormat {
    /// Sniffs the format from the leading magic bytes.
    pub fn detect(bytes: &[u8]) -> Option<Self> {
        if bytes.starts_with(&PNG_SIGNATURE) {
            Some(ImageFormat::Png)
        } else if bytes.starts_with(b"P5") {
            Some(ImageFormat::PgmBinary)
        } else if bytes.starts_with(b"P2") {
            Some(ImageFormat::PgmAscii)
        } else {
            None
        }
    }

    /// `.png` maps to PNG; anything else is written as binary PGM.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("png") => ImageFormat::Png,
            _ => ImageFormat::PgmBinary,
        }
    }
}

impl FromStr for ImageFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "p5" | "pgm" => Ok(ImageFormat::PgmBinary),
            "p2" => Ok(ImageFormat::PgmAscii),
            "png" => Ok(ImageFormat::Png),
            other => Err(Error::argument(format!("unknown image format '{other}'"))),
        }
    }
}

impl fmt::Display for ImageFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ImageFormat::PgmBinary => "p5",
            ImageFormat::PgmAscii => "p2",
            ImageFormat::Png => "png",
        })
    }
}

pub fn decode(bytes: &[u8], format: ImageFormat) -> Result<GrayImage> {
    match format {
        ImageFormat::PgmBinary => decode_pgm(bytes, b"P5"),
        ImageFormat::PgmAscii => decode_pgm(bytes, b"P2"),
        ImageFormat::Png => decode_png(bytes),
    }
}

/// Decodes after sniffing the format from the magic bytes.
pub fn decode_any(bytes: &[u8]) -> Result<GrayImage> {
    let format = ImageFormat::detect(bytes)
        .ok_or_else(|| Error::format(0, "unrecognized image signature"))?;
    decode(bytes, format)
}

pub fn encode(img: &GrayImage, format: ImageFormat) -> Result<Vec<u8>> {
    match format {
        ImageFormat::PgmBinary => Ok(encode_p5(img)),
        ImageFormat::PgmAscii => Ok(encode_p2(img)),
        ImageFormat::Png => encode_png(img),
    }
}

/// Loads an image, sniffing the format from the file contents.
pub fn load_image(path: impl AsRef<Path>) -> Result<GrayImage> {
    decode_any(&fs::read(path)?)
}

pub fn save_image(img: &GrayImage, path: impl AsRef<Path>, format: ImageFormat) -> Result<()> {
    fs::write(path, encode(img, format)?)?;
    Ok(())
}

fn encode_p5(img: &GrayImage) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", img.width(), img.height()).into_bytes();
    out.extend_from_slice(img.pixels());
    out
}

fn encode_p2(img: &GrayImage) -> Vec<u8> {
    let mut out = format!("P2\n{} {}\n255\n", img.width(), img.height());
    for r in 0..img.height() {
        let line: Vec<String> = img.row(r).iter().map(u8::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out.into_bytes()
}

/// Header tokenizer tracking byte offsets for error reporting.
struct PgmCursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> PgmCursor<'a> {
    fn skip_whitespace_and_comments(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b == b'#' {
                while let Some(&b) = self.bytes.get(self.pos) {
                    self.pos += 1;
                    if b == b'\n' || b == b'\r' {
                        break;
                    }
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    /// Next unsigned decimal token; `None` at end of input.
    fn number(&mut self, what: &str) -> Result<Option<(u64, usize)>> {
        self.skip_whitespace_and_comments();
        let start = self.pos;
        if start >= self.bytes.len() {
            return Ok(None);
        }
        let mut value: u64 = 0;
        while let Some(&b) = self.bytes.get(self.pos) {
            if !b.is_ascii_digit() {
                break;
            }
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(u64::from(b - b'0')))
                .ok_or_else(|| Error::format(start, format!("{what} is too large")))?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(Error::format(start, format!("expected {what}")));
        }
        if let Some(&b) = self.bytes.get(self.pos) {
            if !b.is_ascii_whitespace() && b != b'#' {
                return Err(Error::format(
                    self.pos,
                    format!("unexpected byte in {what}"),
                ));
            }
        }
        Ok(Some((value, start)))
    }

    fn required(&mut self, what: &str) -> Result<(u64, usize)> {
        let at = self.bytes.len();
        self.number(what)?
            .ok_or_else(|| Error::format(at, format!("truncated header: missing {what}")))
    }
}

fn decode_pgm(bytes: &[u8], magic: &[u8; 2]) -> Result<GrayImage> {
    if !bytes.starts_with(magic) {
        return Err(Error::format(
            0,
            format!("expected magic '{}'", String::from_utf8_lossy(magic)),
        ));
    }
    let mut cur = PgmCursor { bytes, pos: 2 };
    if !cur
        .bytes
        .get(2)
        .is_some_and(|b| b.is_ascii_whitespace() || *b == b'#')
    {
        return Err(Error::format(2, "expected whitespace after magic"));
    }
    let (width, w_at) = cur.required("width")?;
    let (height, h_at) = cur.required("height")?;
    let (maxval, m_at) = cur.required("maxval")?;
    if width == 0 {
        return Err(Error::format(w_at, "width must be positive"));
    }
    if height == 0 {
        return Err(Error::format(h_at, "height must be positive"));
    }
    if maxval != 255 {
        return Err(Error::format(
            m_at,
            format!("maxval {maxval} unsupported, expected 255"),
        ));
    }
    let width = usize::try_from(width).map_err(|_| Error::format(w_at, "width too large"))?;
    let height = usize::try_from(height).map_err(|_| Error::format(h_at, "height too large"))?;
    let count = width
        .checked_mul(height)
        .ok_or_else(|| Error::format(w_at, "image dimensions overflow"))?;

    let data = if magic == b"P5" {
        // exactly one whitespace byte separates maxval from the raster
        let start = cur.pos + 1;
        if cur.pos >= bytes.len() {
            return Err(Error::format(cur.pos, "truncated header after maxval"));
        }
        let available = bytes.len() - start;
        if available < count {
            return Err(Error::format(
                bytes.len(),
                format!("truncated raster: expected {count} bytes, found {available}"),
            ));
        }
        bytes[start..start + count].to_vec()
    } else {
        let mut data = Vec::with_capacity(count);
        for _ in 0..count {
            let (v, at) = cur.number("pixel value")?.ok_or_else(|| {
                Error::format(
                    bytes.len(),
                    format!(
                        "truncated raster: expected {count} values, found {}",
                        data.len()
                    ),
                )
            })?;
            if v > 255 {
                return Err(Error::format(at, format!("pixel value {v} exceeds maxval")));
            }
            data.push(v as u8);
        }
        data
    };
    GrayImage::new(width, height, data)
}

/// BT.601 luma, rounded to nearest.
pub fn luma(r: u8, g: u8, b: u8) -> u8 {
    let y = 0.299 * f64::from(r) + 0.587 * f64::from(g) + 0.114 * f64::from(b);
    y.round().clamp(0.0, 255.0) as u8
}

fn decode_png(bytes: &[u8]) -> Result<GrayImage> {
    let png_err = |e: png::DecodingError| Error::Png(e.to_string());
    let mut decoder = png::Decoder::new(Cursor::new(bytes));
    decoder.set_transformations(png::Transformations::EXPAND);
    let mut reader = decoder.read_info().map_err(png_err)?;
    if reader.info().bit_depth == png::BitDepth::Sixteen {
        return Err(Error::Png("16-bit PNG is not supported".into()));
    }
    let size = reader
        .output_buffer_size()
        .ok_or_else(|| Error::Png("image too large".into()))?;
    let mut buf = vec![0; size];
    let frame = reader.next_frame(&mut buf).map_err(png_err)?;
    let (width, height) = (frame.width as usize, frame.height as usize);
    let stride = frame.line_size;
    let channels = match frame.color_type {
        png::ColorType::Grayscale => 1,
        png::ColorType::GrayscaleAlpha => 2,
        png::ColorType::Rgb => 3,
        png::ColorType::Rgba => 4,
        png::ColorType::Indexed => return Err(Error::Png("palette was not expanded".into())),
    };
    if frame.bit_depth != png::BitDepth::Eight {
        return Err(Error::Png(format!(
            "unsupported bit depth {:?}",
            frame.bit_depth
        )));
    }
    let mut data = Vec::with_capacity(width * height);
    for r in 0..height {
        let line = &buf[r * stride..r * stride + width * channels];
        for px in line.chunks_exact(channels) {
            data.push(match channels {
                1 | 2 => px[0],
                _ => luma(px[0], px[1], px[2]),
            });
        }
    }
    GrayImage::new(width, height, data)
}

fn encode_png(img: &GrayImage) -> Result<Vec<u8>> {
    let png_err = |e: png::EncodingError| Error::Png(e.to_string());
    let width = u32::try_from(img.width()).map_err(|_| Error::Png("width too large".into()))?;
    let height = u32::try_from(img.height()).map_err(|_| Error::Png("height too large".into()))?;
    let mut out = Vec::new();
    {
        let mut enc = png::Encoder::new(&mut out, width, height);
        enc.set_color(png::ColorType::Grayscale);
        enc.set_depth(png::BitDepth::Eight);
        let mut writer = enc.write_header().map_err(png_err)?;
        writer.write_image_data(img.pixels()).map_err(png_err)?;
        writer.finish().map_err(png_err)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p5_decode_direct_mapping() {
        let mut bytes = b"P5\n2 2\n255\n".to_vec();
        bytes.extend_from_slice(&[0, 255, 255, 0]);
        let img = decode(&bytes, ImageFormat::PgmBinary).unwrap();
        assert_eq!((img.width(), img.height()), (2, 2));
        assert_eq!(img.pixels(), &[0, 255, 255, 0]);
    }

    #[test]
    fn p2_decode_single_pixel() {
        let img = decode(b"P2\n1 1\n255\n42\n", ImageFormat::PgmAscii).unwrap();
        assert_eq!(img.pixels(), &[42]);
    }

    #[test]
    fn p2_comments_and_loose_whitespace() {
        let text = b"P2\n# made by hand\n3   1 # trailing\n255\n1\t2\r\n3";
        let img = decode(text, ImageFormat::PgmAscii).unwrap();
        assert_eq!(img.pixels(), &[1, 2, 3]);
    }

    #[test]
    fn p5_exact_bytes() {
        let img = GrayImage::new(1, 1, vec![0]).unwrap();
        assert_eq!(
            encode(&img, ImageFormat::PgmBinary).unwrap(),
            b"P5\n1 1\n255\n\x00"
        );
        let img = GrayImage::new(2, 1, vec![10, 20]).unwrap();
        assert_eq!(
            encode(&img, ImageFormat::PgmBinary).unwrap(),
            b"P5\n2 1\n255\n\x0A\x14"
        );
    }

    #[test]
    fn p5_raster_may_contain_whitespace_bytes() {
        // raster starting with 0x0A / 0x20 must not be mistaken for header whitespace
        let img = GrayImage::new(3, 1, vec![b'\n', b' ', b'#']).unwrap();
        let bytes = encode(&img, ImageFormat::PgmBinary).unwrap();
        assert_eq!(decode(&bytes, ImageFormat::PgmBinary).unwrap(), img);
    }

    #[test]
    fn rejects_bad_maxval_with_offset() {
        let err = decode(b"P5\n1 1\n65535\n\x00\x00", ImageFormat::PgmBinary).unwrap_err();
        match err {
            Error::Format { offset, .. } => assert_eq!(offset, 7),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_truncated_raster() {
        let err = decode(b"P5\n2 2\n255\n\x01\x02", ImageFormat::PgmBinary).unwrap_err();
        match err {
            Error::Format { offset, message } => {
                assert_eq!(offset, 13);
                assert!(message.contains("truncated"));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(decode(b"P2\n2 2\n255\n1 2 3", ImageFormat::PgmAscii).is_err());
        assert!(decode(b"P5\n2 2\n", ImageFormat::PgmBinary).is_err());
        assert!(decode(b"P5\n2 2\n255", ImageFormat::PgmBinary).is_err());
    }

    #[test]
    fn rejects_malformed_headers() {
        assert!(decode(b"P6\n1 1\n255\n\x00", ImageFormat::PgmBinary).is_err());
        assert!(decode(b"P5\nx 1\n255\n\x00", ImageFormat::PgmBinary).is_err());
        assert!(decode(b"P5\n0 1\n255\n", ImageFormat::PgmBinary).is_err());
        assert!(decode(b"P2\n1 1\n255\n256\n", ImageFormat::PgmAscii).is_err());
        assert!(decode(b"P21 1 255 3", ImageFormat::PgmAscii).is_err());
        assert!(decode_any(b"GIF89a").is_err());
    }

    #[test]
    fn detects_formats() {
        let img = GrayImage::new(2, 1, vec![1, 2]).unwrap();
        for f in [
            ImageFormat::PgmBinary,
            ImageFormat::PgmAscii,
            ImageFormat::Png,
        ] {
            let bytes = encode(&img, f).unwrap();
            assert_eq!(ImageFormat::detect(&bytes), Some(f));
            assert_eq!(decode_any(&bytes).unwrap(), img);
        }
    }

    #[test]
    fn png_color_converted_to_luma() {
        let mut out = Vec::new();
        {
            let mut enc = png::Encoder::new(&mut out, 3, 1);
            enc.set_color(png::ColorType::Rgb);
            enc.set_depth(png::BitDepth::Eight);
            let mut w = enc.write_header().unwrap();
            w.write_image_data(&[255, 0, 0, 0, 255, 0, 10, 20, 30])
                .unwrap();
        }
        let img = decode(&out, ImageFormat::Png).unwrap();
        // 0.299*255 = 76.245, 0.587*255 = 149.685, 2.99+11.74+3.42 = 18.15
        assert_eq!(img.pixels(), &[76, 150, 18]);
    }

    #[test]
    fn png_rejects_sixteen_bit() {
        let mut out = Vec::new();
        {
            let mut enc = png::Encoder::new(&mut out, 1, 1);
            enc.set_color(png::ColorType::Grayscale);
            enc.set_depth(png::BitDepth::Sixteen);
            let mut w = enc.write_header().unwrap();
            w.write_image_data(&[1, 2]).unwrap();
        }
        assert!(matches!(decode(&out, ImageFormat::Png), Err(Error::Png(_))));
    }

    #[test]
    fn format_from_path() {
        assert_eq!(
            ImageFormat::from_path(Path::new("a/b.PNG")),
            ImageFormat::Png
        );
        assert_eq!(
            ImageFormat::from_path(Path::new("a/b.pgm")),
            ImageFormat::PgmBinary
        );
        assert_eq!("p2".parse::<ImageFormat>().unwrap(), ImageFormat::PgmAscii);
        assert!("bmp".parse::<ImageFormat>().is_err());
    }
}
