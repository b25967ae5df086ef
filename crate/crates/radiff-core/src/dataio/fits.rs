//! Minimal FITS subset for 2D float32 images.
//!
//! Accepted files are exactly: SIMPLE = T, BITPIX = -32, NAXIS = 2, a
//! big-endian float32 payload, and a header terminated by an END card and
//! padded to the 2880-byte block size. Anything else is rejected. The
//! writer emits the same subset, and write-then-read round trips are
//! bit-exact (NaN payload bits included).

use std::fs;
use std::path::Path;

use ndarray::Array2;

use crate::{Error, Result};

const BLOCK: usize = 2880;
const CARD: usize = 80;

fn card(keyword: &str, value: &str) -> String {
    // Fixed format: keyword in columns 1-8, "= " in 9-10, value right-justified to column 30.
    format!("{keyword:<8}= {value:>20}")
}

/// Serialize a 2D float32 image into FITS-subset bytes.
///
/// Axis convention: NAXIS1 is the fastest-varying axis (image width, the
/// second ndarray axis); rows of the array are stored in order.
pub fn to_fits_bytes(pixels: &Array2<f32>) -> Vec<u8> {
    let (height, width) = pixels.dim();
    let mut header = String::new();
    header.push_str(&card("SIMPLE", "T"));
    header.push_str(&card("BITPIX", "-32"));
    header.push_str(&card("NAXIS", "2"));
    header.push_str(&card("NAXIS1", &width.to_string()));
    header.push_str(&card("NAXIS2", &height.to_string()));
    header.push_str("END");
    let mut bytes: Vec<u8> = header.into_bytes();
    // Pad the END card and the header block with spaces.
    while bytes.len() % CARD != 0 {
        bytes.push(b' ');
    }
    while bytes.len() % BLOCK != 0 {
        bytes.push(b' ');
    }

    for row in pixels.rows() {
        for &v in row {
            bytes.extend_from_slice(&v.to_be_bytes());
        }
    }
    // Data area is padded with zeros to a full block.
    while bytes.len() % BLOCK != 0 {
        bytes.push(0);
    }
    bytes
}

pub fn write_fits(path: &Path, pixels: &Array2<f32>) -> Result<()> {
    fs::write(path, to_fits_bytes(pixels)).map_err(|e| Error::io(path, e))
}

struct Header {
    bitpix: i64,
    naxis: i64,
    naxis1: Option<usize>,
    naxis2: Option<usize>,
    /// Offset of the first data byte.
    data_start: usize,
}

fn parse_header(bytes: &[u8]) -> Result<Header> {
    if bytes.len() < BLOCK {
        return Err(Error::Format("file shorter than one FITS block".into()));
    }
    let mut simple = false;
    let mut bitpix: Option<i64> = None;
    let mut naxis: Option<i64> = None;
    let mut naxis1: Option<usize> = None;
    let mut naxis2: Option<usize> = None;
    let mut offset = 0;
    loop {
        if offset + CARD > bytes.len() {
            return Err(Error::Format("header not terminated by END card".into()));
        }
        let raw = &bytes[offset..offset + CARD];
        let text = std::str::from_utf8(raw)
            .map_err(|_| Error::Format("non-ASCII bytes in header card".into()))?;
        let keyword = text[..8].trim_end();
        if keyword == "END" {
            offset += CARD;
            break;
        }
        if offset == 0 && keyword != "SIMPLE" {
            return Err(Error::Format("first card is not SIMPLE".into()));
        }
        let value = if text.len() > 10 && &text[8..10] == "= " {
            // Drop any trailing comment.
            Some(text[10..].split('/').next().unwrap_or("").trim())
        } else {
            None
        };
        match keyword {
            "SIMPLE" => {
                if value != Some("T") {
                    return Err(Error::Format("SIMPLE is not T".into()));
                }
                simple = true;
            }
            "BITPIX" => {
                bitpix = Some(parse_int(value, "BITPIX")?);
            }
            "NAXIS" => {
                naxis = Some(parse_int(value, "NAXIS")?);
            }
            "NAXIS1" => {
                naxis1 = Some(parse_int(value, "NAXIS1")? as usize);
            }
            "NAXIS2" => {
                naxis2 = Some(parse_int(value, "NAXIS2")? as usize);
            }
            // Unknown keywords are tolerated; their values are ignored.
            _ => {}
        }
        offset += CARD;
    }
    if !simple {
        return Err(Error::Format("missing SIMPLE card".into()));
    }
    let bitpix = bitpix.ok_or_else(|| Error::Format("missing BITPIX card".into()))?;
    let naxis = naxis.ok_or_else(|| Error::Format("missing NAXIS card".into()))?;
    // Header occupies whole blocks; data starts at the next block boundary.
    let data_start = offset.div_ceil(BLOCK) * BLOCK;
    Ok(Header {
        bitpix,
        naxis,
        naxis1,
        naxis2,
        data_start,
    })
}

fn parse_int(value: Option<&str>, keyword: &str) -> Result<i64> {
    value
        .ok_or_else(|| Error::Format(format!("{keyword} card has no value")))?
        .parse()
        .map_err(|_| Error::Format(format!("{keyword} value is not an integer")))
}

/// Parse FITS-subset bytes into a 2D float32 image.
pub fn from_fits_bytes(bytes: &[u8]) -> Result<Array2<f32>> {
    let header = parse_header(bytes)?;
    if header.naxis != 2 {
        return Err(Error::Unsupported(format!(
            "NAXIS = {} (only 2D images are supported)",
            header.naxis
        )));
    }
    if header.bitpix != -32 {
        return Err(Error::Unsupported(format!(
            "BITPIX = {} (only float32 payloads are supported)",
            header.bitpix
        )));
    }
    let width = header
        .naxis1
        .ok_or_else(|| Error::Format("missing NAXIS1 card".into()))?;
    let height = header
        .naxis2
        .ok_or_else(|| Error::Format("missing NAXIS2 card".into()))?;
    if width == 0 || height == 0 {
        return Err(Error::Format("zero-sized axis".into()));
    }
    let n = width * height;
    let need = header.data_start + n * 4;
    if bytes.len() < need {
        return Err(Error::Format(format!(
            "payload truncated: expected at least {need} bytes, file has {}",
            bytes.len()
        )));
    }
    let data = &bytes[header.data_start..need];
    let mut pixels = Vec::with_capacity(n);
    for chunk in data.chunks_exact(4) {
        pixels.push(f32::from_be_bytes([chunk[0], chunk[1], chunk[2], chunk[3]]));
    }
    Array2::from_shape_vec((height, width), pixels)
        .map_err(|e| Error::Format(format!("payload reshape failed: {e}")))
}

pub fn read_fits(path: &Path) -> Result<Array2<f32>> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    from_fits_bytes(&bytes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    #[test]
    fn minimal_zero_file_reads_back_zeros() {
        let img = Array2::<f32>::zeros((4, 4));
        let bytes = to_fits_bytes(&img);
        assert_eq!(bytes.len() % BLOCK, 0);
        let back = from_fits_bytes(&bytes).unwrap();
        assert_eq!(back, img);
    }

    #[test]
    fn nan_passes_through() {
        let mut img = Array2::<f32>::zeros((4, 4));
        img[[2, 1]] = f32::NAN;
        let back = from_fits_bytes(&to_fits_bytes(&img)).unwrap();
        let nan_count = back.iter().filter(|v| v.is_nan()).count();
        assert_eq!(nan_count, 1);
        assert!(back[[2, 1]].is_nan());
    }

    #[test]
    fn round_trip_is_bit_exact() {
        let img = array![
            [1.5f32, -2.25, 3.0e-7, f32::MIN_POSITIVE],
            [0.0, -0.0, 1.0e20, -4.75],
            [f32::NAN, 9.125, -1.0e-20, 2.0],
        ];
        let bytes = to_fits_bytes(&img);
        let back = from_fits_bytes(&bytes).unwrap();
        for (a, b) in img.iter().zip(back.iter()) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
        // And writing again yields identical bytes.
        assert_eq!(to_fits_bytes(&back), bytes);
    }

    #[test]
    fn rejects_wrong_bitpix() {
        let img = Array2::<f32>::zeros((4, 4));
        let mut bytes = to_fits_bytes(&img);
        // Corrupt the BITPIX card value (-32 -> -64).
        let card_start = CARD; // second card
        let text = format!("{:<8}= {:>20}", "BITPIX", "-64");
        bytes[card_start..card_start + CARD].copy_from_slice(text.as_bytes());
        match from_fits_bytes(&bytes) {
            Err(Error::Unsupported(_)) => {}
            other => panic!("expected Unsupported, got {other:?}"),
        }
    }

    #[test]
    fn rejects_malformed_header() {
        let bytes = vec![b'X'; BLOCK];
        assert!(matches!(from_fits_bytes(&bytes), Err(Error::Format(_))));
    }

    #[test]
    fn rejects_truncated_payload() {
        let img = Array2::<f32>::zeros((8, 8));
        let bytes = to_fits_bytes(&img);
        assert!(matches!(
            from_fits_bytes(&bytes[..BLOCK + 16]),
            Err(Error::Format(_))
        ));
    }
}
