//! Text forms of information blocks and codewords.
//!
//! Information bits are written as a hex number whose binary expansion,
//! left-padded with zeros to a whole number of digits, lists the bits in
//! path order with the first path most significant. Codewords are written
//! as `+`/`-` strings or as hex of their binary image (`+` = 0, `-` = 1) in
//! the same layout. Soft inputs are whitespace- or comma-separated reals.

use rmrec::{Codeword, InfoBlock};

use crate::error::CliError;

pub fn bits_to_hex(bits: &[u8]) -> String {
    let digits = bits.len().div_ceil(4).max(1);
    let pad = digits * 4 - bits.len();
    let padded: Vec<u8> = std::iter::repeat_n(0, pad).chain(bits.iter().copied()).collect();
    padded
        .chunks(4)
        .map(|c| {
            let v = c.iter().fold(0u32, |acc, &b| (acc << 1) | u32::from(b));
            char::from_digit(v, 16).unwrap()
        })
        .collect()
}

pub fn hex_to_bits(s: &str, len: usize) -> Result<Vec<u8>, CliError> {
    let s = s.trim();
    let s = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")).unwrap_or(s);
    let digits = len.div_ceil(4).max(1);
    if s.len() != digits {
        return Err(CliError::Usage(format!("expected {digits} hex digits for {len} bits, got {}", s.len())));
    }
    let mut bits = Vec::with_capacity(digits * 4);
    for ch in s.chars() {
        let v = ch.to_digit(16).ok_or_else(|| CliError::Usage(format!("invalid hex digit {ch:?}")))?;
        bits.extend((0..4).rev().map(|i| ((v >> i) & 1) as u8));
    }
    let pad = bits.len() - len;
    if bits[..pad].iter().any(|&b| b != 0) {
        return Err(CliError::Usage(format!("value does not fit in {len} bits")));
    }
    Ok(bits.split_off(pad))
}

pub fn info_to_hex(info: &InfoBlock) -> String {
    bits_to_hex(info.bits())
}

pub fn parse_info(s: &str, k: usize) -> Result<InfoBlock, CliError> {
    Ok(InfoBlock::new(hex_to_bits(s, k)?)?)
}

pub fn symbols_to_string(c: &Codeword) -> String {
    c.symbols().iter().map(|&s| if s > 0 { '+' } else { '-' }).collect()
}

pub fn codeword_to_hex(c: &Codeword) -> String {
    bits_to_hex(&c.to_bits())
}

/// Channel output of length `n`: a `+`/`-` string, a list of reals, or hex.
pub fn parse_received(s: &str, n: usize) -> Result<Vec<f64>, CliError> {
    let s = s.trim();
    if !s.is_empty() && s.chars().all(|c| c == '+' || c == '-') {
        if s.len() != n {
            return Err(CliError::Usage(format!("expected {n} symbols, got {}", s.len())));
        }
        return Ok(s.chars().map(|c| if c == '+' { 1.0 } else { -1.0 }).collect());
    }
    if s.contains(|c: char| c == ',' || c.is_whitespace()) {
        let values = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| CliError::Usage(format!("invalid value {t:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if values.len() != n {
            return Err(CliError::Usage(format!("expected {n} values, got {}", values.len())));
        }
        return Ok(values);
    }
    let bits = hex_to_bits(s, n)?;
    Ok(bits.iter().map(|&b| if b == 0 { 1.0 } else { -1.0 }).collect())
}
