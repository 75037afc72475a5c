use crate::code::CodeParams;
use crate::decoder::Algorithm;
use crate::error::{Result, RmError};
use crate::path::{classify, BitString, Path};

fn cat(parts: &[(u8, u32)]) -> BitString {
    parts.iter().fold(BitString::EMPTY, |acc, &(b, n)| acc.concat(BitString::repeat(b, n)))
}

/// Leftmost path `(0^r, 1^{m-r})`, the path of largest variance.
pub fn weakest_path(params: CodeParams) -> Path {
    let bits = cat(&[(0, params.r()), (1, params.m() - params.r())]);
    classify(bits, params).expect("leftmost path is an information path")
}

/// Leftmost path through the repetition node `{g, 0}`:
/// `(0^{r-1}, 1^{m-r-g}, 0, 1^g)`, `1 <= g <= m-r`.
pub fn weakest_path_at_node(params: CodeParams, g: u32) -> Result<Path> {
    let (m, r) = (params.m(), params.r());
    if r == 0 {
        // Only the node {m, 0}.
        return if g == m { Ok(weakest_path(params)) } else { Err(RmError::NodeOutOfRange { g, lo: m, hi: m }) };
    }
    check_g(g, 1, m - r)?;
    let bits = cat(&[(0, r - 1), (1, m - r - g), (0, 1), (1, g)]);
    Ok(classify(bits, params).expect("node path is an information path"))
}

/// Prefix whose variance governs the weakest unit of `algorithm`.
///
/// For `Psi` this is the full weakest path. For `Phi` it is the length
/// `m-1` string `(0^{r-1}, 1^{m-r})`: the leftmost first-order node seen
/// through its representative support sum.
pub fn weakest_prefix(params: CodeParams, algorithm: Algorithm) -> Result<BitString> {
    let (m, r) = (params.m(), params.r());
    match algorithm {
        Algorithm::Psi => Ok(weakest_path(params).bits()),
        Algorithm::Phi => {
            if r == 0 {
                return Err(RmError::PhiNeedsOrderOne);
            }
            if r == m {
                // Full space: every symbol is decided on the channel output.
                return Ok(BitString::EMPTY);
            }
            Ok(cat(&[(0, r - 1), (1, m - r)]))
        }
    }
}

/// Node variant of [`weakest_prefix`]. For `Phi` the node is `{g+1, 1}`
/// and the string is `(0^{r-2}, 1^{m-r-g}, 0, 1^g)`, which needs `r >= 2`.
pub fn weakest_prefix_at_node(params: CodeParams, g: u32, algorithm: Algorithm) -> Result<BitString> {
    let (m, r) = (params.m(), params.r());
    match algorithm {
        Algorithm::Psi => weakest_path_at_node(params, g).map(|p| p.bits()),
        Algorithm::Phi => {
            if r < 2 {
                return Err(RmError::InvalidParams { m, r, reason: "node variant needs r >= 2" });
            }
            check_g(g, 1, m - r)?;
            Ok(cat(&[(0, r - 2), (1, m - r - g), (0, 1), (1, g)]))
        }
    }
}

fn check_g(g: u32, lo: u32, hi: u32) -> Result<()> {
    if g < lo || g > hi {
        Err(RmError::NodeOutOfRange { g, lo, hi })
    } else {
        Ok(())
    }
}
