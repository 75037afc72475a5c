#![allow(dead_code)]

use rmrec::{encode, CodeParams, InfoBlock};

/// Binary image of an encoded unit vector, bit `j` = symbol at position `j`.
pub fn generator_rows(params: CodeParams) -> Vec<u64> {
    assert!(params.n() <= 64);
    (0..params.k())
        .map(|i| {
            let mut bits = vec![0u8; params.k()];
            bits[i] = 1;
            let c = encode(&InfoBlock::new(bits).unwrap(), params).unwrap();
            c.to_bits().iter().enumerate().fold(0u64, |acc, (j, &b)| acc | (u64::from(b) << j))
        })
        .collect()
}

/// Visits every codeword spanned by `rows` in Gray-code order.
pub fn for_each_codeword(rows: &[u64], mut f: impl FnMut(u64)) {
    let mut c = 0u64;
    f(c);
    for i in 1u64..1u64 << rows.len() {
        c ^= rows[i.trailing_zeros() as usize];
        f(c);
    }
}

/// Membership bitset of a code of length at most 16.
pub fn codebook_bitset(params: CodeParams) -> Vec<bool> {
    assert!(params.n() <= 16);
    let mut set = vec![false; 1 << params.n()];
    for_each_codeword(&generator_rows(params), |c| set[c as usize] = true);
    set
}

/// Brute-force maximum-correlation decoding over the first-order code of
/// length `2^{g+1}`, codebook taken from the encoder. Returns the best
/// correlation and all codewords achieving it.
pub fn brute_force_first_order(z: &[f64], g: u32) -> (f64, Vec<Vec<i8>>) {
    let params = CodeParams::new(g + 1, 1).unwrap();
    let mut best = f64::NEG_INFINITY;
    let mut winners = Vec::new();
    for msg in 0u64..1 << params.k() {
        let info = InfoBlock::new((0..params.k()).map(|i| ((msg >> i) & 1) as u8).collect()).unwrap();
        let c = encode(&info, params).unwrap();
        let corr: f64 = c.symbols().iter().zip(z).map(|(&s, &x)| s as f64 * x).sum();
        if corr > best {
            best = corr;
            winners.clear();
        }
        if corr == best {
            winners.push(c.symbols().to_vec());
        }
    }
    (best, winners)
}
