//! Tiny stable content digest (FNV-1a, 64-bit) used for instance provenance
//! and reproducibility checks. Not cryptographic.

use alloc::format;
use alloc::string::String;

const FNV_OFFSET: u64 = 0xcbf29ce484222325;
const FNV_PRIME: u64 = 0x100000001b3;

pub fn fnv64(bytes: &[u8]) -> u64 {
    let mut h = FNV_OFFSET;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(FNV_PRIME);
    }
    h
}

/// Hex digest of a string, for `meta.txt` provenance lines.
pub fn digest_str(s: &str) -> String {
    format!("{:016x}", fnv64(s.as_bytes()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stable_and_distinct() {
        assert_eq!(digest_str("abc"), digest_str("abc"));
        assert_ne!(digest_str("abc"), digest_str("abd"));
        assert_eq!(digest_str("").len(), 16);
    }
}
