//! Small shared helpers.

/// FNV-1a 64-bit hash. Used for vocabulary fingerprints and for deriving
/// per-sentence tie-break seeds; stable across platforms and releases,
/// unlike `std::collections::hash_map::DefaultHasher`.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        hash ^= u64::from(b);
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

/// Hash a sequence of strings with a separator that cannot occur in tokens.
pub fn fnv1a64_strs<I, S>(items: I) -> u64
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for item in items {
        for &b in item.as_ref().as_bytes() {
            hash ^= u64::from(b);
            hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
        }
        hash ^= 0xff;
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fnv_known_value() {
        // Reference vector for FNV-1a 64.
        assert_eq!(fnv1a64(b""), 0xcbf29ce484222325);
        assert_eq!(fnv1a64(b"a"), 0xaf63dc4c8601ec8c);
    }

    #[test]
    fn str_hash_distinguishes_boundaries() {
        assert_ne!(fnv1a64_strs(["ab", "c"]), fnv1a64_strs(["a", "bc"]));
    }
}
