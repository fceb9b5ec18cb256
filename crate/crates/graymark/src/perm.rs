//! Deterministic keyed position shuffling.
//!
//! The generator and shuffle are pinned bit-exactly so independently
//! written encoders and decoders interoperate: xorshift64 with the
//! (13, 7, 17) triple, and a Fisher-Yates pass from the last index down
//! to 1 taking j = output mod (i + 1). Key 0 bypasses shuffling.

/// Marsaglia xorshift64. The all-zero state is a fixed point, so it is
/// only ever constructed from a nonzero seed.
#[derive(Debug, Clone)]
pub struct XorShift64 {
    state: u64,
}

impl XorShift64 {
    pub fn new(seed: u64) -> Self {
        assert_ne!(seed, 0, "xorshift64 needs a nonzero seed");
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut s = self.state;
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        self.state = s;
        s
    }
}

/// The embedding order for a given key: position of the k-th bit is
/// perm[k]. Key 0 is the identity.
pub fn keyed_permutation(key: u64, len: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..len).collect();
    if key == 0 {
        return perm;
    }
    let mut rng = XorShift64::new(key);
    for i in (1..len).rev() {
        let j = (rng.next_u64() % (i as u64 + 1)) as usize;
        perm.swap(i, j);
    }
    perm
}
