//! Stable 64-bit mixing used for colors, fingerprints, and seed derivation.
//!
//! Everything downstream that hashes (color refinement, graph fingerprints,
//! quantized feature digests) must produce identical values across runs,
//! machines, and thread counts, so we avoid `std`'s randomly keyed hashers
//! and use a fixed splitmix64-style mixer instead. Collision probability is
//! about `pairs * 2^-64`, negligible at the graph sizes this crate targets.

pub const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// splitmix64 finalizer.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives the seed for sub-stream `stream` from a master seed.
///
/// The splitting rule is `mix64(master ^ mix64((stream + 1) * GOLDEN))`;
/// distinct streams of the same master are decorrelated, and the rule is
/// documented here so experiment records can be reproduced externally.
#[inline]
pub fn derive_seed(master: u64, stream: u64) -> u64 {
    mix64(master ^ mix64(stream.wrapping_add(1).wrapping_mul(GOLDEN)))
}

/// Accumulates a sequence of words into a single 64-bit value.
///
/// The tag gives domain separation between unrelated hash uses. Inputs
/// must be framed by the caller (lengths before variable-size blocks);
/// `absorb` itself is position-dependent, so equal multisets hashed in
/// different orders give different values — sort first where multiset
/// semantics are wanted.
#[derive(Clone, Copy)]
pub struct Mixer(u64);

impl Mixer {
    pub fn new(tag: u64) -> Self {
        Mixer(mix64(tag))
    }

    #[inline]
    pub fn absorb(&mut self, x: u64) -> &mut Self {
        self.0 = mix64(self.0 ^ x.wrapping_mul(GOLDEN));
        self
    }

    pub fn absorb_slice(&mut self, xs: &[u64]) -> &mut Self {
        self.absorb(xs.len() as u64);
        for &x in xs {
            self.absorb(x);
        }
        self
    }

    #[inline]
    pub fn finish(&self) -> u64 {
        mix64(self.0)
    }
}

/// Order-independent digest of a multiset of words: sort, then absorb.
pub fn multiset_digest(tag: u64, values: &mut [u64]) -> u64 {
    values.sort_unstable();
    let mut m = Mixer::new(tag);
    m.absorb_slice(values);
    m.finish()
}
