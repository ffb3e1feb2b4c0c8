//! Deterministic, splittable random streams.
//!
//! Every run owns exactly one [`RngStream`]. Streams are ChaCha8 instances
//! keyed by the seed; substreams share the key and select a different
//! 64-bit stream id, so run `k` of a batch draws the same numbers no matter
//! which worker executes it or in which order.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    inner: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Independent stream `index` derived from the same seed.
    pub fn substream(&self, index: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(self.seed);
        // stream 0 is the parent itself
        inner.set_stream(index.wrapping_add(1));
        Self {
            seed: self.seed,
            inner,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Uniform draw in `[0, 1)` with 53 bits of precision.
    pub fn uniform(&mut self) -> f64 {
        (self.inner.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform draw in `[low, high]`.
    pub fn uniform_in(&mut self, low: f64, high: f64) -> f64 {
        let v = low + (high - low) * self.uniform();
        v.clamp(low, high)
    }

    /// Uniform index in `[0, n)`. `n` must be positive.
    pub fn index(&mut self, n: usize) -> usize {
        assert!(n > 0, "index range must be non-empty");
        self.inner.random_range(0..n)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_sequence() {
        let mut a = RngStream::new(42);
        let mut b = RngStream::new(42);
        for _ in 0..100 {
            assert_eq!(a.uniform().to_bits(), b.uniform().to_bits());
        }
    }

    #[test]
    fn first_draws_are_pinned() {
        // Regression pin: any change to the generator or the float mapping
        // shows up here.
        let mut s = RngStream::new(7);
        let draws: Vec<u64> = (0..8).map(|_| s.next_u64()).collect();
        let mut again = RngStream::new(7);
        let again: Vec<u64> = (0..8).map(|_| again.next_u64()).collect();
        assert_eq!(draws, again);
        assert_eq!(draws, PINNED_SEED7.to_vec());

        let mut sub = RngStream::new(7).substream(3);
        let sub: Vec<u64> = (0..8).map(|_| sub.next_u64()).collect();
        assert_eq!(sub, PINNED_SEED7_SUB3.to_vec());
    }

    const PINNED_SEED7: [u64; 8] = [
        2910824217569608635,
        3098856782162503994,
        12991601491111613745,
        13406010708265417443,
        11091271176959810440,
        6629102542470643238,
        1532177833826564251,
        15666632647712377470,
    ];
    const PINNED_SEED7_SUB3: [u64; 8] = [
        18244131744192737788,
        11088898696504049701,
        8442708960039922528,
        10048795427248311395,
        16093303801869677778,
        15498040940004380632,
        12203186516867922057,
        307553024461448869,
    ];

    #[test]
    fn substreams_differ_and_are_reproducible() {
        let root = RngStream::new(11);
        let mut a = root.substream(0);
        let mut b = root.substream(1);
        let mut a2 = RngStream::new(11).substream(0);
        let xa: Vec<u64> = (0..16).map(|_| a.next_u64()).collect();
        let xb: Vec<u64> = (0..16).map(|_| b.next_u64()).collect();
        let xa2: Vec<u64> = (0..16).map(|_| a2.next_u64()).collect();
        assert_eq!(xa, xa2);
        assert_ne!(xa, xb);
    }

    #[test]
    fn adjacent_substreams_look_independent() {
        // Pearson correlation of paired uniforms from streams k and k+1.
        let root = RngStream::new(2024);
        let mut a = root.substream(5);
        let mut b = root.substream(6);
        let n = 20_000;
        let xs: Vec<f64> = (0..n).map(|_| a.uniform()).collect();
        let ys: Vec<f64> = (0..n).map(|_| b.uniform()).collect();
        let mx = xs.iter().sum::<f64>() / n as f64;
        let my = ys.iter().sum::<f64>() / n as f64;
        let mut sxy = 0.0;
        let mut sxx = 0.0;
        let mut syy = 0.0;
        for (x, y) in xs.iter().zip(&ys) {
            sxy += (x - mx) * (y - my);
            sxx += (x - mx) * (x - mx);
            syy += (y - my) * (y - my);
        }
        let r = sxy / (sxx * syy).sqrt();
        // 4 sigma for n = 20000
        assert!(r.abs() < 4.0 / (n as f64).sqrt(), "r = {r}");
    }

    #[test]
    fn uniform_in_respects_bounds() {
        let mut s = RngStream::new(1);
        for _ in 0..10_000 {
            let v = s.uniform_in(-1.5, 2.5);
            assert!((-1.5..=2.5).contains(&v));
        }
    }
}
