use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{DensityMatrix, PureState2Q};
use crate::numkernel::{CMatrix4, SpinUnitary, C64};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SampleKind {
    /// ρ = GG†/Tr(GG†) with G a 4×4 complex Ginibre matrix (Hilbert–Schmidt measure).
    GinibreMixed,
    /// Haar-random pure state.
    HaarPure,
}

/// Seeded source of random states and local unitaries.
pub struct StateSampler {
    rng: ChaCha8Rng,
}

impl StateSampler {
    pub fn new(seed: u64) -> Self {
        StateSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    fn normal_c64(&mut self) -> C64 {
        C64::new(
            self.rng.sample(StandardNormal),
            self.rng.sample(StandardNormal),
        )
    }

    pub fn sample(&mut self, kind: SampleKind) -> DensityMatrix {
        match kind {
            SampleKind::GinibreMixed => {
                let g = CMatrix4::from_fn(|_, _| self.normal_c64());
                let w = g * g.dagger();
                let tr = w.trace().re;
                let m = w.scale_real(1.0 / tr);
                DensityMatrix::validate(m).expect("Ginibre sample is a valid state")
            }
            SampleKind::HaarPure => DensityMatrix::from_pure(&self.pure_state()),
        }
    }

    pub fn pure_state(&mut self) -> PureState2Q {
        let amps = std::array::from_fn(|_| self.normal_c64());
        PureState2Q::normalized(amps).expect("Gaussian vector is nonzero")
    }

    /// Haar-random element of SU(2).
    pub fn spin_unitary(&mut self) -> SpinUnitary {
        let q: [f64; 4] = std::array::from_fn(|_| self.rng.sample(StandardNormal));
        SpinUnitary::from_quaternion(q)
    }

    /// Uniform point on the unit sphere.
    pub fn unit_vector(&mut self) -> [f64; 3] {
        loop {
            let v: [f64; 3] = std::array::from_fn(|_| self.rng.sample(StandardNormal));
            let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
            if n > 1e-12 {
                return v.map(|x| x / n);
            }
        }
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.gen_range(lo..hi)
    }
}

/// A single random state; the same seed always yields the same state.
pub fn sample_random_state(seed: u64, kind: SampleKind) -> DensityMatrix {
    StateSampler::new(seed).sample(kind)
}
