//! Seeded tuple generators shared by the randomized checkers.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::Vector;
use crate::scalar::{Real, Scalar};

/// How a sampled tuple relates to linear dependence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TupleStyle {
    /// Coordinates uniform in `[-1, 1]`.
    Uniform,
    /// One vector is a combination of the others plus `perturbation * w`,
    /// with `w` a unit vector orthogonal to the others, so the tuple sits at
    /// Euclidean distance `perturbation` from dependence. Zero gives an
    /// exactly dependent tuple.
    NearDependent { perturbation: f64 },
}

/// Cycle of styles used by every axiom batch.
pub const STYLE_CYCLE: [TupleStyle; 6] = [
    TupleStyle::Uniform,
    TupleStyle::Uniform,
    TupleStyle::NearDependent { perturbation: 1e-3 },
    TupleStyle::NearDependent { perturbation: 1e-6 },
    TupleStyle::NearDependent {
        perturbation: 1e-12,
    },
    TupleStyle::NearDependent { perturbation: 0.0 },
];

pub fn style_for_trial(trial: usize) -> TupleStyle {
    STYLE_CYCLE[trial % STYLE_CYCLE.len()]
}

/// Deterministic generator for one named check; distinct streams keep the
/// checks independent of each other's draw counts.
pub fn stream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn uniform_vector<T: Scalar, R: Rng>(rng: &mut R, dim: usize, bound: f64) -> Vector<T> {
    let coords = (0..dim)
        .map(|_| T::from_f64_lossy(rng.gen_range(-bound..=bound)))
        .collect();
    Vector::new(coords).expect("sampled coordinates are finite")
}

/// `Σ coeffs[i] * vs[i]` over a possibly empty list, in dimension `dim`.
pub fn combination<T: Scalar>(dim: usize, vs: &[&Vector<T>], coeffs: &[T]) -> Vector<T> {
    vs.iter()
        .zip(coeffs)
        .fold(Vector::zeros(dim), |acc, (v, c)| acc.axpy(c, v))
}

/// Unit vector (Euclidean) orthogonal to every vector in `span`.
pub fn orthogonal_unit<T: Real, R: Rng>(rng: &mut R, dim: usize, span: &[&Vector<T>]) -> Vector<T> {
    let mut basis: Vec<Vector<T>> = Vec::with_capacity(span.len());
    for v in span {
        if let Some(q) = orthonormalize(v, &basis) {
            basis.push(q);
        }
    }
    loop {
        let w: Vector<T> = uniform_vector(rng, dim, 1.0);
        if let Some(q) = orthonormalize(&w, &basis) {
            return q;
        }
    }
}

fn orthonormalize<T: Real>(v: &Vector<T>, basis: &[Vector<T>]) -> Option<Vector<T>> {
    let dot = |a: &Vector<T>, b: &Vector<T>| {
        a.coords()
            .iter()
            .zip(b.coords())
            .fold(T::zero(), |acc, (x, y)| acc + *x * *y)
    };
    let mut r = v.clone();
    for _ in 0..2 {
        for q in basis {
            r = r.axpy(&-dot(&r, q), q);
        }
    }
    let len = dot(&r, &r).sqrt();
    let floor = T::from_f64_lossy(1e-6) * dot(v, v).sqrt();
    (len > floor && len > T::zero()).then(|| r.scaled(&len.recip()))
}

pub fn sample_tuple<T: Real, R: Rng>(
    rng: &mut R,
    dim: usize,
    arity: usize,
    style: TupleStyle,
) -> Vec<Vector<T>> {
    let mut vs: Vec<Vector<T>> = (0..arity).map(|_| uniform_vector(rng, dim, 1.0)).collect();
    if let TupleStyle::NearDependent { perturbation } = style {
        let slot = rng.gen_range(0..arity);
        let others: Vec<&Vector<T>> = vs
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != slot)
            .map(|(_, v)| v)
            .collect();
        let coeffs: Vec<T> = (0..others.len())
            .map(|_| T::from_f64_lossy(rng.gen_range(-1.0..=1.0)))
            .collect();
        let w = orthogonal_unit(rng, dim, &others);
        let replacement =
            combination(dim, &others, &coeffs).axpy(&T::from_f64_lossy(perturbation), &w);
        vs[slot] = replacement;
    }
    vs
}
