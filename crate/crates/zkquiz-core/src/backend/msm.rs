use super::{BackendError, GroupElement, Scalar};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Sum of `scalar_i * point_i`.
///
/// With the `parallel` feature the terms are computed on the rayon pool;
/// group addition is exact, so the result is identical to the sequential
/// fold regardless of scheduling. Empty input yields the identity.
pub fn multi_scalar_mul<G: GroupElement>(
    points: &[G],
    scalars: &[Scalar],
) -> Result<G, BackendError> {
    check_lengths(points, scalars)?;
    #[cfg(feature = "parallel")]
    {
        Ok(points
            .par_iter()
            .zip(scalars.par_iter())
            .map(|(p, s)| term(p, s))
            .reduce(G::identity, |a, b| a + b))
    }
    #[cfg(not(feature = "parallel"))]
    {
        multi_scalar_mul_sequential(points, scalars)
    }
}

/// Sequential reference path for `multi_scalar_mul`. Always available so
/// benchmarks can compare both under one build.
pub fn multi_scalar_mul_sequential<G: GroupElement>(
    points: &[G],
    scalars: &[Scalar],
) -> Result<G, BackendError> {
    check_lengths(points, scalars)?;
    Ok(points
        .iter()
        .zip(scalars.iter())
        .map(|(p, s)| term(p, s))
        .fold(G::identity(), |a, b| a + b))
}

fn check_lengths<G>(points: &[G], scalars: &[Scalar]) -> Result<(), BackendError> {
    if points.len() != scalars.len() {
        return Err(BackendError::LengthMismatch {
            points: points.len(),
            scalars: scalars.len(),
        });
    }
    Ok(())
}

// Assignment vectors are dominated by 0/1 wire values; skipping the full
// scalar multiplication for those is a large win for the prover.
fn term<G: GroupElement>(point: &G, scalar: &Scalar) -> G {
    if scalar.is_zero() {
        G::identity()
    } else if *scalar == Scalar::ONE {
        *point
    } else {
        *point * *scalar
    }
}
