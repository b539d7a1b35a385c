//! Generators for the bundled example spaces.
//!
//! Cantor-type generators emit the left endpoints of the depth-N
//! construction intervals, not the intervals themselves: a depth-N endpoint
//! set is a finite snapshot whose consecutive gaps each cross one removed
//! hole plus one leaf interval, so its chain structure approaches the
//! symbolic depth-N truncation from above as N grows.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use chaindev::Metric;

use crate::error::CliError;
use crate::input::{InputDocument, PointRecord};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenerateKind {
    RandomPoints,
    Cantor,
    CantorSquare,
    Harmonic,
}

impl std::str::FromStr for GenerateKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "random-points" => Ok(GenerateKind::RandomPoints),
            "cantor" => Ok(GenerateKind::Cantor),
            "cantor-square" => Ok(GenerateKind::CantorSquare),
            "harmonic" => Ok(GenerateKind::Harmonic),
            other => Err(format!(
                "unknown generator {other:?}, expected random-points, cantor, cantor-square or harmonic"
            )),
        }
    }
}

fn check_cap(points: u64, cap: u64) -> Result<(), CliError> {
    if points > cap {
        Err(CliError::CapExceeded {
            message: format!("generator would emit {points} points, cap is {cap}"),
        })
    } else {
        Ok(())
    }
}

/// Seeded uniform points in the unit cube.
pub fn random_points(
    count: u64,
    dim: usize,
    seed: u64,
    metric: Metric,
    cap: u64,
) -> Result<InputDocument, CliError> {
    if count == 0 {
        return Err(CliError::invalid("random-points needs --count >= 1"));
    }
    if dim == 0 {
        return Err(CliError::invalid("random-points needs --dim >= 1"));
    }
    check_cap(count, cap)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points = (0..count)
        .map(|i| PointRecord {
            label: format!("p{i}"),
            coords: (0..dim).map(|_| rng.random_range(0.0..1.0)).collect(),
        })
        .collect();
    Ok(InputDocument::from_points(metric, points))
}

/// Left endpoints of the depth-N middle-thirds intervals, as exact ternary
/// rationals: digit strings over {0, 2} divided by 3^N.
pub fn cantor(depth: u32, cap: u64) -> Result<InputDocument, CliError> {
    if depth > 32 {
        return Err(CliError::CapExceeded {
            message: format!("cantor depth {depth} exceeds the supported maximum 32"),
        });
    }
    let count = 1u64 << depth;
    check_cap(count, cap)?;
    let coords = cantor_endpoints(depth);
    let points = coords
        .iter()
        .enumerate()
        .map(|(i, &x)| PointRecord {
            label: format!("p{i}"),
            coords: vec![x],
        })
        .collect();
    Ok(InputDocument::from_points(Metric::Euclidean, points))
}

/// Depth-N corner grid of the Cantor square under the Chebyshev metric:
/// one point per pair of depth-N endpoints, row-major.
pub fn cantor_square(depth: u32, cap: u64) -> Result<InputDocument, CliError> {
    if depth > 16 {
        return Err(CliError::CapExceeded {
            message: format!("cantor-square depth {depth} exceeds the supported maximum 16"),
        });
    }
    let side = 1u64 << depth;
    let count = side
        .checked_mul(side)
        .ok_or_else(|| CliError::CapExceeded {
            message: format!("cantor-square depth {depth} overflows"),
        })?;
    check_cap(count, cap)?;
    let axis = cantor_endpoints(depth);
    let mut points = Vec::with_capacity(count as usize);
    for (a, &x) in axis.iter().enumerate() {
        for (b, &y) in axis.iter().enumerate() {
            points.push(PointRecord {
                label: format!("p{}", a * axis.len() + b),
                coords: vec![x, y],
            });
        }
    }
    Ok(InputDocument::from_points(Metric::Chebyshev, points))
}

/// The set `{1/n : 1 <= n <= count}` on the line, in decreasing order.
pub fn harmonic(count: u64, cap: u64) -> Result<InputDocument, CliError> {
    if count == 0 {
        return Err(CliError::invalid("harmonic needs --count >= 1"));
    }
    check_cap(count, cap)?;
    let points = (1..=count)
        .map(|n| PointRecord {
            label: format!("p{}", n - 1),
            coords: vec![1.0 / n as f64],
        })
        .collect();
    Ok(InputDocument::from_points(Metric::Euclidean, points))
}

fn cantor_endpoints(depth: u32) -> Vec<f64> {
    let count = 1usize << depth;
    let denom = 3f64.powi(depth as i32);
    (0..count)
        .map(|idx| {
            // Bit k of idx (most significant first) picks the left (0) or
            // right (2) third at level k.
            let mut num: u64 = 0;
            for bit in (0..depth).rev() {
                num = num * 3 + if idx >> bit & 1 == 1 { 2 } else { 0 };
            }
            num as f64 / denom
        })
        .collect()
}
