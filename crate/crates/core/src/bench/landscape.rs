use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::random_start;
use crate::error::{invalid, Result};
use crate::model::VqeProblem;
use crate::optimize::Objective;

/// Square grid over two parameters, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub resolution: usize,
    pub lo: f64,
    pub hi: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            resolution: 101,
            lo: -PI,
            hi: PI,
        }
    }
}

impl GridSpec {
    pub fn axis(&self) -> Vec<f64> {
        let r = self.resolution;
        if r == 1 {
            return vec![self.lo];
        }
        let step = (self.hi - self.lo) / (r - 1) as f64;
        (0..r)
            .map(|k| {
                if k + 1 == r {
                    self.hi
                } else {
                    self.lo + step * k as f64
                }
            })
            .collect()
    }
}

/// Energies on a 2-D slice of parameter space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Landscape {
    pub free: (usize, usize),
    pub axis: Vec<f64>,
    /// Row-major: `values[a * resolution + b]` is the energy at
    /// `θ_i = axis[a]`, `θ_j = axis[b]`.
    pub values: Vec<f64>,
    /// The fixed parameter vector the slice passes through.
    pub base: Vec<f64>,
}

impl Landscape {
    pub fn resolution(&self) -> usize {
        self.axis.len()
    }

    pub fn at(&self, a: usize, b: usize) -> f64 {
        self.values[a * self.resolution() + b]
    }

    /// Grid points strictly below all of their (up to eight) neighbours.
    pub fn local_minima(&self) -> Vec<(usize, usize)> {
        let r = self.resolution() as isize;
        let mut minima = Vec::new();
        for a in 0..r {
            for b in 0..r {
                let v = self.at(a as usize, b as usize);
                let is_min = (-1..=1).all(|da: isize| {
                    (-1..=1).all(|db: isize| {
                        let (x, y) = (a + da, b + db);
                        (da == 0 && db == 0)
                            || x < 0
                            || y < 0
                            || x >= r
                            || y >= r
                            || v < self.at(x as usize, y as usize)
                    })
                });
                if is_min {
                    minima.push((a as usize, b as usize));
                }
            }
        }
        minima
    }

    /// `theta_i,theta_j,energy` rows, header included.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("theta_i,theta_j,energy\n");
        let r = self.resolution();
        for a in 0..r {
            for b in 0..r {
                out.push_str(&format!(
                    "{},{},{}\n",
                    self.axis[a],
                    self.axis[b],
                    self.at(a, b)
                ));
            }
        }
        out
    }
}

/// Scans the energy over parameters `free.0` and `free.1`, holding the rest
/// at a uniform `[-π, π)` draw from `seed`.
pub fn landscape_scan(
    problem: &VqeProblem,
    free: (usize, usize),
    grid: GridSpec,
    seed: u64,
) -> Result<Landscape> {
    let dimension = problem.dimension();
    let (i, j) = free;
    if i >= dimension || j >= dimension {
        return Err(invalid(format!(
            "free parameters ({i}, {j}) out of range for {dimension} parameters"
        )));
    }
    if i == j {
        return Err(invalid("free parameters must differ"));
    }
    if grid.resolution == 0 || !grid.lo.is_finite() || !grid.hi.is_finite() {
        return Err(invalid(
            "grid needs a positive resolution and finite bounds",
        ));
    }
    let base = random_start(&mut ChaCha8Rng::seed_from_u64(seed), dimension);
    let axis = grid.axis();
    let mut params = base.clone();
    let mut values = Vec::with_capacity(axis.len() * axis.len());
    for &ti in &axis {
        for &tj in &axis {
            params[i] = ti;
            params[j] = tj;
            values.push(problem.evaluate(&params));
        }
    }
    Ok(Landscape {
        free,
        axis,
        values,
        base,
    })
}
