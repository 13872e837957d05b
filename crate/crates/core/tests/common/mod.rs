//! Reference computations that share no code with the library's evaluation path.
#![allow(dead_code)]

use num_complex::Complex64 as C;
use std::f64::consts::PI;

pub type Matrix = Vec<Vec<C>>;

fn omega_pow(k: usize, d: usize) -> C {
    C::from_polar(1.0, 2.0 * PI * (k % d) as f64 / d as f64)
}

/// `X = Σ |k+1⟩⟨k|` as a dense matrix.
pub fn shift_matrix(d: usize) -> Matrix {
    let mut m = vec![vec![C::new(0.0, 0.0); d]; d];
    for k in 0..d {
        m[(k + 1) % d][k] = C::new(1.0, 0.0);
    }
    m
}

/// `Z = Σ ω^k |k⟩⟨k|` as a dense matrix.
pub fn clock_matrix(d: usize) -> Matrix {
    let mut m = vec![vec![C::new(0.0, 0.0); d]; d];
    for (k, row) in m.iter_mut().enumerate() {
        row[k] = omega_pow(k, d);
    }
    m
}

pub fn identity(d: usize) -> Matrix {
    let mut m = vec![vec![C::new(0.0, 0.0); d]; d];
    for (k, row) in m.iter_mut().enumerate() {
        row[k] = C::new(1.0, 0.0);
    }
    m
}

pub fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let d = a.len();
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| (0..d).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn matpow(a: &Matrix, p: usize) -> Matrix {
    (0..p).fold(identity(a.len()), |acc, _| matmul(&acc, a))
}

pub fn apply(a: &Matrix, v: &[C]) -> Vec<C> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

/// Fourier vector `|e_l⟩` from the DFT definition.
pub fn fourier_vector(d: usize, l: usize) -> Vec<C> {
    (0..d)
        .map(|k| omega_pow(k * l, d) / (d as f64).sqrt())
        .collect()
}

/// `(|0⟩ + |e_0⟩)` rescaled by its numerically computed norm.
pub fn anchor(d: usize) -> Vec<C> {
    let mut v = fourier_vector(d, 0);
    v[0] += C::new(1.0, 0.0);
    let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / n).collect()
}

fn overlap_sqr(basis_vec: &[C], v: &[C]) -> f64 {
    basis_vec
        .iter()
        .zip(v)
        .map(|(b, x)| b.conj() * x)
        .sum::<C>()
        .norm_sqr()
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Gate {
    Independent,
    Literal,
}

/// Average success of the restricted protocol, computed with dense matrices.
pub fn dense_restricted_average(d: usize, dp: usize, gate: Gate) -> f64 {
    let x = shift_matrix(dp);
    let z = clock_matrix(dp);
    let psi = anchor(dp);
    let mut total = 0.0;
    for x1 in 0..d {
        for x2 in 0..d {
            let (use_z, use_x) = match gate {
                Gate::Independent => (x2 < dp, x1 < dp),
                Gate::Literal => (x1 < dp && x2 < dp, x1 < dp && x2 < dp),
            };
            let zp = if use_z { matpow(&z, x2) } else { identity(dp) };
            let xp = if use_x { matpow(&x, x1) } else { identity(dp) };
            let state = apply(&matmul(&xp, &zp), &psi);
            for (y, target) in [(1, x1), (2, x2)] {
                for l in 0..dp {
                    let bvec: Vec<C> = if y == 1 {
                        (0..dp)
                            .map(|k| C::new(if k == l { 1.0 } else { 0.0 }, 0.0))
                            .collect()
                    } else {
                        fourier_vector(dp, l)
                    };
                    let p = overlap_sqr(&bvec, &state);
                    let hit = if l == 0 {
                        let choices = 1 + (d - dp);
                        if target == 0 || target >= dp {
                            1.0 / choices as f64
                        } else {
                            0.0
                        }
                    } else if l == target {
                        1.0
                    } else {
                        0.0
                    };
                    total += p * hit;
                }
            }
        }
    }
    total / (2 * d * d) as f64
}

/// Best average over every encoder and every decoder tuple, no reductions.
pub fn full_classical_search(n: usize, d: usize) -> (usize, usize) {
    let inputs = d.pow(n as u32);
    let per_decoder = d.pow(d as u32);
    let decoders_total = per_decoder.pow(n as u32);
    let encoders_total = d.pow(inputs as u32);
    let digits = |mut v: usize, len: usize| {
        let mut out = vec![0; len];
        for s in out.iter_mut().rev() {
            *s = v % d;
            v /= d;
        }
        out
    };
    let mut best = 0;
    for e in 0..encoders_total {
        let enc = digits(e, inputs);
        for t in 0..decoders_total {
            let flat = digits(t, n * d);
            let mut correct = 0;
            for (x, &m) in enc.iter().enumerate() {
                let xs = digits(x, n);
                for y in 0..n {
                    if flat[y * d + m] == xs[y] {
                        correct += 1;
                    }
                }
            }
            best = best.max(correct);
        }
    }
    (best, n * inputs)
}
