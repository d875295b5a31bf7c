//! Nelder–Mead simplex minimization with adaptive coefficients.

use alloc::vec;
use alloc::vec::Vec;

use crate::math::sqrt;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SimplexOptions {
    /// Stop once every vertex is within this distance of the best vertex.
    pub diameter_tol: f64,
    pub max_evals: usize,
    /// Initial edge length per coordinate, as a fraction of the coordinate's
    /// search range.
    pub initial_step: f64,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        SimplexOptions {
            diameter_tol: 1e-10,
            max_evals: 20_000,
            initial_step: 0.1,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimplexResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub evaluations: usize,
    pub iterations: usize,
    pub diameter: f64,
    pub converged: bool,
}

fn distance(a: &[f64], b: &[f64]) -> f64 {
    sqrt(a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum())
}

/// Minimizes `f` from `x0`. `project` maps every trial point into the
/// feasible region before it is evaluated and stored; `ranges` sets the
/// initial simplex edge per coordinate.
pub fn minimize<F, P>(
    mut f: F,
    project: P,
    x0: &[f64],
    ranges: &[f64],
    opts: &SimplexOptions,
) -> SimplexResult
where
    F: FnMut(&[f64]) -> f64,
    P: Fn(&mut [f64]),
{
    let n = x0.len();
    let nf = n as f64;
    // Gao & Han adaptive coefficients
    let (alpha, beta, gamma, delta) = if n >= 2 {
        (1.0, 1.0 + 2.0 / nf, 0.75 - 1.0 / (2.0 * nf), 1.0 - 1.0 / nf)
    } else {
        (1.0, 2.0, 0.5, 0.5)
    };

    let mut evals = 0usize;
    let mut eval = |x: &[f64], evals: &mut usize| {
        *evals += 1;
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };

    let mut start = x0.to_vec();
    project(&mut start);
    let mut iterations = 0;
    let mut result = run(&mut eval, &project, &start, ranges, opts, (alpha, beta, gamma, delta), &mut evals, &mut iterations);
    // A clamped simplex can collapse onto a face and stall; rebuild it
    // around the best point until that stops helping.
    while result.1 && evals < opts.max_evals {
        let again = run(&mut eval, &project, &result.0, ranges, opts, (alpha, beta, gamma, delta), &mut evals, &mut iterations);
        let improved = again.2 < result.2;
        result = again;
        if !improved {
            break;
        }
    }
    let (x, converged, value, diameter) = result;
    SimplexResult {
        x,
        value,
        evaluations: evals,
        iterations,
        diameter,
        converged,
    }
}

#[allow(clippy::too_many_arguments)]
fn run<E, P>(
    eval: &mut E,
    project: &P,
    start: &[f64],
    ranges: &[f64],
    opts: &SimplexOptions,
    (alpha, beta, gamma, delta): (f64, f64, f64, f64),
    evals: &mut usize,
    iterations: &mut usize,
) -> (Vec<f64>, bool, f64, f64)
where
    E: FnMut(&[f64], &mut usize) -> f64,
    P: Fn(&mut [f64]),
{
    let n = start.len();
    let nf = n as f64;
    let mut verts: Vec<Vec<f64>> = vec![start.to_vec()];
    for i in 0..n {
        let mut v = start.to_vec();
        let step = opts.initial_step * ranges[i];
        v[i] += step;
        project(&mut v);
        if distance(&v, start) == 0.0 {
            v[i] -= 2.0 * step;
            project(&mut v);
        }
        verts.push(v);
    }
    let mut vals: Vec<f64> = verts.iter().map(|v| eval(v, evals)).collect();

    let mut converged = false;
    let mut order: Vec<usize> = (0..=n).collect();
    let mut diameter;
    loop {
        order.sort_by(|&a, &b| vals[a].partial_cmp(&vals[b]).unwrap_or(core::cmp::Ordering::Equal).then(a.cmp(&b)));
        let best = order[0];
        diameter = verts
            .iter()
            .map(|v| distance(v, &verts[best]))
            .fold(0.0, f64::max);
        if diameter < opts.diameter_tol {
            converged = true;
            break;
        }
        if *evals >= opts.max_evals {
            break;
        }
        *iterations += 1;

        let worst = order[n];
        let second_worst = order[n - 1];
        let mut centroid = vec![0.0; n];
        for &i in &order[..n] {
            for (c, x) in centroid.iter_mut().zip(&verts[i]) {
                *c += x / nf;
            }
        }
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&verts[worst])
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };

        let mut xr = along(alpha);
        project(&mut xr);
        let fr = eval(&xr, evals);
        if fr < vals[best] {
            let mut xe = along(alpha * beta);
            project(&mut xe);
            let fe = eval(&xe, evals);
            if fe < fr {
                verts[worst] = xe;
                vals[worst] = fe;
            } else {
                verts[worst] = xr;
                vals[worst] = fr;
            }
            continue;
        }
        if fr < vals[second_worst] {
            verts[worst] = xr;
            vals[worst] = fr;
            continue;
        }
        let (mut xc, outside) = if fr < vals[worst] {
            (along(alpha * gamma), true)
        } else {
            (along(-gamma), false)
        };
        project(&mut xc);
        let fc = eval(&xc, evals);
        let accept = if outside { fc <= fr } else { fc < vals[worst] };
        if accept {
            verts[worst] = xc;
            vals[worst] = fc;
            continue;
        }
        // shrink toward the best vertex
        let anchor = verts[best].clone();
        for &i in &order[1..] {
            let mut v: Vec<f64> = anchor
                .iter()
                .zip(&verts[i])
                .map(|(b, x)| b + delta * (x - b))
                .collect();
            project(&mut v);
            vals[i] = eval(&v, evals);
            verts[i] = v;
        }
    }
    let best = order[0];
    (verts[best].clone(), converged, vals[best], diameter)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rosenbrock() {
        let f = |x: &[f64]| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2);
        let r = minimize(f, |_| {}, &[-1.2, 1.0], &[1.0, 1.0], &SimplexOptions::default());
        assert!(r.converged);
        assert!((r.x[0] - 1.0).abs() < 1e-8 && (r.x[1] - 1.0).abs() < 1e-8);
    }

    #[test]
    fn respects_projection() {
        // decreasing in x[0], feasible region x[0] >= 0
        let f = |x: &[f64]| x[0] + (x[1] - 0.5).powi(2);
        let clamp = |x: &mut [f64]| x[0] = x[0].max(0.0);
        let r = minimize(f, clamp, &[2.0, 2.0], &[1.0, 1.0], &SimplexOptions::default());
        assert!(r.x[0].abs() < 1e-9);
        assert!((r.x[1] - 0.5).abs() < 1e-8);
    }

    #[test]
    fn budget_stops_search() {
        let f = |x: &[f64]| x.iter().map(|v| v * v).sum::<f64>();
        let opts = SimplexOptions {
            max_evals: 30,
            ..SimplexOptions::default()
        };
        let r = minimize(f, |_| {}, &[5.0; 4], &[1.0; 4], &opts);
        assert!(!r.converged);
        assert!(r.evaluations >= 30 && r.evaluations < 45);
    }
}
