//! Box-constrained Nelder–Mead simplex minimiser.
//!
//! Trial points are projected onto the box, so a coordinate that wants to
//! leave through a bound settles exactly on it.

#[derive(Debug, Clone)]
pub struct SimplexOptions {
    /// Converged when every vertex lies within `xtol·(1 + |x_best|)` of the
    /// best vertex in every coordinate.
    pub xtol: f64,
    pub max_evals: usize,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        Self {
            xtol: 1e-8,
            max_evals: 4000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SimplexResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub evals: usize,
    pub converged: bool,
}

#[derive(Debug, Clone)]
pub struct Bounds {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

impl Bounds {
    pub fn unbounded(dim: usize) -> Self {
        Self {
            lower: vec![f64::NEG_INFINITY; dim],
            upper: vec![f64::INFINITY; dim],
        }
    }

    fn project(&self, x: &mut [f64]) {
        for ((v, &lo), &hi) in x.iter_mut().zip(&self.lower).zip(&self.upper) {
            *v = v.clamp(lo, hi);
        }
    }
}

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;

/// Minimises `f` from `x0` with initial simplex edges `steps`.
///
/// Non-finite objective values are treated as `+∞`. If a step would leave
/// the box, it is flipped to the other side of `x0`.
pub fn minimize<F: FnMut(&[f64]) -> f64>(
    mut f: F,
    x0: &[f64],
    steps: &[f64],
    bounds: &Bounds,
    opts: &SimplexOptions,
) -> SimplexResult {
    let dim = x0.len();
    let mut evals = 0;
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
    bounds.project(&mut start);
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(dim + 1);
    let f0 = eval(&start, &mut evals);
    simplex.push((start.clone(), f0));
    for i in 0..dim {
        let mut v = start.clone();
        v[i] += steps[i];
        if v[i] > bounds.upper[i] {
            v[i] = start[i] - steps[i];
        }
        bounds.project(&mut v);
        let fv = eval(&v, &mut evals);
        simplex.push((v, fv));
    }

    let mut converged = false;
    while evals < opts.max_evals {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let best = &simplex[0].0;
        let spread = simplex[1..].iter().all(|(v, _)| {
            v.iter()
                .zip(best)
                .all(|(a, b)| (a - b).abs() <= opts.xtol * (1.0 + b.abs()))
        });
        if spread {
            converged = true;
            break;
        }

        let worst = simplex[dim].clone();
        let mut centroid = vec![0.0; dim];
        for (v, _) in &simplex[..dim] {
            for (c, x) in centroid.iter_mut().zip(v) {
                *c += x / dim as f64;
            }
        }
        let along = |t: f64| -> Vec<f64> {
            let mut p: Vec<f64> = centroid
                .iter()
                .zip(&worst.0)
                .map(|(c, w)| c + t * (c - w))
                .collect();
            bounds.project(&mut p);
            p
        };

        let xr = along(REFLECT);
        let fr = eval(&xr, &mut evals);
        if fr < simplex[0].1 {
            let xe = along(EXPAND);
            let fe = eval(&xe, &mut evals);
            simplex[dim] = if fe < fr { (xe, fe) } else { (xr, fr) };
        } else if fr < simplex[dim - 1].1 {
            simplex[dim] = (xr, fr);
        } else {
            let (xc, fc) = if fr < worst.1 {
                let xc = along(CONTRACT);
                let fc = eval(&xc, &mut evals);
                (xc, fc)
            } else {
                let xc = along(-CONTRACT);
                let fc = eval(&xc, &mut evals);
                (xc, fc)
            };
            if fc < worst.1.min(fr) {
                simplex[dim] = (xc, fc);
            } else {
                let best = simplex[0].0.clone();
                for (v, fv) in simplex.iter_mut().skip(1) {
                    for (x, b) in v.iter_mut().zip(&best) {
                        *x = b + SHRINK * (*x - b);
                    }
                    bounds.project(v);
                    *fv = eval(v, &mut evals);
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (x, value) = simplex.swap_remove(0);
    SimplexResult {
        x,
        value,
        evals,
        converged,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rosenbrock() {
        let f = |x: &[f64]| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2);
        let r = minimize(f, &[-1.2, 1.0], &[0.5, 0.5], &Bounds::unbounded(2), &SimplexOptions {
            xtol: 1e-10,
            max_evals: 10_000,
        });
        assert!(r.converged);
        assert!((r.x[0] - 1.0).abs() < 1e-6 && (r.x[1] - 1.0).abs() < 1e-6, "{:?}", r.x);
    }

    #[test]
    fn minimum_on_the_boundary() {
        // Unconstrained minimum at x = -1, box starts at 0.
        let f = |x: &[f64]| (x[0] + 1.0).powi(2) + (x[1] - 2.0).powi(2);
        let bounds = Bounds {
            lower: vec![0.0, f64::NEG_INFINITY],
            upper: vec![10.0, f64::INFINITY],
        };
        let r = minimize(f, &[3.0, 0.0], &[1.0, 1.0], &bounds, &SimplexOptions::default());
        assert_eq!(r.x[0], 0.0);
        assert!((r.x[1] - 2.0).abs() < 1e-7);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let f = |x: &[f64]| x[0].powi(2) + x[1].powi(2);
        let r = minimize(f, &[5.0, 5.0], &[1.0, 1.0], &Bounds::unbounded(2), &SimplexOptions {
            xtol: 1e-12,
            max_evals: 10,
        });
        assert!(!r.converged);
        assert!(r.value <= 50.0);
    }
}
