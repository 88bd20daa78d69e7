//! Derivative-free simplex minimizer (Nelder–Mead) with restarts.

#[derive(Clone, Copy, Debug)]
pub struct SimplexOptions {
    pub initial_step: f64,
    pub max_iterations: usize,
    pub max_restarts: usize,
    /// Stop when the spread of function values over the simplex drops below this.
    pub f_tol: f64,
    /// Stop when the simplex diameter drops below this.
    pub x_tol: f64,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        Self {
            initial_step: 0.05,
            max_iterations: 20_000,
            max_restarts: 30,
            f_tol: 1e-15,
            x_tol: 1e-12,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SimplexResult<const N: usize> {
    pub x: [f64; N],
    pub f: f64,
    pub iterations: usize,
    pub evaluations: usize,
    pub converged: bool,
}

/// Minimizes `f` from `x0`. After each collapse the simplex is rebuilt around
/// the incumbent with a shrinking step until a restart no longer improves.
pub fn minimize<const N: usize, F>(f: F, x0: [f64; N], opts: &SimplexOptions) -> SimplexResult<N>
where
    F: Fn(&[f64; N]) -> f64,
{
    let mut best = single_run(&f, x0, opts.initial_step, opts);
    let mut total_iters = best.iterations;
    let mut total_evals = best.evaluations;
    let mut converged = best.converged;
    let mut step = opts.initial_step;
    for _ in 0..opts.max_restarts {
        step = (step * 0.5).max(1e-6);
        let run = single_run(&f, best.x, step, opts);
        total_iters += run.iterations;
        total_evals += run.evaluations;
        converged = run.converged;
        let improvement = best.f - run.f;
        if run.f < best.f {
            best = run;
        }
        if improvement <= opts.f_tol {
            break;
        }
    }
    SimplexResult {
        iterations: total_iters,
        evaluations: total_evals,
        converged,
        ..best
    }
}

fn single_run<const N: usize, F>(f: &F, x0: [f64; N], step: f64, opts: &SimplexOptions) -> SimplexResult<N>
where
    F: Fn(&[f64; N]) -> f64,
{
    let mut evals = 0usize;
    let mut eval = |x: &[f64; N]| {
        evals += 1;
        f(x)
    };
    let mut simplex: Vec<([f64; N], f64)> = Vec::with_capacity(N + 1);
    let f0 = eval(&x0);
    simplex.push((x0, f0));
    for i in 0..N {
        let mut x = x0;
        x[i] += step;
        let fx = eval(&x);
        simplex.push((x, fx));
    }

    let mut iterations = 0;
    let mut converged = false;
    while iterations < opts.max_iterations {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let f_spread = simplex[N].1 - simplex[0].1;
        let diameter = simplex[1..]
            .iter()
            .map(|(x, _)| dist(x, &simplex[0].0))
            .fold(0.0, f64::max);
        if f_spread <= opts.f_tol && diameter <= opts.x_tol {
            converged = true;
            break;
        }
        if diameter <= opts.x_tol * 1e-3 {
            // collapsed without flattening: nothing more to learn at this scale
            converged = true;
            break;
        }
        iterations += 1;

        let mut centroid = [0.0; N];
        for (x, _) in &simplex[..N] {
            for k in 0..N {
                centroid[k] += x[k] / N as f64;
            }
        }
        let worst = simplex[N];
        let along = |t: f64| {
            let mut p = [0.0; N];
            for k in 0..N {
                p[k] = centroid[k] + t * (worst.0[k] - centroid[k]);
            }
            p
        };

        let xr = along(-1.0);
        let fr = eval(&xr);
        if fr < simplex[0].1 {
            let xe = along(-2.0);
            let fe = eval(&xe);
            simplex[N] = if fe < fr { (xe, fe) } else { (xr, fr) };
            continue;
        }
        if fr < simplex[N - 1].1 {
            simplex[N] = (xr, fr);
            continue;
        }
        let (xc, fc) = if fr < worst.1 {
            let xc = along(-0.5);
            (xc, eval(&xc))
        } else {
            let xc = along(0.5);
            (xc, eval(&xc))
        };
        if fc < worst.1.min(fr) {
            simplex[N] = (xc, fc);
            continue;
        }
        let best = simplex[0].0;
        for entry in simplex.iter_mut().skip(1) {
            let mut p = [0.0; N];
            for k in 0..N {
                p[k] = best[k] + 0.5 * (entry.0[k] - best[k]);
            }
            *entry = (p, eval(&p));
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    SimplexResult {
        x: simplex[0].0,
        f: simplex[0].1,
        iterations,
        evaluations: evals,
        converged,
    }
}

fn dist<const N: usize>(a: &[f64; N], b: &[f64; N]) -> f64 {
    a.iter().zip(b).map(|(p, q)| (p - q) * (p - q)).sum::<f64>().sqrt()
}
