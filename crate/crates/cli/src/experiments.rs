//! The five named experiments. Each consumes a parameter sweep and returns a
//! deterministic table; grid points are evaluated in grid order, so a fixed
//! config (and seed) reproduces byte-identical output.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use faulty_grover::geometry::{
    check_corollary_one, fault_displacement, meridian_gap, theorem1_constants,
    THEOREM1_GRID_STEP_PI, THEOREM1_INCLINATION_PI,
};
use faulty_grover::oracle::{full_step, FullDensity};
use faulty_grover::{
    sample_trajectory, Error as CoreError, SearchSpace, SymmetricDensity, WeightedMixture,
};

use crate::error::CliError;
use crate::table::{Cell, Table};

/// Largest instance the `--oracle-check` shadow evolution accepts.
pub const ORACLE_CHECK_MAX_N: usize = 32;
/// Branch cap for the exact-enumeration reference in `montecarlo`.
pub const MERGE_REFERENCE_MAX_BRANCHES: usize = 1 << 20;
/// Thresholds reported by the `limit` experiment.
pub const LIMIT_THRESHOLDS: [f64; 3] = [1e-1, 1e-2, 1e-3];
/// Absolute slack applied to the success-probability floors, covering the
/// finite-n corrections to the small-angle step counts.
pub const FLOOR_SLACK: f64 = 0.01;

/// One parameter sweep as assembled from the command line.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub ns: Vec<usize>,
    pub ks: Vec<usize>,
    pub ps: Vec<f64>,
    pub t_max: Option<usize>,
    pub seed: Option<u64>,
    pub samples: usize,
    pub merge_tol: Option<f64>,
    pub oracle_check: bool,
}

/// Table plus the summary flags the process exit code depends on.
#[derive(Debug)]
pub struct RunOutcome {
    pub table: Table,
    /// Rows whose `pass` column came out false.
    pub failed_assertions: usize,
    /// Instances that hit their step budget without converging.
    pub budget_exceeded: usize,
}

impl RunOutcome {
    fn new(table: Table) -> Self {
        Self {
            table,
            failed_assertions: 0,
            budget_exceeded: 0,
        }
    }
}

fn space(n: usize, k: usize, p: f64) -> Result<SearchSpace<f64>, CliError> {
    SearchSpace::new(n, k, p).map_err(CliError::from)
}

/// Rounds the paper-style real-valued step count, half away from zero.
pub fn round_steps(factor: f64, n: usize, k: usize) -> usize {
    (factor * FRAC_PI_4 * (n as f64 / k as f64).sqrt()).round() as usize
}

/// Shadow full-matrix evolution for `--oracle-check` runs.
struct OracleShadow {
    full: FullDensity<f64>,
    space: SearchSpace<f64>,
    max_dev: f64,
}

impl OracleShadow {
    fn new(sp: &SearchSpace<f64>, enabled: bool) -> Option<Self> {
        if !enabled || sp.n() > ORACLE_CHECK_MAX_N {
            return None;
        }
        Some(Self {
            full: FullDensity::uniform(sp.n()).expect("guarded size"),
            space: *sp,
            max_dev: 0.0,
        })
    }

    fn step_and_compare(&mut self, reduced: &SymmetricDensity<f64>) -> Result<f64, CliError> {
        self.full = full_step(&self.full, &self.space)?;
        let expanded = FullDensity::from_symmetric(reduced, &self.space)?;
        let dev = expanded.max_abs_diff(&self.full);
        self.max_dev = self.max_dev.max(dev);
        Ok(dev)
    }
}

/// `simulate`: probability curves from the density evolution,
/// one row per step.
pub fn simulate(cfg: &SweepConfig) -> Result<RunOutcome, CliError> {
    let t_max = cfg
        .t_max
        .ok_or_else(|| CliError::Config("simulate requires --t-max".into()))?;
    let mut columns = vec![
        "n",
        "k",
        "p",
        "t",
        "p_unmarked",
        "p_nonfaulty_marked",
        "p_faulty",
        "trace_distance_to_limit",
    ];
    if cfg.oracle_check {
        columns.push("oracle_max_dev");
    }
    let mut table = Table::new(columns);

    for &n in &cfg.ns {
        for &k in &cfg.ks {
            for &p in &cfg.ps {
                let sp = space(n, k, p)?;
                let mut rho = SymmetricDensity::uniform(&sp);
                let mut shadow = OracleShadow::new(&sp, cfg.oracle_check);
                for t in 0..=t_max {
                    if t > 0 {
                        rho = rho.step(&sp);
                        if let Some(shadow) = shadow.as_mut() {
                            shadow.step_and_compare(&rho)?;
                        }
                    }
                    let probs = rho.success_probs(&sp);
                    let distance = rho.trace_distance_to_limit(&sp).ok();
                    let mut row = vec![
                        Cell::from(n),
                        Cell::from(k),
                        Cell::from(p),
                        Cell::from(t),
                        Cell::from(probs.unmarked),
                        Cell::from(probs.nonfaulty_marked),
                        Cell::from(probs.faulty),
                        Cell::from(distance),
                    ];
                    if cfg.oracle_check {
                        row.push(Cell::from(shadow.as_ref().map(|s| s.max_dev)));
                    }
                    table.push_row(row);
                }
            }
        }
    }
    Ok(RunOutcome::new(table))
}

/// `theorem1`: marked probability at the prolonged measurement times, with
/// the window scan `t` in `[T_G, t_measure]` emitted for inspection.
pub fn theorem1(cfg: &SweepConfig) -> Result<RunOutcome, CliError> {
    let report = theorem1_constants::<f64>()?;
    let mut table = Table::new(vec![
        "n", "k", "p", "role", "rule", "t", "p_marked", "floor", "slack", "pass",
    ]);
    let mut failed = 0usize;

    for &n in &cfg.ns {
        for &k in &cfg.ks {
            if k < 2 {
                return Err(CliError::Config(
                    "theorem1 needs at least one non-faulty marked item (k >= 2)".into(),
                ));
            }
            for &p in &cfg.ps {
                let sp = space(n, k, p)?;
                // (rule label, measurement time, floor to assert)
                let mut measures: Vec<(&str, usize, Option<f64>)> = Vec::new();
                measures.push((
                    "1.25x",
                    round_steps(1.25, n, k),
                    // the 1.25x floor binds for k >= 3; for k = 2 it holds
                    // only under an at-most-one-fault promise, so the row is
                    // reported without an assertion
                    (k >= 3).then_some(report.floor_many),
                ));
                if k == 2 {
                    measures.push(("1.34x", round_steps(1.34, n, 2), Some(report.floor_single)));
                }
                let t_grover = round_steps(1.0, n, k);
                let t_end = measures.iter().map(|m| m.1).max().unwrap();

                let mut marked = Vec::with_capacity(t_end + 1);
                let mut rho = SymmetricDensity::uniform(&sp);
                marked.push(rho.success_probs(&sp).marked());
                for _ in 0..t_end {
                    rho = rho.step(&sp);
                    marked.push(rho.success_probs(&sp).marked());
                }

                for t in t_grover..=t_end {
                    table.push_row(vec![
                        Cell::from(n),
                        Cell::from(k),
                        Cell::from(p),
                        Cell::from("window"),
                        Cell::Empty,
                        Cell::from(t),
                        Cell::from(marked[t]),
                        Cell::Empty,
                        Cell::Empty,
                        Cell::Empty,
                    ]);
                }
                for (rule, t, floor) in measures {
                    let p_marked = marked[t.min(t_end)];
                    let pass = floor.map(|f| p_marked >= f - FLOOR_SLACK);
                    if pass == Some(false) {
                        failed += 1;
                    }
                    table.push_row(vec![
                        Cell::from(n),
                        Cell::from(k),
                        Cell::from(p),
                        Cell::from("measure"),
                        Cell::from(rule),
                        Cell::from(t),
                        Cell::from(p_marked),
                        Cell::from(floor),
                        Cell::from(floor.map(|_| FLOOR_SLACK)),
                        Cell::from(pass),
                    ]);
                }
            }
        }
    }
    let mut outcome = RunOutcome::new(table);
    outcome.failed_assertions = failed;
    Ok(outcome)
}

/// `limit`: convergence of the density toward the equal-thirds limiting
/// state; one row per instance with threshold-crossing times.
pub fn limit(cfg: &SweepConfig) -> Result<RunOutcome, CliError> {
    let mut columns = vec![
        "n",
        "k",
        "p",
        "budget",
        "t_below_1e-1",
        "t_below_1e-2",
        "t_below_1e-3",
        "converged",
        "a",
        "a_prime",
        "b",
        "c",
        "d_prime",
        "d",
    ];
    if cfg.oracle_check {
        columns.push("oracle_max_dev");
    }
    let mut table = Table::new(columns);
    let mut exceeded = 0usize;

    for &n in &cfg.ns {
        for &k in &cfg.ks {
            for &p in &cfg.ps {
                if k < 2 {
                    return Err(CliError::Config(
                        "limit needs at least one non-faulty marked item (k >= 2)".into(),
                    ));
                }
                if !(p > 0.0 && p < 1.0) {
                    return Err(CliError::Config(format!(
                        "limit needs a genuinely faulty query, 0 < p < 1; got p = {p}"
                    )));
                }
                let sp = space(n, k, p)?;
                if sp.unmarked() == 0 {
                    return Err(CliError::Config("limit needs n > k".into()));
                }
                let budget = (100.0 * n as f64 / p.min(1.0 - p)).ceil() as usize;
                let mut rho = SymmetricDensity::uniform(&sp);
                let mut shadow = OracleShadow::new(&sp, cfg.oracle_check);
                let mut crossings: [Option<usize>; 3] = [None; 3];
                for t in 1..=budget {
                    rho = rho.step(&sp);
                    if let Some(shadow) = shadow.as_mut() {
                        shadow.step_and_compare(&rho)?;
                    }
                    let d = rho.trace_distance_to_limit(&sp)?;
                    for (slot, &threshold) in crossings.iter_mut().zip(LIMIT_THRESHOLDS.iter()) {
                        if slot.is_none() && d < threshold {
                            *slot = Some(t);
                        }
                    }
                    if crossings[2].is_some() {
                        break;
                    }
                }
                let converged = crossings[2].is_some();
                if !converged {
                    exceeded += 1;
                }
                let mut row = vec![
                    Cell::from(n),
                    Cell::from(k),
                    Cell::from(p),
                    Cell::from(budget),
                    Cell::from(crossings[0]),
                    Cell::from(crossings[1]),
                    Cell::from(crossings[2]),
                    Cell::from(converged),
                    Cell::from(rho.a),
                    Cell::from(rho.a_prime),
                    Cell::from(rho.b),
                    Cell::from(rho.c),
                    Cell::from(rho.d_prime),
                    Cell::from(rho.d),
                ];
                if cfg.oracle_check {
                    row.push(Cell::from(shadow.as_ref().map(|s| s.max_dev)));
                }
                table.push_row(row);
            }
        }
    }
    let mut outcome = RunOutcome::new(table);
    outcome.budget_exceeded = exceeded;
    Ok(outcome)
}

/// `bounds`: the geometry reports as rows. `param1`/`param2` are the
/// check-specific arguments (latitude/inclination for `c_err`, meridian and
/// inclination for the gap rows).
pub fn bounds() -> Result<RunOutcome, CliError> {
    let mut table = Table::new(vec!["check", "param1", "param2", "value", "bound", "pass"]);
    let mut failed = 0usize;
    let mut push = |table: &mut Table,
                    check: &str,
                    p1: Cell,
                    p2: Cell,
                    value: f64,
                    bound: Option<f64>,
                    pass: Option<bool>| {
        if pass == Some(false) {
            failed += 1;
        }
        table.push_row(vec![
            Cell::from(check),
            p1,
            p2,
            Cell::from(value),
            Cell::from(bound),
            Cell::from(pass),
        ]);
    };

    // the exact equality case of the fault-displacement bound
    let c_err = fault_displacement(PI / 6.0, FRAC_PI_4)?;
    push(
        &mut table,
        "c_err",
        Cell::from(PI / 6.0),
        Cell::from(FRAC_PI_4),
        c_err,
        Some(FRAC_PI_4),
        Some((c_err - FRAC_PI_4).abs() <= 1e-12),
    );

    for incl in [0.1 * PI, FRAC_PI_4] {
        let report = check_corollary_one(incl, 1e-3)?;
        push(
            &mut table,
            "corollary1_worst_c_err",
            Cell::from(report.worst_displacement_at),
            Cell::from(incl),
            report.worst_displacement,
            Some(FRAC_PI_4),
            Some(report.passed),
        );
    }

    // gap(3pi/8, A) over the inclination grid
    let b_star = 3.0 * PI / 8.0;
    let step = THEOREM1_GRID_STEP_PI * PI;
    let end = THEOREM1_INCLINATION_PI * PI;
    let mut incl = 0.0f64;
    loop {
        let x = incl.min(end);
        let gap = meridian_gap(b_star, x)?;
        push(
            &mut table,
            "meridian_gap",
            Cell::from(b_star),
            Cell::from(x),
            gap,
            Some(FRAC_PI_4),
            Some(gap <= FRAC_PI_4),
        );
        if x >= end {
            break;
        }
        incl += step;
    }

    // the k = 2 constant; the exact value is 0.341614 pi, so the rounded
    // 0.34 pi bound honestly fails here
    let gap_k2 = meridian_gap(0.33 * PI, FRAC_PI_4)?;
    push(
        &mut table,
        "meridian_gap",
        Cell::from(0.33 * PI),
        Cell::from(FRAC_PI_4),
        gap_k2,
        Some(0.34 * PI),
        Some(gap_k2 <= 0.34 * PI),
    );

    let report = theorem1_constants::<f64>()?;
    push(
        &mut table,
        "threshold_inclination",
        Cell::from(b_star),
        Cell::Empty,
        report.threshold_inclination,
        Some(0.1956 * PI),
        Some(
            report.threshold_inclination >= 0.1950 * PI
                && report.threshold_inclination <= 0.1956 * PI,
        ),
    );
    push(
        &mut table,
        "success_floor_many",
        Cell::Empty,
        Cell::Empty,
        report.floor_many,
        None,
        None,
    );
    push(
        &mut table,
        "success_floor_single",
        Cell::Empty,
        Cell::Empty,
        report.floor_single,
        None,
        None,
    );

    let mut outcome = RunOutcome::new(table);
    outcome.failed_assertions = failed;
    Ok(outcome)
}

/// `montecarlo`: per-trajectory Born statistics averaged over the sample
/// count, with standard errors, next to the exact values.
///
/// The exact reference comes from the density evolution, or from exact
/// fault-word enumeration when `--merge-tol` is given (which can fail with
/// a branch explosion on long runs).
pub fn montecarlo(cfg: &SweepConfig) -> Result<RunOutcome, CliError> {
    let t = cfg
        .t_max
        .ok_or_else(|| CliError::Config("montecarlo requires --t-max".into()))?;
    let seed = cfg
        .seed
        .ok_or_else(|| CliError::Config("montecarlo requires --seed".into()))?;
    if cfg.samples == 0 {
        return Err(CliError::Config("montecarlo requires --samples >= 1".into()));
    }

    let mut table = Table::new(vec![
        "n",
        "k",
        "p",
        "t",
        "samples",
        "seed",
        "emp_unmarked",
        "se_unmarked",
        "emp_nonfaulty_marked",
        "se_nonfaulty_marked",
        "emp_faulty",
        "se_faulty",
        "exact_unmarked",
        "exact_nonfaulty_marked",
        "exact_faulty",
    ]);

    for &n in &cfg.ns {
        for &k in &cfg.ks {
            for &p in &cfg.ps {
                let sp = space(n, k, p)?;
                let exact = match cfg.merge_tol {
                    Some(tol) => {
                        let mix = WeightedMixture::evolve_exact(
                            &sp,
                            t,
                            tol,
                            MERGE_REFERENCE_MAX_BRANCHES,
                        )?;
                        mix.to_density(&sp).success_probs(&sp)
                    }
                    None => {
                        let mut rho = SymmetricDensity::uniform(&sp);
                        for _ in 0..t {
                            rho = rho.step(&sp);
                        }
                        rho.success_probs(&sp)
                    }
                };

                // Welford accumulation per outcome component
                let mut mean = [0.0f64; 3];
                let mut m2 = [0.0f64; 3];
                for i in 0..cfg.samples {
                    let state = sample_trajectory(&sp, t, seed, i as u64);
                    let probs = state.measure_probs(&sp);
                    let sample = [probs.unmarked, probs.nonfaulty_marked, probs.faulty];
                    let count = (i + 1) as f64;
                    for c in 0..3 {
                        let delta = sample[c] - mean[c];
                        mean[c] += delta / count;
                        m2[c] += delta * (sample[c] - mean[c]);
                    }
                }
                let se = |c: usize| {
                    if cfg.samples < 2 {
                        0.0
                    } else {
                        (m2[c] / (cfg.samples as f64 - 1.0) / cfg.samples as f64).sqrt()
                    }
                };

                table.push_row(vec![
                    Cell::from(n),
                    Cell::from(k),
                    Cell::from(p),
                    Cell::from(t),
                    Cell::from(cfg.samples),
                    Cell::from(seed),
                    Cell::from(mean[0]),
                    Cell::from(se(0)),
                    Cell::from(mean[1]),
                    Cell::from(se(1)),
                    Cell::from(mean[2]),
                    Cell::from(se(2)),
                    Cell::from(exact.unmarked),
                    Cell::from(exact.nonfaulty_marked),
                    Cell::from(exact.faulty),
                ]);
            }
        }
    }
    Ok(RunOutcome::new(table))
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::InvalidSpace(_)
            | CoreError::Degenerate(_)
            | CoreError::Domain(_)
            | CoreError::SizeGuard(_) => CliError::Config(e.to_string()),
            CoreError::BranchExplosion { .. } => CliError::Budget(e.to_string()),
            CoreError::QuadratureNonConvergence(_)
            | CoreError::SingularEndpoint(_)
            | CoreError::PatternViolation(_) => CliError::Runtime(e.to_string()),
        }
    }
}
