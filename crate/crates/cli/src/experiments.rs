//! One runner per registered experiment.

use rayon::prelude::*;

use ialab_core::dense::{
    estimate_e, sandwich_trial, variance_scaling_experiment, B2Orientation, BottleneckConfig, DenseModel,
};
use ialab_core::ff::{FieldMatrix, PrimeField};
use ialab_core::geom::{
    linear_growth_experiment, outage_bounds, outage_monte_carlo_grid, regular_interference as lattice_sum,
    AttenuationModel, OutageQuery,
};
use ialab_core::gt::{
    self, adaptive_binary_splitting, discovery_simulation, make_channel, ml_decode, run_design, sample_defects,
    ChannelKind, GtChannel, TestDesign,
};
use ialab_core::ia::{
    asymptotic_prediction, best_scheme_in, exponent_bounds, ngjv_expected_delay, pareto_frontier, simulate_ngjv,
    simulate_scheme, Family, Regime, RegimeQuery, SchemeSpec, SearchSpace, SimulationOptions,
};
use ialab_core::rng::derive_seed;
use ialab_core::stats::{log_log_slope, mean, std_dev};

use crate::config::ExperimentConfig;
use crate::harness::{count, counts, flag, int, opt_real, real, reals, seed, text, trials, RunError};
use crate::table::{ColumnType as C, ResultTable};

type Out = Result<ResultTable, RunError>;

fn param_err(msg: impl Into<String>) -> RunError {
    RunError::Param(msg.into())
}

pub fn scheme_table(cfg: &ExperimentConfig) -> Out {
    let (lo, hi) = (count(cfg, "n_min")?, count(cfg, "n_max")?);
    if lo < 3 || hi < lo {
        return Err(param_err("need 3 <= n_min <= n_max"));
    }
    let space = match text(cfg, "search")? {
        "full" => SearchSpace::Full,
        _ => SearchSpace::Nondecreasing,
    };
    let mut t = ResultTable::new(&[
        ("n", C::Int),
        ("k", C::Int),
        ("scheme", C::Text),
        ("exponent", C::Int),
        ("optimal_count", C::Int),
        ("lower_bound", C::Real),
        ("upper_bound", C::Real),
    ]);
    for k in 1..hi {
        for n in (lo..=hi).filter(|&n| n > k) {
            if k + 1 == n {
                t.push(vec![n.into(), k.into(), "TDMA".into(), 0.into(), 1.into(), 0.0.into(), 0.0.into()])?;
                continue;
            }
            let best = best_scheme_in(n, k, space)?;
            let (l, u) = exponent_bounds(n, k)?;
            t.push(vec![
                n.into(),
                k.into(),
                best.spec().to_string().into(),
                best.exponent.into(),
                best.optimal_count.into(),
                l.into(),
                u.into(),
            ])?;
        }
    }
    Ok(t)
}

pub fn scheme_delay_mc(cfg: &ExperimentConfig) -> Out {
    let n = count(cfg, "n")?;
    let stages = counts(cfg, "stages")?;
    let spec = SchemeSpec::new(n, stages, flag(cfg, "beamforming")?)?;
    let opts = SimulationOptions { max_slots_per_stage: int(cfg, "max_slots")?.max(1) as u64 };
    let qs = counts(cfg, "qs")?;
    let mut t = ResultTable::new(&[
        ("q", C::Int),
        ("stage", C::Int),
        ("mean_delay", C::Real),
        ("first_slot_rate", C::Real),
        ("completed", C::Int),
        ("truncated", C::Int),
    ]);
    let mut totals = Vec::new();
    let mut truncated_any = false;
    for (idx, &q) in qs.iter().enumerate() {
        let q32 = u32::try_from(q).map_err(|_| param_err("field size too large"))?;
        let rep = simulate_scheme(&spec, q32, trials(cfg), derive_seed(seed(cfg), idx as u64), opts)?;
        let done = rep.total_delays.len();
        truncated_any |= rep.truncated > 0;
        for (k, m) in rep.mean_per_stage.iter().enumerate() {
            let first = rep.first_slot_successes[k] as f64 / done.max(1) as f64;
            t.push(vec![q.into(), (k + 1).into(), (*m).into(), first.into(), done.into(), rep.truncated.into()])?;
        }
        totals.push(rep.mean_total);
    }
    t.meta("scheme", &spec);
    t.meta("delay_exponent", spec.delay_exponent());
    t.meta("partial", truncated_any);
    if qs.len() >= 2 {
        let xs: Vec<f64> = qs.iter().map(|&q| q as f64).collect();
        if let Some(s) = log_log_slope(&xs, &totals) {
            t.meta("slope_log_total_vs_log_q", ialab_core_fmt(s));
        }
    }
    Ok(t)
}

fn ialab_core_fmt(x: f64) -> String {
    crate::table::fmt_real(x)
}

pub fn ngjv_delay(cfg: &ExperimentConfig) -> Out {
    let (n, q) = (count(cfg, "n")?, count(cfg, "q")? as u32);
    let rep = simulate_ngjv(n, q, trials(cfg), seed(cfg), SimulationOptions::default())?;
    let expected = ngjv_expected_delay(n, q);
    let mut t = ResultTable::new(&[
        ("n", C::Int),
        ("q", C::Int),
        ("completed", C::Int),
        ("truncated", C::Int),
        ("mean_delay", C::Real),
        ("std_error", C::Real),
        ("expected", C::Real),
        ("rejected_starts", C::Int),
    ]);
    t.push(vec![
        n.into(),
        (q as usize).into(),
        rep.total_delays.len().into(),
        rep.truncated.into(),
        rep.mean_total.into(),
        rep.std_error_total.into(),
        expected.value.into(),
        rep.rejected_starts.into(),
    ])?;
    t.meta("partial", rep.truncated > 0 || expected.saturated);
    Ok(t)
}

pub fn pareto(cfg: &ExperimentConfig) -> Out {
    let n = count(cfg, "n")?;
    let mut t = ResultTable::new(&[("dof", C::Text), ("dof_value", C::Real), ("exponent", C::Int), ("scheme", C::Text)]);
    for pt in pareto_frontier(n)? {
        let v = *pt.dof.numer() as f64 / *pt.dof.denom() as f64;
        t.push(vec![pt.dof.to_string().into(), v.into(), pt.exponent.into(), pt.scheme.to_string().into()])?;
    }
    Ok(t)
}

pub fn asymptotic(cfg: &ExperimentConfig) -> Out {
    let n = count(cfg, "n")?;
    let (regime, label, param) = match (opt_real(cfg, "alpha")?, opt_real(cfg, "beta")?) {
        (Some(a), None) => (Regime::I { alpha: a }, "I", a),
        (None, Some(b)) => (Regime::II { beta: b }, "II", b),
        _ => return Err(param_err("exactly one of alpha or beta is required")),
    };
    let query = RegimeQuery::new(regime, n)?;
    let families: &[(&str, Family)] = match text(cfg, "family")? {
        "parent" => &[("parent", Family::ParentJapb)],
        "child" => &[("child", Family::ChildOfJapbM)],
        _ => &[("parent", Family::ParentJapb), ("child", Family::ChildOfJapbM)],
    };
    let mut t = ResultTable::new(&[
        ("n", C::Int),
        ("regime", C::Text),
        ("parameter", C::Real),
        ("family", C::Text),
        ("value", C::Real),
        ("lower", C::Real),
        ("upper", C::Real),
    ]);
    for &(name, fam) in families {
        let pred = asymptotic_prediction(query, fam)?;
        let (lo, hi) = pred.interval.unwrap_or((pred.value, pred.value));
        t.push(vec![n.into(), label.into(), param.into(), name.into(), pred.value.into(), lo.into(), hi.into()])?;
    }
    Ok(t)
}

pub fn outage_sweep(cfg: &ExperimentConfig) -> Out {
    let d = count(cfg, "d")?;
    let alpha = real(cfg, "alpha")?;
    let h = Some(real(cfg, "h")?).filter(|h| h.is_finite());
    let rates = reals(cfg, "rates")?;
    let n = trials(cfg);
    let mc = outage_monte_carlo_grid(d, alpha, h, &rates, n, seed(cfg))?;
    let mut t = ResultTable::new(&[
        ("r", C::Real),
        ("lower", C::Real),
        ("upper", C::Real),
        ("monte_carlo", C::Real),
        ("std_error", C::Real),
        ("inside", C::Bool),
    ]);
    for (&r, &p) in rates.iter().zip(&mc) {
        let b = outage_bounds(&OutageQuery { r, d, alpha, h })?;
        let se = (p * (1.0 - p) / n as f64).sqrt();
        t.push(vec![r.into(), b.lower.into(), b.upper.into(), p.into(), se.into(), (b.lower <= p && p <= b.upper).into()])?;
    }
    Ok(t)
}

pub fn regular_interference(cfg: &ExperimentConfig) -> Out {
    let r = lattice_sum(real(cfg, "alpha")?, count(cfg, "d")?, real(cfg, "h")?, real(cfg, "tol")?)?;
    let mut t = ResultTable::new(&[("value", C::Real), ("closed_form_bound", C::Real), ("radius", C::Int), ("converged", C::Bool)]);
    t.push(vec![r.value.into(), r.closed_form_bound.into(), r.radius.into(), r.converged.into()])?;
    t.meta("partial", !r.converged);
    Ok(t)
}

pub fn linear_growth(cfg: &ExperimentConfig) -> Out {
    let (d, alpha, rate, eps) = (count(cfg, "d")?, real(cfg, "alpha")?, real(cfg, "rate")?, real(cfg, "eps")?);
    let mut t = ResultTable::new(&[
        ("n", C::Int),
        ("trial", C::Int),
        ("success_fraction", C::Real),
        ("sum_rate", C::Real),
        ("growth_event", C::Bool),
        ("window_nodes", C::Int),
    ]);
    for n in counts(cfg, "ns")? {
        let sub = derive_seed(seed(cfg), n as u64);
        let runs: Vec<_> = (0..trials(cfg))
            .into_par_iter()
            .map(|k| linear_growth_experiment(n, d, alpha, rate, eps, derive_seed(sub, k as u64)))
            .collect::<Result<_, _>>()?;
        for (k, g) in runs.iter().enumerate() {
            t.push(vec![n.into(), k.into(), g.success_fraction.into(), g.sum_rate.into(), g.growth_event.into(), g.window_nodes.into()])?;
        }
    }
    Ok(t)
}

struct DenseSetup {
    model: DenseModel,
    cfg: BottleneckConfig,
}

fn dense_setup(cfg: &ExperimentConfig) -> Result<DenseSetup, RunError> {
    let atten = AttenuationModel::capped_at(real(cfg, "h")?, real(cfg, "alpha")?, real(cfg, "cap")?)?;
    let model = DenseModel::standard(atten);
    let e = estimate_e(model.law, model.d, &model.atten, count(cfg, "e_samples")?, derive_seed(seed(cfg), u64::MAX))?;
    let orientation = match text(cfg, "orientation")? {
        "transposed" => B2Orientation::Transposed,
        _ => B2Orientation::Crosslink,
    };
    let bcfg = BottleneckConfig::new(real(cfg, "eps")?, real(cfg, "eta")?, e)?.with_orientation(orientation);
    Ok(DenseSetup { model, cfg: bcfg })
}

pub fn dense_sandwich(cfg: &ExperimentConfig) -> Out {
    let s = dense_setup(cfg)?;
    let mut t = ResultTable::new(&[
        ("n", C::Int),
        ("seed", C::Int),
        ("lower", C::Real),
        ("upper", C::Real),
        ("beta_hat", C::Real),
        ("count", C::Int),
        ("above_cutoff", C::Bool),
    ]);
    for n in counts(cfg, "ns")? {
        let sub = derive_seed(seed(cfg), n as u64);
        let runs: Vec<_> = (0..trials(cfg))
            .into_par_iter()
            .map(|k| sandwich_trial(&s.model, n, &s.cfg, derive_seed(sub, k as u64)))
            .collect::<Result<_, _>>()?;
        let lowers: Vec<f64> = runs.iter().map(|r| r.lower).collect();
        t.meta(&format!("std_lower.n{n}"), crate::table::fmt_real(std_dev(&lowers)));
        t.meta(&format!("mean_lower.n{n}"), crate::table::fmt_real(mean(&lowers)));
        for (k, r) in runs.iter().enumerate() {
            t.push(vec![n.into(), k.into(), r.lower.into(), r.pair_bound.into(), r.beta_hat.into(), r.count.into(), r.above_cutoff.into()])?;
        }
    }
    t.meta("e", crate::table::fmt_real(s.cfg.e));
    Ok(t)
}

pub fn variance_scaling(cfg: &ExperimentConfig) -> Out {
    let s = dense_setup(cfg)?;
    let ns = counts(cfg, "ns")?;
    let v = variance_scaling_experiment(&s.model, &ns, trials(cfg), &s.cfg, seed(cfg))?;
    let mut t = ResultTable::new(&[("n", C::Int), ("kept", C::Int), ("mean_count", C::Real), ("variance", C::Real)]);
    for i in 0..ns.len() {
        t.push(vec![v.ns[i].into(), v.kept[i].into(), v.means[i].into(), v.variances[i].into()])?;
    }
    t.meta("slope", crate::table::fmt_real(v.slope));
    t.meta("e", crate::table::fmt_real(s.cfg.e));
    Ok(t)
}

pub fn matching_bound(cfg: &ExperimentConfig) -> Out {
    let (ks, deltas) = (counts(cfg, "ks")?, reals(cfg, "deltas")?);
    if ks.len() != deltas.len() {
        return Err(param_err("ks and deltas must have the same length"));
    }
    let mut t = ResultTable::new(&[
        ("k", C::Int),
        ("delta", C::Real),
        ("trials", C::Int),
        ("empirical_fail", C::Real),
        ("walkup_bound", C::Real),
        ("blocking_pair_sum", C::Real),
    ]);
    for (i, (&k, &delta)) in ks.iter().zip(&deltas).enumerate() {
        let r = ialab_core::dense::jafar_matching(k, delta, trials(cfg), derive_seed(seed(cfg), i as u64))?;
        t.push(vec![k.into(), delta.into(), r.trials.into(), r.empirical_fail.into(), r.walkup_bound.into(), r.blocking_pair_sum.into()])?;
    }
    Ok(t)
}

fn gt_channel(cfg: &ExperimentConfig, k: usize) -> Result<GtChannel, RunError> {
    let kind = match text(cfg, "channel")? {
        "addition" => ChannelKind::Addition { q: real(cfg, "q")? },
        "dilution" => ChannelKind::Dilution { u: real(cfg, "u")? },
        "addition-dilution" => ChannelKind::AdditionDilution { q: real(cfg, "q")?, u: real(cfg, "u")? },
        "erasure" => ChannelKind::Erasure { eps: real(cfg, "eps")? },
        "counting" => {
            let max_count = if cfg.params.contains_key("max_count") { count(cfg, "max_count")? } else { k };
            ChannelKind::Counting { max_count }
        }
        "overflow" => ChannelKind::Overflow { limit: count(cfg, "limit")? },
        "field-cancellation" => ChannelKind::FieldCancellation { q: count(cfg, "field")? as u32 },
        _ => ChannelKind::Deterministic,
    };
    Ok(make_channel(kind)?)
}

pub fn gt_bounds(cfg: &ExperimentConfig) -> Out {
    let (n, k) = (count(cfg, "n")?, count(cfg, "k")?);
    let ch = gt_channel(cfg, k)?;
    let r = gt::bounds(&ch, n, k, None)?;
    let mut t = ResultTable::new(&[
        ("i", C::Int),
        ("upper_numerator", C::Real),
        ("lower_numerator", C::Real),
        ("mi_at_upper", C::Real),
        ("mi_at_lower", C::Real),
    ]);
    for term in &r.terms {
        t.push(vec![term.i.into(), term.upper_numerator.into(), term.lower_numerator.into(), term.mi_at_upper.into(), term.mi_at_lower.into()])?;
    }
    let f = crate::table::fmt_real;
    t.meta("t_upper", f(r.t_upper));
    t.meta("t_lower", f(r.t_lower));
    t.meta("p_star_upper", f(r.p_star_upper));
    t.meta("p_star_lower", f(r.p_star_lower));
    Ok(t)
}

/// Errors of the maximum-likelihood decoder over `trials` random designs.
pub fn ml_error_count(
    ch: &GtChannel,
    n: usize,
    k: usize,
    tests: usize,
    p: f64,
    trials: usize,
    seed: u64,
) -> Result<(usize, usize), RunError> {
    let outcomes: Vec<(bool, bool)> = (0..trials)
        .into_par_iter()
        .map(|s| {
            let sub = derive_seed(seed, s as u64);
            let design = TestDesign::bernoulli(n, tests, p, derive_seed(sub, 0))?;
            let truth = sample_defects(n, k, derive_seed(sub, 1))?;
            let y = run_design(&design, &truth, ch, derive_seed(sub, 2))?;
            let dec = ml_decode(&design, &y, ch, k)?;
            Ok((dec.set != truth, dec.tie))
        })
        .collect::<Result<_, ialab_core::Error>>()?;
    Ok((outcomes.iter().filter(|o| o.0).count(), outcomes.iter().filter(|o| o.1).count()))
}

pub fn gt_error_curve(cfg: &ExperimentConfig) -> Out {
    let (n, k) = (count(cfg, "n")?, count(cfg, "k")?);
    let ch = gt_channel(cfg, k)?;
    let b = gt::bounds(&ch, n, k, None)?;
    let p = opt_real(cfg, "p")?.unwrap_or(b.p_star_upper);
    let tests = if cfg.params.contains_key("tests") {
        counts(cfg, "tests")?
    } else {
        vec![(b.t_upper / 2.0).ceil() as usize, b.t_upper.ceil() as usize, (2.0 * b.t_upper).ceil() as usize]
    };
    let mut t = ResultTable::new(&[
        ("tests", C::Int),
        ("p", C::Real),
        ("trials", C::Int),
        ("errors", C::Int),
        ("error_rate", C::Real),
        ("ties", C::Int),
    ]);
    for (i, &tt) in tests.iter().enumerate() {
        let (errors, ties) = ml_error_count(&ch, n, k, tt, p, trials(cfg), derive_seed(seed(cfg), i as u64))?;
        t.push(vec![tt.into(), p.into(), trials(cfg).into(), errors.into(), (errors as f64 / trials(cfg) as f64).into(), ties.into()])?;
    }
    t.meta("t_upper", crate::table::fmt_real(b.t_upper));
    t.meta("p_star_upper", crate::table::fmt_real(b.p_star_upper));
    Ok(t)
}

pub fn gt_adaptive(cfg: &ExperimentConfig) -> Out {
    let k = count(cfg, "k")?;
    let det = make_channel(ChannelKind::Deterministic)?;
    let mut t = ResultTable::new(&[
        ("n", C::Int),
        ("k", C::Int),
        ("defects", C::Text),
        ("tests_used", C::Int),
        ("recovered", C::Bool),
        ("ceil_log2_n", C::Int),
        ("t_lower", C::Real),
    ]);
    for n in counts(cfg, "ns")? {
        if k > n {
            return Err(param_err(format!("K = {k} exceeds N = {n}")));
        }
        let t_lower = if k >= 1 { gt::bounds(&det, n, k, None)?.t_lower } else { 0.0 };
        let cases: Vec<Vec<usize>> = if k == 1 {
            (0..n).map(|d| vec![d]).collect()
        } else {
            (0..trials(cfg)).map(|s| sample_defects(n, k, derive_seed(seed(cfg), (n * 1_000_003 + s) as u64))).collect::<Result<_, _>>()?
        };
        let ceil_log = (n as f64).log2().ceil() as usize;
        for defects in cases {
            let out = adaptive_binary_splitting(n, k, &defects)?;
            let label = defects.iter().map(usize::to_string).collect::<Vec<_>>().join(";");
            t.push(vec![n.into(), k.into(), label.into(), out.tests_used.into(), (out.recovered == defects).into(), ceil_log.into(), t_lower.into()])?;
        }
    }
    Ok(t)
}

/// Gains with a nonzero diagonal and exactly `k` nonzero crosslinks into
/// every receiver.
pub fn random_gains(field: PrimeField, n: usize, k: usize, seed: u64) -> Result<FieldMatrix, RunError> {
    use rand::Rng;
    if k >= n {
        return Err(param_err("need k < n interferers"));
    }
    let q = field.modulus();
    let r = &mut ialab_core::rng::substream(seed, 0);
    let mut rows = Vec::with_capacity(n);
    for j in 0..n {
        let picks = sample_defects(n - 1, k, derive_seed(seed, j as u64 + 1))?;
        let hears: Vec<usize> = picks.into_iter().map(|a| if a >= j { a + 1 } else { a }).collect();
        rows.push((0..n).map(|i| if i == j || hears.contains(&i) { r.random_range(1..q) as i64 } else { 0 }).collect());
    }
    Ok(FieldMatrix::from_rows(field, &rows)?)
}

pub fn discovery(cfg: &ExperimentConfig) -> Out {
    let (n, k, slots) = (count(cfg, "n")?, count(cfg, "k")?, count(cfg, "slots")?);
    let field = PrimeField::new(count(cfg, "q")? as u32)?;
    let p = real(cfg, "p")?;
    let mut t = ResultTable::new(&[("trial", C::Int), ("error_rate", C::Real), ("inferred_edges", C::Int), ("true_edges", C::Int)]);
    let runs: Vec<_> = (0..trials(cfg))
        .into_par_iter()
        .map(|s| {
            let sub = derive_seed(seed(cfg), s as u64);
            let h = random_gains(field, n, k, derive_seed(sub, 0))?;
            let truth = gt::interference_graph(&h)?.edges().len();
            let rep = discovery_simulation(&h, slots, p, derive_seed(sub, 1))?;
            Ok((rep.error_rate, rep.graph.edges().len(), truth))
        })
        .collect::<Result<_, RunError>>()?;
    for (s, (e, inferred, truth)) in runs.iter().enumerate() {
        t.push(vec![s.into(), (*e).into(), (*inferred).into(), (*truth).into()])?;
    }
    let errs: Vec<f64> = runs.iter().map(|r| r.0).collect();
    t.meta("mean_error_rate", crate::table::fmt_real(mean(&errs)));
    t.meta("decoder", gt::discovery_channel(field.modulus())?.name());
    Ok(t)
}
