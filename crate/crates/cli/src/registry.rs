//! Registered experiments and their parameter schemas.

use crate::experiments as ex;
use crate::harness::RunError;
use crate::config::ExperimentConfig;
use crate::table::ResultTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamKind {
    Int,
    Real,
    IntList,
    RealList,
    Bool,
    Choice(&'static [&'static str]),
}

#[derive(Debug, Clone, Copy)]
pub struct ParamSpec {
    pub name: &'static str,
    pub kind: ParamKind,
    /// `None` marks an optional parameter with no value unless given.
    pub default: Option<&'static str>,
    pub doc: &'static str,
}

pub type Runner = fn(&ExperimentConfig) -> Result<ResultTable, RunError>;

pub struct ExperimentSpec {
    pub name: &'static str,
    pub summary: &'static str,
    pub stochastic: bool,
    /// Present when the experiment takes a `trials` count.
    pub default_trials: Option<u64>,
    pub params: &'static [ParamSpec],
    /// Pairs of which exactly one must be given.
    pub exclusive: &'static [(&'static str, &'static str)],
    pub run: Runner,
}

impl ExperimentSpec {
    pub fn uses_trials(&self) -> bool {
        self.default_trials.is_some()
    }
}

const fn p(name: &'static str, kind: ParamKind, default: &'static str, doc: &'static str) -> ParamSpec {
    ParamSpec { name, kind, default: Some(default), doc }
}

const fn opt(name: &'static str, kind: ParamKind, doc: &'static str) -> ParamSpec {
    ParamSpec { name, kind, default: None, doc }
}

use ParamKind::*;

pub const GT_CHANNELS: &[&str] =
    &["deterministic", "addition", "dilution", "addition-dilution", "erasure", "counting", "overflow", "field-cancellation"];

const GT_CHANNEL_PARAMS: [ParamSpec; 7] = [
    p("channel", Choice(GT_CHANNELS), "deterministic", "channel kind (only-defects-matter kinds)"),
    p("q", Real, "0.1", "addition probability"),
    p("u", Real, "0.5", "dilution probability"),
    p("eps", Real, "0.1", "erasure probability"),
    p("limit", Int, "2", "overflow limit"),
    opt("max_count", Int, "counting alphabet size minus one (default K)"),
    p("field", Int, "5", "field size for field-cancellation"),
];

const fn concat<const A: usize, const B: usize, const C: usize>(a: [ParamSpec; A], b: [ParamSpec; B]) -> [ParamSpec; C] {
    let mut out = [a[0]; C];
    let mut i = 0;
    while i < A {
        out[i] = a[i];
        i += 1;
    }
    while i < C {
        out[i] = b[i - A];
        i += 1;
    }
    out
}

const DENSE_PARAMS: [ParamSpec; 7] = [
    p("eps", Real, "0.1", "bottleneck slack"),
    p("eta", Real, "0.9", "cutoff exponent: realisations with max S_ii > n^(eta/2) are discarded"),
    p("h", Real, "1", "attenuation constant"),
    p("cap", Real, "1000", "attenuation cap"),
    p("alpha", Real, "4", "power-domain exponent"),
    p("e_samples", Int, "100000", "draws for the population mean E"),
    p("orientation", Choice(&["crosslink", "transposed"]), "crosslink", "crosslink checked by the second condition"),
];

static GT_BOUNDS_PARAMS: [ParamSpec; 9] =
    concat([p("n", Int, "8", "items"), p("k", Int, "1", "defects")], GT_CHANNEL_PARAMS);
static GT_ERROR_PARAMS: [ParamSpec; 11] = concat(
    [
        p("n", Int, "16", "items"),
        p("k", Int, "2", "defects"),
        opt("tests", IntList, "test counts (default ceil(T/2), ceil(T), ceil(2T) for the upper bound T)"),
        opt("p", Real, "inclusion probability (default: minimiser of the upper bound)"),
    ],
    GT_CHANNEL_PARAMS,
);
static DENSE_SANDWICH_PARAMS: [ParamSpec; 8] = concat([p("ns", IntList, "[100, 400, 1600]", "network sizes")], DENSE_PARAMS);
static VARIANCE_PARAMS: [ParamSpec; 8] = concat([p("ns", IntList, "[50, 100, 200, 400]", "network sizes")], DENSE_PARAMS);

pub static EXPERIMENTS: &[ExperimentSpec] = &[
    ExperimentSpec {
        name: "scheme-table",
        summary: "best JAP-B stage vectors and delay exponents over an (n, K) grid",
        stochastic: false,
        default_trials: None,
        params: &[
            p("n_min", Int, "3", "smallest n"),
            p("n_max", Int, "8", "largest n"),
            p("search", Choice(&["nondecreasing", "full"]), "nondecreasing", "search space"),
        ],
        exclusive: &[],
        run: ex::scheme_table,
    },
    ExperimentSpec {
        name: "scheme-delay-mc",
        summary: "Monte Carlo stage delays of a JAP or JAP-B scheme over several fields",
        stochastic: true,
        default_trials: Some(20_000),
        params: &[
            p("n", Int, "3", "users"),
            p("stages", IntList, "[3]", "stage vector a"),
            p("beamforming", Bool, "true", "JAP-B (true) or JAP (false)"),
            p("qs", IntList, "[5, 7, 11, 13]", "field sizes"),
            p("max_slots", Int, "10000000", "slot cap per stage; capped trials are reported as truncated"),
        ],
        exclusive: &[],
        run: ex::scheme_delay_mc,
    },
    ExperimentSpec {
        name: "ngjv-delay",
        summary: "simulated NGJV matching delay against (q-1)^(n^2)",
        stochastic: true,
        default_trials: Some(100_000),
        params: &[p("n", Int, "2", "users"), p("q", Int, "3", "field size")],
        exclusive: &[],
        run: ex::ngjv_delay,
    },
    ExperimentSpec {
        name: "pareto",
        summary: "Pareto frontier of degrees of freedom against delay exponent",
        stochastic: false,
        default_trials: None,
        params: &[p("n", Int, "6", "users")],
        exclusive: &[],
        run: ex::pareto,
    },
    ExperimentSpec {
        name: "asymptotic",
        summary: "leading-order delay exponents in the many-user regimes",
        stochastic: false,
        default_trials: None,
        params: &[
            p("n", Int, "60", "users"),
            opt("alpha", Real, "fixed degrees of freedom in (0, 1/2]"),
            opt("beta", Real, "degrees of freedom beta/n, beta >= 1"),
            p("family", Choice(&["parent", "child", "both"]), "both", "scheme family"),
        ],
        exclusive: &[("alpha", "beta")],
        run: ex::asymptotic,
    },
    ExperimentSpec {
        name: "outage-sweep",
        summary: "nearest-neighbour outage: bounds and Monte Carlo over a rate grid",
        stochastic: true,
        default_trials: Some(10_000),
        params: &[
            p("d", Int, "2", "dimension"),
            p("alpha", Real, "3", "power-domain exponent"),
            p("h", Real, "inf", "fading gain; inf is the interference-limited limit"),
            p("rates", RealList, "[0.5, 1, 2]", "target rates"),
        ],
        exclusive: &[],
        run: ex::outage_sweep,
    },
    ExperimentSpec {
        name: "regular-interference",
        summary: "interference sum on the integer lattice and its closed-form bound",
        stochastic: false,
        default_trials: None,
        params: &[
            p("alpha", Real, "2", "power-domain exponent"),
            p("d", Int, "1", "dimension"),
            p("h", Real, "1", "attenuation constant"),
            p("tol", Real, "1e-9", "stopping tolerance"),
        ],
        exclusive: &[],
        run: ex::regular_interference,
    },
    ExperimentSpec {
        name: "linear-growth",
        summary: "success fraction and sum rate of a Poisson network with nearest-neighbour links",
        stochastic: true,
        default_trials: Some(20),
        params: &[
            p("ns", IntList, "[100, 200, 400]", "scored links"),
            p("d", Int, "2", "dimension"),
            p("alpha", Real, "4", "power-domain exponent"),
            p("rate", Real, "1", "target rate"),
            p("eps", Real, "0.1", "growth slack"),
        ],
        exclusive: &[],
        run: ex::linear_growth,
    },
    ExperimentSpec {
        name: "dense-sandwich",
        summary: "dense network: direct-link lower bound against the bottleneck pair bound",
        stochastic: true,
        default_trials: Some(20),
        params: &DENSE_SANDWICH_PARAMS,
        exclusive: &[],
        run: ex::dense_sandwich,
    },
    ExperimentSpec {
        name: "variance-scaling",
        summary: "variance of the bottleneck count against n",
        stochastic: true,
        default_trials: Some(200),
        params: &VARIANCE_PARAMS,
        exclusive: &[],
        run: ex::variance_scaling,
    },
    ExperimentSpec {
        name: "matching-bound",
        summary: "frequency of random bipartite graphs without a perfect matching",
        stochastic: true,
        default_trials: Some(10_000),
        params: &[
            p("ks", IntList, "[6, 10]", "side sizes"),
            p("deltas", RealList, "[0.8, 0.9]", "edge probabilities, paired with ks"),
        ],
        exclusive: &[],
        run: ex::matching_bound,
    },
    ExperimentSpec {
        name: "gt-bounds",
        summary: "achievability and converse test counts with the per-i terms",
        stochastic: false,
        default_trials: None,
        params: &GT_BOUNDS_PARAMS,
        exclusive: &[],
        run: ex::gt_bounds,
    },
    ExperimentSpec {
        name: "gt-error-curve",
        summary: "maximum-likelihood decoding error against the number of Bernoulli tests",
        stochastic: true,
        default_trials: Some(500),
        params: &GT_ERROR_PARAMS,
        exclusive: &[],
        run: ex::gt_error_curve,
    },
    ExperimentSpec {
        name: "gt-adaptive",
        summary: "tests used by adaptive binary splitting on the deterministic channel",
        stochastic: true,
        default_trials: Some(100),
        params: &[
            p("ns", IntList, "[8, 16, 32]", "items"),
            p("k", Int, "1", "defects; K = 1 enumerates every position, larger K samples `trials` sets"),
        ],
        exclusive: &[],
        run: ex::gt_adaptive,
    },
    ExperimentSpec {
        name: "discovery",
        summary: "interference-graph discovery by group testing over F_q",
        stochastic: true,
        default_trials: Some(200),
        params: &[
            p("n", Int, "8", "users"),
            p("k", Int, "2", "interferers per receiver"),
            p("q", Int, "101", "field size"),
            p("slots", Int, "12", "test slots"),
            p("p", Real, "0.3", "participation probability"),
        ],
        exclusive: &[],
        run: ex::discovery,
    },
];

pub fn lookup(name: &str) -> Option<&'static ExperimentSpec> {
    EXPERIMENTS.iter().find(|e| e.name == name)
}

/// Text listing of every experiment and its parameters.
pub fn describe() -> String {
    let mut out = String::new();
    for e in EXPERIMENTS {
        let tag = if e.stochastic { " (needs seed)" } else { "" };
        out.push_str(&format!("{}{tag}\n    {}\n", e.name, e.summary));
        if let Some(t) = e.default_trials {
            out.push_str(&format!("    trials: integer = {t}\n"));
        }
        for param in e.params {
            let default = param.default.map_or_else(|| "unset".to_string(), |d| d.to_string());
            out.push_str(&format!("    {}: {} = {}  {}\n", param.name, crate::config::kind_name(param.kind), default, param.doc));
        }
        for (a, b) in e.exclusive {
            out.push_str(&format!("    exactly one of {a}, {b}\n"));
        }
    }
    out
}
