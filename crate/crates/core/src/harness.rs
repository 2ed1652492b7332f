//! Explore-and-test loop, ablation matrix and file outputs.
//!
//! One trial runs a fixed number of simulation steps. Whenever the agent has
//! no target (start, target reached, or reset after the step budget), a new
//! target is picked either by minimizing the acquisition field or uniformly
//! over valid cells. Every step the agent picks an action, moves, and the
//! cell it ends up in is recorded into the grid model.

use std::fs;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::acquisition::{acquisition_field, select_target};
use crate::error::{Error, Result};
use crate::grid::{Cell, ScalarGrid};
use crate::kernel::Kernel;
use crate::level::{load_level, maybe_reset, step, AgentState, LevelSpec};
use crate::metrics::{coverage, distance_to_uniform, normalize_vs_baseline, RunMetrics};
use crate::policy::{choose_action, ExplorationMode, NavField, PlanCache};
use crate::surrogate::{uncertainty_from_confidence, Mode, SurrogateState};

/// Re-draws allowed when a freshly picked target is the agent's own cell.
const MAX_RESELECT: usize = 4;

pub const COVERAGE_DEFINITION: &str = "fraction of NavMesh-valid cells visited at least once";
pub const DISTANCE_DEFINITION: &str = "total-variation distance 0.5*sum|p-1/N| between the visit \
     distribution over NavMesh-valid cells and the uniform distribution over those N cells";
pub const BUDGET_DEFINITION: &str = "an agent that has not reached its target after step_budget \
     steps is returned to spawn; steps stand in for wall-clock time";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TargetMode {
    /// Minimize the LCB acquisition field.
    Bo,
    /// Uniform over NavMesh-valid cells.
    Random,
}

impl TargetMode {
    pub fn label(self) -> &'static str {
        match self {
            TargetMode::Bo => "bo",
            TargetMode::Random => "random",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub level_path: PathBuf,
    pub sigma: f64,
    pub sigma_f: f64,
    pub target_mode: TargetMode,
    pub exploration: ExplorationMode,
    /// `None` means `4 * (width + height)` of the loaded level.
    pub step_budget: Option<usize>,
    pub total_steps: u64,
    pub trials: usize,
    pub seed: u64,
    pub out_dir: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            level_path: PathBuf::from("crates/core/levels/rooms.txt"),
            sigma: 0.5,
            sigma_f: 1.0,
            target_mode: TargetMode::Bo,
            exploration: ExplorationMode::Adaptive,
            step_budget: None,
            total_steps: 50_000,
            trials: 20,
            seed: 0,
            out_dir: PathBuf::from("out"),
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if !(self.sigma.is_finite() && self.sigma > 0.0) {
            return bad(format!("sigma must be > 0, got {}", self.sigma));
        }
        if !(self.sigma_f.is_finite() && self.sigma_f > 0.0) {
            return bad(format!("sigma_f must be > 0, got {}", self.sigma_f));
        }
        if let ExplorationMode::Constant { rate } = self.exploration {
            if !(0.0..=1.0).contains(&rate) {
                return bad(format!("exploration rate must be in [0, 1], got {rate}"));
            }
        }
        if self.step_budget == Some(0) {
            return bad("step_budget must be >= 1".into());
        }
        if self.total_steps == 0 {
            return bad("total_steps must be >= 1".into());
        }
        if self.trials == 0 {
            return bad("trials must be >= 1".into());
        }
        Ok(())
    }

    /// Rate used for the constant-exploration rows of the ablation.
    pub fn constant_rate(&self) -> f64 {
        match self.exploration {
            ExplorationMode::Constant { rate } => rate,
            _ => ExplorationMode::DEFAULT_CONSTANT_RATE,
        }
    }

    pub fn load_level(&self) -> Result<LevelSpec> {
        let text = fs::read_to_string(&self.level_path)
            .map_err(|e| Error::io(&self.level_path, e))?;
        load_level(&text)
    }

    fn echo(&self, level: &LevelSpec) -> ConfigEcho {
        ConfigEcho {
            level: self.level_path.display().to_string(),
            sigma: self.sigma,
            sigma_f: self.sigma_f,
            target_mode: self.target_mode,
            exploration: self.exploration,
            step_budget: self.step_budget.unwrap_or_else(|| level.default_step_budget()),
            total_steps: self.total_steps,
            trials: self.trials,
            seed: self.seed,
        }
    }
}

/// Partial configuration, as read from a `key = value` file or CLI flags.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigOverrides {
    pub level_path: Option<PathBuf>,
    pub sigma: Option<f64>,
    pub sigma_f: Option<f64>,
    pub target_mode: Option<TargetMode>,
    pub exploration: Option<String>,
    pub rate: Option<f64>,
    /// `Some(None)` selects the automatic budget.
    pub step_budget: Option<Option<usize>>,
    pub total_steps: Option<u64>,
    pub trials: Option<usize>,
    pub seed: Option<u64>,
    pub out_dir: Option<PathBuf>,
}

pub fn parse_target_mode(s: &str) -> Result<TargetMode> {
    match s {
        "bo" => Ok(TargetMode::Bo),
        "random" => Ok(TargetMode::Random),
        _ => Err(Error::Config(format!("unknown target mode {s:?} (bo|random)"))),
    }
}

pub fn parse_step_budget(s: &str) -> Result<Option<usize>> {
    if s == "auto" {
        return Ok(None);
    }
    s.parse()
        .map(Some)
        .map_err(|_| Error::Config(format!("step_budget must be an integer or 'auto', got {s:?}")))
}

fn parse_num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse()
        .map_err(|_| Error::Config(format!("bad value for {key}: {v:?}")))
}

impl ConfigOverrides {
    /// Parses `key = value` lines. Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut o = ConfigOverrides::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", n + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "level" => o.level_path = Some(PathBuf::from(value)),
                "sigma" => o.sigma = Some(parse_num(key, value)?),
                "sigma_f" => o.sigma_f = Some(parse_num(key, value)?),
                "target_mode" => o.target_mode = Some(parse_target_mode(value)?),
                "exploration" => o.exploration = Some(value.to_string()),
                "rate" => o.rate = Some(parse_num(key, value)?),
                "step_budget" => o.step_budget = Some(parse_step_budget(value)?),
                "total_steps" => o.total_steps = Some(parse_num(key, value)?),
                "trials" => o.trials = Some(parse_num(key, value)?),
                "seed" => o.seed = Some(parse_num(key, value)?),
                "out_dir" => o.out_dir = Some(PathBuf::from(value)),
                other => {
                    return Err(Error::Config(format!("line {}: unknown key {other:?}", n + 1)))
                }
            }
        }
        Ok(o)
    }

    /// Fields set in `other` win.
    pub fn merge(self, other: ConfigOverrides) -> ConfigOverrides {
        ConfigOverrides {
            level_path: other.level_path.or(self.level_path),
            sigma: other.sigma.or(self.sigma),
            sigma_f: other.sigma_f.or(self.sigma_f),
            target_mode: other.target_mode.or(self.target_mode),
            exploration: other.exploration.or(self.exploration),
            rate: other.rate.or(self.rate),
            step_budget: other.step_budget.or(self.step_budget),
            total_steps: other.total_steps.or(self.total_steps),
            trials: other.trials.or(self.trials),
            seed: other.seed.or(self.seed),
            out_dir: other.out_dir.or(self.out_dir),
        }
    }

    pub fn apply(self, mut cfg: RunConfig) -> Result<RunConfig> {
        if let Some(v) = self.level_path {
            cfg.level_path = v;
        }
        if let Some(v) = self.sigma {
            cfg.sigma = v;
        }
        if let Some(v) = self.sigma_f {
            cfg.sigma_f = v;
        }
        if let Some(v) = self.target_mode {
            cfg.target_mode = v;
        }
        let rate = self.rate.unwrap_or_else(|| cfg.constant_rate());
        match self.exploration.as_deref() {
            Some("adaptive") => cfg.exploration = ExplorationMode::Adaptive,
            Some("none") => cfg.exploration = ExplorationMode::None,
            Some("constant") => cfg.exploration = ExplorationMode::constant(rate)?,
            Some(other) => {
                return Err(Error::Config(format!(
                    "unknown exploration {other:?} (adaptive|constant|none)"
                )))
            }
            None => {
                if let (Some(r), ExplorationMode::Constant { .. }) = (self.rate, cfg.exploration) {
                    cfg.exploration = ExplorationMode::constant(r)?;
                }
            }
        }
        if let Some(v) = self.step_budget {
            cfg.step_budget = v;
        }
        if let Some(v) = self.total_steps {
            cfg.total_steps = v;
        }
        if let Some(v) = self.trials {
            cfg.trials = v;
        }
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        if let Some(v) = self.out_dir {
            cfg.out_dir = v;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Seed for trial `trial`. Shared by every ablation row so rows are paired.
pub fn trial_seed(base: u64, trial: usize) -> u64 {
    base.wrapping_add(trial as u64)
}

#[derive(Debug, Clone)]
pub struct TrialOutcome {
    pub metrics: RunMetrics,
    pub state: SurrogateState,
    /// Coverage sampled every `trace_every` steps, when requested.
    pub coverage_trace: Vec<f64>,
    pub targets_selected: u64,
    pub resets: u64,
}

/// Picks the next target. Also returns the confidence field computed at the
/// same moment when adaptive exploration needs it.
fn pick_target(
    level: &LevelSpec,
    state: &SurrogateState,
    config: &RunConfig,
    valid: &[Cell],
    rng: &mut ChaCha8Rng,
) -> Result<(Cell, Option<ScalarGrid>)> {
    let adaptive = matches!(config.exploration, ExplorationMode::Adaptive);
    match config.target_mode {
        TargetMode::Bo => {
            let mask = level.navmask();
            let f = state.predict_field();
            let c = state.confidence_field();
            let u = uncertainty_from_confidence(&c, state.sigma_f());
            let a = acquisition_field(&f, &u, mask)?;
            let target = select_target(&a, mask, rng)?.target;
            Ok((target, adaptive.then_some(c)))
        }
        TargetMode::Random => {
            let target = valid[rng.gen_range(0..valid.len())];
            Ok((target, adaptive.then(|| state.confidence_field())))
        }
    }
}

/// Runs one trial on an already loaded level.
pub fn simulate(
    level: &LevelSpec,
    config: &RunConfig,
    seed: u64,
    trace_every: Option<u64>,
) -> Result<TrialOutcome> {
    config.validate()?;
    let mask = level.navmask();
    let valid = mask.valid_cells();
    if valid.is_empty() {
        return Err(Error::EmptyMask);
    }
    let budget = config
        .step_budget
        .unwrap_or_else(|| level.default_step_budget());
    let kernel = Kernel::new(config.sigma, None)?;
    let mut state = SurrogateState::new(kernel, config.sigma_f, mask.clone(), Mode::Additive)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut agent = AgentState::at(level.spawn());
    let mut field: Option<NavField> = None;
    let mut plan: Option<PlanCache> = None;
    // Confidence as of the last target selection.
    let mut confidence: Option<ScalarGrid> = None;
    let mut ghost_passes = 0u64;
    let mut targets_selected = 0u64;
    let mut resets = 0u64;
    let mut coverage_trace = Vec::new();

    for t in 0..config.total_steps {
        if agent.target.is_none() || agent.on_target() {
            let mut attempts = 0;
            let target = loop {
                let (target, c) = pick_target(level, &state, config, &valid, &mut rng)?;
                confidence = c;
                if target != agent.position || attempts >= MAX_RESELECT {
                    break target;
                }
                attempts += 1;
            };
            targets_selected += 1;
            agent.assign_target(target);
            field = NavField::new(level, target);
            plan = field.as_ref().and_then(|f| f.plan_from(agent.position));
        }

        let c_here = confidence.as_ref().map_or(1.0, |c| c.get(agent.position));
        let action = choose_action(plan.as_ref(), c_here, &config.exploration, &mut rng);
        let (next, outcome) = step(level, agent, action);
        agent = next;
        state.record_sample(agent.position, None)?;
        if outcome.ghost_wall_entered {
            ghost_passes += 1;
        }
        if !outcome.target_reached {
            let before = agent;
            agent = maybe_reset(level, agent, budget);
            if agent != before {
                resets += 1;
            }
        }

        let on_path = match plan.as_mut() {
            Some(p) => p.advance_to(agent.position),
            None => false,
        };
        if !on_path {
            plan = field.as_ref().and_then(|f| f.plan_from(agent.position));
        }

        if let Some(every) = trace_every {
            if (t + 1) % every == 0 {
                coverage_trace.push(coverage(state.occupancy(), mask)?);
            }
        }
    }

    let metrics = RunMetrics {
        coverage: coverage(state.occupancy(), mask)?,
        dist_uniform: distance_to_uniform(state.heat(), mask)?,
        ghost_passes,
        steps: config.total_steps,
        seed,
    };
    Ok(TrialOutcome {
        metrics,
        state,
        coverage_trace,
        targets_selected,
        resets,
    })
}

/// Loads the configured level and runs one trial.
pub fn run_trial(config: &RunConfig, seed: u64) -> Result<RunMetrics> {
    let level = config.load_level()?;
    Ok(simulate(&level, config, seed, None)?.metrics)
}

/// Ablation rows in report order. The last one is the normalization baseline.
pub fn ablation_configs(rate: f64) -> [(TargetMode, ExplorationMode); 6] {
    let constant = ExplorationMode::Constant { rate };
    [
        (TargetMode::Bo, ExplorationMode::Adaptive),
        (TargetMode::Bo, constant),
        (TargetMode::Bo, ExplorationMode::None),
        (TargetMode::Random, ExplorationMode::Adaptive),
        (TargetMode::Random, constant),
        (TargetMode::Random, ExplorationMode::None),
    ]
}

pub const BASELINE_ROW: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Stat {
    pub mean: f64,
    /// Sample standard deviation (0 for a single trial).
    pub std: f64,
}

impl Stat {
    pub fn of(xs: &[f64]) -> Stat {
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let std = if xs.len() > 1 {
            (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
        } else {
            0.0
        };
        Stat { mean, std }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AblationRow {
    pub label: String,
    pub target_mode: TargetMode,
    pub exploration: ExplorationMode,
    pub baseline: bool,
    pub coverage: Stat,
    pub dist_uniform: Stat,
    pub ghost_passes: Stat,
    /// Mean coverage over the baseline's mean coverage.
    pub normalized_coverage: f64,
    /// Mean distance over the baseline's mean distance.
    pub normalized_dist_uniform: f64,
    pub trials: Vec<RunMetrics>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AblationReport {
    pub config: ConfigEcho,
    pub definitions: MetricDefinitions,
    pub rows: Vec<AblationRow>,
}

impl AblationReport {
    pub fn row(&self, target_mode: TargetMode, exploration: &str) -> Option<&AblationRow> {
        self.rows
            .iter()
            .find(|r| r.target_mode == target_mode && r.exploration.label() == exploration)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from(
            "label,target_mode,exploration,coverage_mean,coverage_std,dist_mean,dist_std,\
             ghost_mean,ghost_std,norm_coverage,norm_dist\n",
        );
        for r in &self.rows {
            s.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{}\n",
                r.label,
                r.target_mode.label(),
                r.exploration.label(),
                r.coverage.mean,
                r.coverage.std,
                r.dist_uniform.mean,
                r.dist_uniform.std,
                r.ghost_passes.mean,
                r.ghost_passes.std,
                r.normalized_coverage,
                r.normalized_dist_uniform
            ));
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub level: String,
    pub sigma: f64,
    pub sigma_f: f64,
    pub target_mode: TargetMode,
    pub exploration: ExplorationMode,
    pub step_budget: usize,
    pub total_steps: u64,
    pub trials: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricDefinitions {
    pub coverage: String,
    pub dist_uniform: String,
    pub step_budget: String,
}

impl Default for MetricDefinitions {
    fn default() -> Self {
        MetricDefinitions {
            coverage: COVERAGE_DEFINITION.into(),
            dist_uniform: DISTANCE_DEFINITION.into(),
            step_budget: BUDGET_DEFINITION.into(),
        }
    }
}

/// Contents of `metrics.json` for a single trial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    #[serde(flatten)]
    pub metrics: RunMetrics,
    pub config: ConfigEcho,
    pub definitions: MetricDefinitions,
}

impl TrialRecord {
    pub fn new(metrics: RunMetrics, config: &RunConfig, level: &LevelSpec) -> Self {
        TrialRecord {
            metrics,
            config: config.echo(level),
            definitions: MetricDefinitions::default(),
        }
    }
}

/// The report plus the trial-0 outcome of every row, for map output.
pub struct AblationRun {
    pub report: AblationReport,
    pub first_trials: Vec<(String, TrialOutcome)>,
}

pub fn run_ablation(base: &RunConfig) -> Result<AblationRun> {
    base.validate()?;
    let level = base.load_level()?;
    let configs = ablation_configs(base.constant_rate());
    let jobs: Vec<(usize, usize)> = (0..configs.len())
        .flat_map(|c| (0..base.trials).map(move |t| (c, t)))
        .collect();
    let outcomes: Vec<TrialOutcome> = jobs
        .par_iter()
        .map(|&(c, t)| {
            let mut cfg = base.clone();
            cfg.target_mode = configs[c].0;
            cfg.exploration = configs[c].1;
            simulate(&level, &cfg, trial_seed(base.seed, t), None)
        })
        .collect::<Result<_>>()?;

    let mut rows = Vec::with_capacity(configs.len());
    let mut first_trials = Vec::with_capacity(configs.len());
    let mut outcomes = outcomes.into_iter();
    for (i, &(target_mode, exploration)) in configs.iter().enumerate() {
        let batch: Vec<TrialOutcome> = outcomes.by_ref().take(base.trials).collect();
        let label = format!("{}_{}", target_mode.label(), exploration.label());
        let col = |f: fn(&RunMetrics) -> f64| -> Vec<f64> {
            batch.iter().map(|o| f(&o.metrics)).collect()
        };
        rows.push(AblationRow {
            label: label.clone(),
            target_mode,
            exploration,
            baseline: i == BASELINE_ROW,
            coverage: Stat::of(&col(|m| m.coverage)),
            dist_uniform: Stat::of(&col(|m| m.dist_uniform)),
            ghost_passes: Stat::of(&col(|m| m.ghost_passes as f64)),
            normalized_coverage: 0.0,
            normalized_dist_uniform: 0.0,
            trials: batch.iter().map(|o| o.metrics.clone()).collect(),
        });
        first_trials.push((label, batch.into_iter().next().expect("trials >= 1")));
    }

    let base_cov = rows[BASELINE_ROW].coverage.mean;
    let base_dist = rows[BASELINE_ROW].dist_uniform.mean;
    for r in &mut rows {
        r.normalized_coverage = normalize_vs_baseline(r.coverage.mean, base_cov)?;
        r.normalized_dist_uniform = normalize_vs_baseline(r.dist_uniform.mean, base_dist)?;
    }

    let mut echo = base.echo(&level);
    echo.exploration = ExplorationMode::Constant {
        rate: base.constant_rate(),
    };
    Ok(AblationRun {
        report: AblationReport {
            config: echo,
            definitions: MetricDefinitions::default(),
            rows,
        },
        first_trials,
    })
}

fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| Error::io(path, e))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

/// Writes the maps and `metrics.json` for one trial.
pub fn render_outputs(state: &SurrogateState, record: &TrialRecord, out_dir: &Path) -> Result<()> {
    fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let confidence = state.confidence_field();
    let u = uncertainty_from_confidence(&confidence, state.sigma_f());
    let acquisition = acquisition_field(&state.predict_field(), &u, state.navmask())?;
    write(&out_dir.join("occupancy.pgm"), &state.occupancy().to_pgm())?;
    write(&out_dir.join("heat.pgm"), &state.heat().to_pgm())?;
    write(&out_dir.join("confidence.pgm"), &confidence.to_pgm())?;
    write(&out_dir.join("acquisition.pgm"), &acquisition.to_pgm())?;
    write(&out_dir.join("heat.csv"), &state.heat().to_csv())?;
    write(&out_dir.join("metrics.json"), &to_json(record))?;
    Ok(())
}

pub fn save_state(state: &SurrogateState, path: &Path) -> Result<()> {
    let text = serde_json::to_string(state).expect("plain data serializes");
    write(path, &text)
}

pub fn load_state(path: &Path) -> Result<SurrogateState> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    serde_json::from_str(&text).map_err(|source| Error::Json {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_record(path: &Path) -> Result<TrialRecord> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    serde_json::from_str(&text).map_err(|source| Error::Json {
        path: path.to_path_buf(),
        source,
    })
}

/// Runs a single trial with `config.seed` and writes maps, metrics and state.
pub fn run_and_write(config: &RunConfig) -> Result<TrialRecord> {
    let level = config.load_level()?;
    let outcome = simulate(&level, config, config.seed, None)?;
    let record = TrialRecord::new(outcome.metrics, config, &level);
    render_outputs(&outcome.state, &record, &config.out_dir)?;
    save_state(&outcome.state, &config.out_dir.join("state.json"))?;
    Ok(record)
}

/// Runs the ablation and writes `report.json`, `report.csv` and per-row maps
/// of trial 0.
pub fn ablate_and_write(base: &RunConfig) -> Result<AblationReport> {
    let run = run_ablation(base)?;
    let level = base.load_level()?;
    fs::create_dir_all(&base.out_dir).map_err(|e| Error::io(&base.out_dir, e))?;
    write(&base.out_dir.join("report.json"), &to_json(&run.report))?;
    write(&base.out_dir.join("report.csv"), &run.report.to_csv())?;
    for ((label, outcome), &(target_mode, exploration)) in run
        .first_trials
        .iter()
        .zip(ablation_configs(base.constant_rate()).iter())
    {
        let mut cfg = base.clone();
        cfg.target_mode = target_mode;
        cfg.exploration = exploration;
        let record = TrialRecord::new(outcome.metrics.clone(), &cfg, &level);
        render_outputs(&outcome.state, &record, &base.out_dir.join(label))?;
    }
    Ok(run.report)
}

/// Re-emits maps from a directory written by [`run_and_write`].
pub fn render_from_dir(input: &Path, out_dir: &Path) -> Result<()> {
    let state = load_state(&input.join("state.json"))?;
    let record = load_record(&input.join("metrics.json"))?;
    render_outputs(&state, &record, out_dir)
}
