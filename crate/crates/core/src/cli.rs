//! Command-line front end.
//!
//! A scenario is a flat JSON document ([`ScenarioConfig`]); command-line
//! flags override it. Exit codes: 0 success, 1 validation, 2 numerical
//! failure, 3 I/O.

use std::ffi::OsString;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::acceptance::{self, VerifyOptions};
use crate::dynamics::{closed, coefficient_trace, Emitter, Scattering, SpontaneousEmission};
use crate::error::{Error, Result};
use crate::field::{default_phase_step, detector_trace, energy_partition, time_windowed_spectrum};
use crate::io;
use crate::lattice::{evolve_recorded, init_excited_tls, init_exponential_packet, realspace_snapshot, LatticeConfig};
use crate::params::{uniform_grid, SimParams, DEFAULT_GRID_POINTS};
use crate::thermo::{default_detuning_grid, detuning_sweep, DEFAULT_TOL, FIG2_LINEWIDTHS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum EmitterKind {
    /// Emitter in |g⟩ hit by the exponential photon.
    Scattering,
    /// Emitter starting in |e⟩, field in vacuum.
    Spontaneous,
}

/// Fully resolved scenario. Missing keys take the defaults shown.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioConfig {
    pub gamma1d: f64,
    pub delta_lw: f64,
    pub detuning: f64,
    /// Default 100·Γ_1D.
    pub omega0: Option<f64>,
    /// Default 40/min(Γ_1D, Δ).
    pub t_max: Option<f64>,
    /// Default 10⁻⁶/max(Γ_1D, Δ).
    pub t_min: Option<f64>,
    pub grid_points: usize,
    pub emitter: EmitterKind,
    pub tol: f64,
    pub jobs: Option<usize>,
    pub out: PathBuf,
    pub x_d: f64,
    pub sweep_linewidths: Vec<f64>,
    pub sweep_detunings: Vec<f64>,
    pub check: bool,
    /// Default 8/Δ (8/Γ_1D for spontaneous emission).
    pub window_width: Option<f64>,
    /// Default a quarter of the window.
    pub hop: Option<f64>,
    /// Frequencies kept around the carrier in the spectrogram output.
    /// Default 10·max(Γ_1D, Δ, |δ|).
    pub spectrum_span: Option<f64>,
    pub lattice_n_modes: Option<usize>,
    pub lattice_bandwidth: Option<f64>,
    pub lattice_x_extent: Option<f64>,
    /// Default: when the closed-form P_e first drops below 10⁻¹⁰.
    pub lattice_t_end: Option<f64>,
    pub snapshot_points: usize,
    pub skip_lattice: bool,
    pub tol_scale: f64,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            gamma1d: 1.0,
            delta_lw: 10.0,
            detuning: 1.0,
            omega0: None,
            t_max: None,
            t_min: None,
            grid_points: DEFAULT_GRID_POINTS,
            emitter: EmitterKind::Scattering,
            tol: DEFAULT_TOL,
            jobs: None,
            out: PathBuf::from("out"),
            x_d: -1.0,
            sweep_linewidths: FIG2_LINEWIDTHS.to_vec(),
            sweep_detunings: default_detuning_grid(),
            check: false,
            window_width: None,
            hop: None,
            spectrum_span: None,
            lattice_n_modes: None,
            lattice_bandwidth: None,
            lattice_x_extent: None,
            lattice_t_end: None,
            snapshot_points: 401,
            skip_lattice: false,
            tol_scale: 1.0,
        }
    }
}

impl ScenarioConfig {
    pub fn params(&self) -> Result<SimParams> {
        let mut p = SimParams::new(self.gamma1d, self.delta_lw, self.detuning);
        if let Some(w) = self.omega0 {
            p.omega0 = w;
        }
        if let Some(t) = self.t_max {
            p.t_max = t;
        }
        if let Some(t) = self.t_min {
            p.t_min = t;
        }
        for w in p.validate()? {
            log::warn!("{w}");
        }
        Ok(p)
    }

    /// Fills every optional field with its resolved default.
    pub fn resolved(mut self) -> Result<Self> {
        let p = self.params()?;
        self.omega0 = Some(p.omega0);
        self.t_max = Some(p.t_max);
        self.t_min = Some(p.t_min);
        let w = self.window_width.unwrap_or_else(|| 8.0 / self.linewidth_scale());
        self.window_width = Some(w);
        self.hop.get_or_insert(0.25 * w);
        self.spectrum_span
            .get_or_insert(10.0 * p.gamma1d.max(p.delta_lw).max(p.detuning.abs()));
        let lat = self.lattice_config(&p);
        self.lattice_n_modes = Some(lat.n_modes);
        self.lattice_bandwidth = Some(lat.bandwidth);
        self.lattice_x_extent = Some(lat.x_extent);
        let t_end = self.lattice_t_end(&p);
        self.lattice_t_end = Some(t_end);
        Ok(self)
    }

    fn linewidth_scale(&self) -> f64 {
        match self.emitter {
            EmitterKind::Scattering => self.delta_lw,
            EmitterKind::Spontaneous => self.gamma1d,
        }
    }

    fn emitter(&self, p: &SimParams) -> Box<dyn Emitter> {
        match self.emitter {
            EmitterKind::Scattering => Box::new(Scattering(*p)),
            EmitterKind::Spontaneous => Box::new(SpontaneousEmission {
                gamma1d: p.gamma1d,
                omega_l: p.omega_l(),
            }),
        }
    }

    fn lattice_config(&self, p: &SimParams) -> LatticeConfig {
        let base = match self.emitter {
            EmitterKind::Scattering => LatticeConfig::for_params(p),
            EmitterKind::Spontaneous => LatticeConfig::for_emission(p.gamma1d, p.t_max),
        };
        let bandwidth = self.lattice_bandwidth.unwrap_or(base.bandwidth);
        let x_extent = self.lattice_x_extent.unwrap_or(base.x_extent);
        let sized = LatticeConfig::sized(bandwidth, x_extent);
        LatticeConfig {
            n_modes: self.lattice_n_modes.unwrap_or(sized.n_modes),
            ..sized
        }
    }

    fn lattice_t_end(&self, p: &SimParams) -> f64 {
        self.lattice_t_end.unwrap_or_else(|| {
            let pe = |t: f64| match self.emitter {
                EmitterKind::Scattering => closed::population(p, t),
                EmitterKind::Spontaneous => (-p.gamma1d * t).exp(),
            };
            let step = 1.0 / p.gamma1d;
            let mut t = step;
            while pe(t) > 1e-10 && t < p.t_max {
                t += step;
            }
            t.min(p.t_max)
        })
    }
}

#[derive(Debug, Parser)]
#[command(name = "photonwork", version, about = "Work and heat exchanged between a single photon and a two-level emitter in a waveguide")]
pub struct Cli {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// JSON scenario file; flags override its values.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory [default: out].
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads for sweeps [default: all cores].
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Absolute tolerance on cycle integrals [default: 1e-10].
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Print the resolved configuration as JSON and exit.
    #[arg(long, global = true)]
    pub print_config: bool,
}

#[derive(Debug, Args, Default)]
pub struct PhysicsArgs {
    /// Vacuum decay rate Γ_1D [default: 1].
    #[arg(long, allow_hyphen_values = true)]
    pub gamma1d: Option<f64>,
    /// Packet linewidth Δ [default: 10].
    #[arg(long, allow_hyphen_values = true)]
    pub delta_lw: Option<f64>,
    /// Detuning δ = ω_L − ω_0 [default: 1].
    #[arg(long, allow_hyphen_values = true)]
    pub detuning: Option<f64>,
    /// Bare transition frequency [default: 100·Γ_1D].
    #[arg(long, allow_hyphen_values = true)]
    pub omega0: Option<f64>,
    /// Time horizon [default: 40/min(Γ_1D, Δ)].
    #[arg(long, allow_hyphen_values = true)]
    pub t_max: Option<f64>,
    /// Samples on [t_min, t_max] [default: 4096].
    #[arg(long)]
    pub grid_points: Option<usize>,
    /// Emitter scenario [default: scattering].
    #[arg(long, value_enum)]
    pub emitter: Option<EmitterKind>,
    /// Detector position, must be negative [default: -1].
    #[arg(long, allow_hyphen_values = true)]
    pub x_d: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coefficient and detector traces: trace.csv, detector.csv.
    Trace {
        #[command(flatten)]
        physics: PhysicsArgs,
    },
    /// Net work over a (Δ, δ) grid: sweep.csv, sweep.json.
    Sweep {
        #[command(flatten)]
        physics: PhysicsArgs,
        /// Comma-separated linewidths [default: 0.01,0.1,2,10].
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        linewidths: Option<Vec<f64>>,
        /// Comma-separated detunings [default: -20..20 step 0.25].
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        detunings: Option<Vec<f64>>,
        /// Fail unless W(δ=0) = 0 and W(−δ) = −W(δ) within quad_error.
        #[arg(long)]
        check: bool,
    },
    /// Time-windowed spectrum: spectrogram.csv, spectrogram.json, peaks.csv.
    Spectrum {
        #[command(flatten)]
        physics: PhysicsArgs,
        /// Window width [default: 8/Δ].
        #[arg(long)]
        window: Option<f64>,
        /// Window hop [default: width/4].
        #[arg(long)]
        hop: Option<f64>,
        /// Half-span of reported frequencies around the carrier.
        #[arg(long)]
        span: Option<f64>,
    },
    /// Run the acceptance suite.
    Verify {
        /// Analytic checks only.
        #[arg(long)]
        skip_lattice: bool,
        /// Multiply every tolerance by this factor [default: 1].
        #[arg(long)]
        tol_scale: Option<f64>,
    },
    /// Discretized-continuum oracle run: lattice_trace.csv, snapshot.csv,
    /// lattice.ckpt, lattice.json.
    Lattice {
        #[command(flatten)]
        physics: PhysicsArgs,
        #[arg(long)]
        n_modes: Option<usize>,
        #[arg(long)]
        bandwidth: Option<f64>,
        #[arg(long)]
        x_extent: Option<f64>,
        /// Evolution end time.
        #[arg(long)]
        t_end: Option<f64>,
        /// Points in the real-space snapshot [default: 401].
        #[arg(long)]
        snapshot_points: Option<usize>,
        /// Continue from a checkpoint instead of a fresh initial state.
        #[arg(long)]
        resume: Option<PathBuf>,
    },
}

impl PhysicsArgs {
    fn apply(&self, c: &mut ScenarioConfig) {
        macro_rules! set {
            ($($f:ident => $g:ident),*) => { $( if let Some(v) = self.$f { c.$g = v; } )* };
        }
        set!(gamma1d => gamma1d, delta_lw => delta_lw, detuning => detuning, grid_points => grid_points,
             emitter => emitter, x_d => x_d);
        if self.omega0.is_some() {
            c.omega0 = self.omega0;
        }
        if self.t_max.is_some() {
            c.t_max = self.t_max;
        }
    }
}

/// Merges the config file and the flags.
pub fn build_config(cli: &Cli) -> Result<ScenarioConfig> {
    let mut c = match &cli.common.config {
        Some(path) => {
            let text = fs::read_to_string(path)?;
            serde_json::from_str(&text).map_err(|e| Error::InvalidParams(format!("{}: {e}", path.display())))?
        }
        None => ScenarioConfig::default(),
    };
    if let Some(o) = &cli.common.out {
        c.out = o.clone();
    }
    if cli.common.jobs.is_some() {
        c.jobs = cli.common.jobs;
    }
    if let Some(t) = cli.common.tol {
        c.tol = t;
    }
    match &cli.command {
        Command::Trace { physics } => physics.apply(&mut c),
        Command::Sweep {
            physics,
            linewidths,
            detunings,
            check,
        } => {
            physics.apply(&mut c);
            if let Some(l) = linewidths {
                c.sweep_linewidths = l.clone();
            }
            if let Some(d) = detunings {
                c.sweep_detunings = d.clone();
            }
            c.check |= *check;
        }
        Command::Spectrum {
            physics,
            window,
            hop,
            span,
        } => {
            physics.apply(&mut c);
            c.window_width = window.or(c.window_width);
            c.hop = hop.or(c.hop);
            c.spectrum_span = span.or(c.spectrum_span);
        }
        Command::Verify { skip_lattice, tol_scale } => {
            c.skip_lattice |= *skip_lattice;
            if let Some(s) = tol_scale {
                c.tol_scale = *s;
            }
        }
        Command::Lattice {
            physics,
            n_modes,
            bandwidth,
            x_extent,
            t_end,
            snapshot_points,
            ..
        } => {
            physics.apply(&mut c);
            c.lattice_n_modes = n_modes.or(c.lattice_n_modes);
            c.lattice_bandwidth = bandwidth.or(c.lattice_bandwidth);
            c.lattice_x_extent = x_extent.or(c.lattice_x_extent);
            c.lattice_t_end = t_end.or(c.lattice_t_end);
            if let Some(n) = snapshot_points {
                c.snapshot_points = *n;
            }
        }
    }
    if !(c.tol > 0.0) {
        return Err(Error::InvalidParams(format!("tol must be positive, got {}", c.tol)));
    }
    if c.jobs == Some(0) {
        return Err(Error::InvalidParams("jobs must be at least 1".into()));
    }
    if c.grid_points < 2 {
        return Err(Error::InvalidParams("grid_points must be at least 2".into()));
    }
    c.resolved()
}

fn create(dir: &Path, name: &str) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(dir.join(name))?))
}

fn finish(mut w: BufWriter<File>) -> Result<()> {
    w.flush()?;
    Ok(())
}

fn time_grid(c: &ScenarioConfig, p: &SimParams) -> Vec<f64> {
    uniform_grid(p.t_min, p.t_max, c.grid_points)
}

fn cmd_trace(c: &ScenarioConfig) -> Result<()> {
    let p = c.params()?;
    let em = c.emitter(&p);
    let grid = time_grid(c, &p);
    let tr = coefficient_trace(em.as_ref(), &grid)?;
    let det_grid: Vec<f64> = grid.iter().map(|t| t - c.x_d).collect();
    let det = detector_trace(em.as_ref(), c.x_d, &det_grid, default_phase_step(&p))?;
    let poles = tr.pole.iter().filter(|p| **p).count();
    if poles > 0 {
        log::warn!("{poles} samples sit on zeros of psi; omega_s and gamma_t are NaN there");
    }
    finish({
        let mut w = create(&c.out, "trace.csv")?;
        io::write_trace_csv(&mut w, &tr)?;
        w
    })?;
    finish({
        let mut w = create(&c.out, "detector.csv")?;
        io::write_detector_csv(&mut w, &det)?;
        w
    })?;
    println!("wrote {} samples to {}", tr.len(), c.out.display());
    Ok(())
}

#[derive(Serialize)]
struct SweepJson<'a> {
    gamma1d: f64,
    omega0: f64,
    tol: f64,
    rows: &'a [crate::thermo::SweepRow],
    failures: Vec<String>,
}

fn cmd_sweep(c: &ScenarioConfig) -> Result<()> {
    let p = c.params()?;
    let table = detuning_sweep(c.gamma1d, p.omega0, &c.sweep_linewidths, &c.sweep_detunings, c.tol)?;
    finish({
        let mut w = create(&c.out, "sweep.csv")?;
        io::write_sweep_csv(&mut w, &table)?;
        w
    })?;
    let failures: Vec<String> = table
        .failures
        .iter()
        .map(|f| format!("Delta={}, delta={}: {}", f.delta_lw, f.detuning, f.message))
        .collect();
    finish({
        let mut w = create(&c.out, "sweep.json")?;
        io::write_json(
            &mut w,
            &SweepJson {
                gamma1d: c.gamma1d,
                omega0: p.omega0,
                tol: c.tol,
                rows: &table.rows,
                failures: failures.clone(),
            },
        )?;
        w
    })?;
    println!("wrote {} rows to {}", table.rows.len(), c.out.display());
    for f in &failures {
        eprintln!("row failed: {f}");
    }
    let unconverged = table.rows.iter().filter(|r| !r.converged).count();
    if unconverged > 0 {
        log::warn!("{unconverged} rows did not reach tolerance {}", c.tol);
    }
    if c.check {
        let res = table.resonance_violations();
        let anti = table.antisymmetry_violations();
        println!("check: {} resonance violations, {} antisymmetry violations", res.len(), anti.len());
        if !res.is_empty() || !anti.is_empty() {
            return Err(Error::Quadrature {
                tol: c.tol,
                estimate: res
                    .iter()
                    .map(|r| r.w_net.abs())
                    .chain(anti.iter().map(|(a, b)| (a.w_net + b.w_net).abs()))
                    .fold(0.0, f64::max),
            });
        }
    }
    if !table.failures.is_empty() {
        return Err(Error::Integration {
            t: f64::NAN,
            reason: format!("{} of {} rows failed", table.failures.len(), table.failures.len() + table.rows.len()),
        });
    }
    Ok(())
}

fn cmd_spectrum(c: &ScenarioConfig) -> Result<()> {
    let p = c.params()?;
    let em = c.emitter(&p);
    let grid: Vec<f64> = time_grid(c, &p).into_iter().map(|t| t - c.x_d).collect();
    let det = detector_trace(em.as_ref(), c.x_d, &grid, default_phase_step(&p))?;
    let width = c.window_width.expect("resolved");
    let mut sp = time_windowed_spectrum(&det, width, c.hop.expect("resolved"))?;
    sp.restrict(em.carrier(), c.spectrum_span.expect("resolved"));
    finish({
        let mut w = create(&c.out, "spectrogram.csv")?;
        io::write_spectrogram_csv(&mut w, &sp)?;
        w
    })?;
    finish({
        let mut w = create(&c.out, "spectrogram.json")?;
        io::write_json(&mut w, &sp)?;
        w
    })?;
    finish({
        let mut w = create(&c.out, "peaks.csv")?;
        io::write_peak_track_csv(&mut w, &sp)?;
        w
    })?;
    println!(
        "wrote {} windows ({} skipped) to {}",
        sp.centers.len(),
        sp.skipped,
        c.out.display()
    );
    Ok(())
}

fn cmd_verify(c: &ScenarioConfig) -> Result<bool> {
    let opt = VerifyOptions {
        skip_lattice: c.skip_lattice,
        tol_scale: c.tol_scale,
    };
    let outcomes = acceptance::run_all(&opt);
    for o in &outcomes {
        println!("{o}");
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    println!("{} passed, {failed} failed", outcomes.len() - failed);
    Ok(failed == 0)
}

#[derive(Serialize)]
struct LatticeSummary {
    params: SimParams,
    lattice: LatticeConfig,
    dt: f64,
    final_time: f64,
    final_pe: f64,
    norm_drift: f64,
    max_abs_psi_error: Option<f64>,
    partition: Option<crate::field::EnergyPartition>,
    partition_error: Option<String>,
}

fn cmd_lattice(c: &ScenarioConfig, resume: Option<&Path>) -> Result<()> {
    let (state, cfg, p) = match resume {
        Some(path) => io::read_checkpoint(File::open(path)?)?,
        None => {
            let p = c.params()?;
            let cfg = c.lattice_config(&p);
            let st = match c.emitter {
                EmitterKind::Scattering => init_exponential_packet(&cfg, &p)?,
                EmitterKind::Spontaneous => init_excited_tls(&cfg),
            };
            (st, cfg, p)
        }
    };
    for w in cfg.validate(&p)? {
        log::warn!("{w}");
    }
    let t_end = c.lattice_t_end.expect("resolved").max(state.time);
    let steps = ((t_end - state.time) / cfg.dt()).round().max(1.0);
    let stride = ((steps / 2000.0).ceil() as usize).max(1);
    let run = evolve_recorded(&state, &cfg, &p, t_end, stride)?;

    let reference = |t: f64| match c.emitter {
        EmitterKind::Scattering => closed::excited_amplitude_closed(&p, t),
        EmitterKind::Spontaneous => closed::spontaneous_emission_amplitude(p.gamma1d, p.omega0, t),
    };
    let mut w = csv::Writer::from_writer(create(&c.out, "lattice_trace.csv")?);
    w.write_record(["t", "re_psi", "im_psi", "re_psi_ref", "im_psi_ref", "h_int"])?;
    let mut max_err = 0.0f64;
    for ((&t, &psi), &h) in run.trace.times.iter().zip(&run.trace.psi).zip(&run.interaction_energy) {
        let r = reference(t);
        max_err = max_err.max((psi - r).norm());
        w.write_record([t, psi.re, psi.im, r.re, r.im, h].map(io::fmt))?;
    }
    w.flush()?;

    let xs = uniform_grid(-cfg.x_extent, cfg.x_extent, c.snapshot_points.max(2));
    let snap = realspace_snapshot(&run.state, &cfg, &xs)?;
    finish({
        let mut w = create(&c.out, "snapshot.csv")?;
        io::write_snapshot_csv(&mut w, &snap)?;
        w
    })?;
    finish({
        let mut w = create(&c.out, "lattice.ckpt")?;
        io::write_checkpoint(&mut w, &run.state, &cfg, &p)?;
        w
    })?;
    let (partition, partition_error) = match energy_partition(&run.state, &cfg, p.omega0) {
        Ok(part) => (Some(part), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let summary = LatticeSummary {
        params: p,
        lattice: cfg,
        dt: cfg.dt(),
        final_time: run.state.time,
        final_pe: run.state.psi.norm_sqr(),
        norm_drift: run.norm_drift,
        max_abs_psi_error: resume.is_none().then_some(max_err),
        partition,
        partition_error,
    };
    finish({
        let mut w = create(&c.out, "lattice.json")?;
        io::write_json(&mut w, &summary)?;
        w
    })?;
    println!(
        "evolved {} modes to t = {:.4}, norm drift {:.1e}, wrote {}",
        cfg.n_modes,
        run.state.time,
        run.norm_drift,
        c.out.display()
    );
    Ok(())
}

fn execute(cli: &Cli) -> Result<i32> {
    let c = build_config(cli)?;
    if cli.common.print_config {
        io::write_json(std::io::stdout().lock(), &c)?;
        return Ok(0);
    }
    if let Some(n) = c.jobs {
        // An already-initialized pool (repeated in-process calls) is fine.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    if !matches!(cli.command, Command::Verify { .. }) {
        fs::create_dir_all(&c.out)?;
        let mut w = create(&c.out, "config.json")?;
        io::write_json(&mut w, &c)?;
        finish(w)?;
    }
    match &cli.command {
        Command::Trace { .. } => cmd_trace(&c)?,
        Command::Sweep { .. } => cmd_sweep(&c)?,
        Command::Spectrum { .. } => cmd_spectrum(&c)?,
        Command::Verify { .. } => {
            if !cmd_verify(&c)? {
                return Ok(2);
            }
        }
        Command::Lattice { resume, .. } => cmd_lattice(&c, resume.as_deref())?,
    }
    Ok(0)
}

/// Parses `args` and runs; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
