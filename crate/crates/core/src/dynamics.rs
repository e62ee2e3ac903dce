//! One-dimensional hybrid dynamics: a joint amplitude `Ψ(x, q, p)` for a
//! quantum particle at `x` and a Koopman–von Neumann classical particle at
//! `(q, p)`, evolved by Strang splitting with spectral derivatives.
//!
//! The Hamiltonian is
//!
//! ```text
//! k²/2M + (p/m) λq + g1 (x − q)² + g2 (k/M − p/m)² + g3 (x − q) λp
//! ```
//!
//! with `k = −i∂x`, `λq = −i∂q`, `λp = −i∂p`. Every split factor is a phase
//! that is diagonal once each axis is in either its coordinate or its
//! frequency representation, so each step is exactly unitary up to
//! roundoff.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::io::Write;
use std::path::Path;
use std::sync::Arc;

use ndarray::{Array2, Array3, Axis, Zip};
use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One periodic axis: `n` points on `[−half_width, half_width)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxisSpec {
    pub n: usize,
    pub half_width: f64,
}

impl AxisSpec {
    pub fn new(n: usize, half_width: f64) -> Self {
        AxisSpec { n, half_width }
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / self.n as f64
    }

    pub fn coordinate(&self, j: usize) -> f64 {
        -self.half_width + j as f64 * self.spacing()
    }

    /// Angular frequency of FFT bin `j`.
    pub fn frequency(&self, j: usize) -> f64 {
        let n = self.n as i64;
        let j = j as i64;
        let signed = if j < n / 2 { j } else { j - n };
        PI / self.half_width * signed as f64
    }

    pub fn coordinates(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.coordinate(j)).collect()
    }

    pub fn frequencies(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.frequency(j)).collect()
    }

    /// Map `v` into the periodic domain.
    pub fn wrap(&self, v: f64) -> f64 {
        let period = 2.0 * self.half_width;
        (v + self.half_width).rem_euclid(period) - self.half_width
    }

    fn validate(&self, name: &str) -> Result<()> {
        if self.n < 2 || !self.n.is_power_of_two() {
            return Err(Error::InvalidGrid(format!("{name}: point count {} is not a power of two ≥ 2", self.n)));
        }
        if !(self.half_width.is_finite() && self.half_width > 0.0) {
            return Err(Error::InvalidGrid(format!("{name}: half-width must be positive")));
        }
        Ok(())
    }
}

/// Grids for `x`, `q`, `p`, the time step and a default step count.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub x: AxisSpec,
    pub q: AxisSpec,
    pub p: AxisSpec,
    pub dt: f64,
    pub steps: usize,
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        self.x.validate("x")?;
        self.q.validate("q")?;
        self.p.validate("p")?;
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(Error::InvalidGrid("time step must be positive".into()));
        }
        Ok(())
    }

    fn axes(&self) -> [AxisSpec; 3] {
        [self.x, self.q, self.p]
    }

    fn shape(&self) -> (usize, usize, usize) {
        (self.x.n, self.q.n, self.p.n)
    }

    fn cell_volume(&self) -> f64 {
        self.x.spacing() * self.q.spacing() * self.p.spacing()
    }
}

/// Masses and interaction strengths.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HamiltonianSpec {
    pub quantum_mass: f64,
    pub classical_mass: f64,
    /// Strength of `(x − q)²`.
    #[serde(default)]
    pub g1: f64,
    /// Strength of `(k/M − p/m)²`.
    #[serde(default)]
    pub g2: f64,
    /// Strength of `(x − q) λp`.
    #[serde(default)]
    pub g3: f64,
}

impl HamiltonianSpec {
    pub fn free(quantum_mass: f64, classical_mass: f64) -> Self {
        HamiltonianSpec { quantum_mass, classical_mass, g1: 0.0, g2: 0.0, g3: 0.0 }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, m) in [("quantum", self.quantum_mass), ("classical", self.classical_mass)] {
            if !(m.is_finite() && m > 0.0) {
                return Err(Error::InvalidHamiltonian(format!("{name} mass must be positive")));
            }
        }
        for (name, g) in [("g1", self.g1), ("g2", self.g2), ("g3", self.g3)] {
            if !g.is_finite() {
                return Err(Error::InvalidHamiltonian(format!("{name} must be finite")));
            }
        }
        Ok(())
    }
}

/// Product Gaussian `φ(x) χ(q) ξ(p)`. Widths are standard deviations of
/// the probability densities.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PacketSpec {
    pub x0: f64,
    pub sigma_x: f64,
    /// Mean quantum momentum.
    #[serde(default)]
    pub k0: f64,
    pub q0: f64,
    pub sigma_q: f64,
    pub p0: f64,
    pub sigma_p: f64,
}

/// Joint amplitude on the coordinate grid.
#[derive(Clone, Debug, PartialEq)]
pub struct HybridState {
    pub psi: Array3<Complex64>,
    pub grid: GridSpec,
    pub time: f64,
}

const MIN_POINTS_PER_SIGMA: f64 = 4.0;

fn check_width(axis: &AxisSpec, center: f64, sigma: f64, name: &str) -> Result<()> {
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(Error::InvalidPacket(format!("{name}: width must be positive")));
    }
    if sigma / axis.spacing() < MIN_POINTS_PER_SIGMA {
        return Err(Error::InvalidPacket(format!(
            "{name}: width {sigma} spans fewer than {MIN_POINTS_PER_SIGMA} grid points"
        )));
    }
    if center.abs() + 5.0 * sigma > axis.half_width {
        return Err(Error::InvalidPacket(format!(
            "{name}: packet at {center} with width {sigma} does not fit in ±{}",
            axis.half_width
        )));
    }
    Ok(())
}

fn gaussian_amplitude(v: f64, center: f64, sigma: f64) -> f64 {
    (-(v - center).powi(2) / (4.0 * sigma * sigma)).exp()
}

/// Normalized product Gaussian.
pub fn init_gaussian(grid: &GridSpec, packet: &PacketSpec) -> Result<HybridState> {
    grid.validate()?;
    check_width(&grid.x, packet.x0, packet.sigma_x, "x")?;
    check_width(&grid.q, packet.q0, packet.sigma_q, "q")?;
    check_width(&grid.p, packet.p0, packet.sigma_p, "p")?;
    let k_max = PI / grid.x.spacing();
    if packet.k0.abs() + 5.0 / (2.0 * packet.sigma_x) > k_max {
        return Err(Error::InvalidPacket(format!("k: mean momentum {} is not resolved by the x grid", packet.k0)));
    }
    let phi: Vec<Complex64> = grid
        .x
        .coordinates()
        .iter()
        .map(|&x| Complex64::from_polar(gaussian_amplitude(x, packet.x0, packet.sigma_x), packet.k0 * x))
        .collect();
    let chi: Vec<f64> =
        grid.q.coordinates().iter().map(|&q| gaussian_amplitude(q, packet.q0, packet.sigma_q)).collect();
    let xi: Vec<f64> = grid.p.coordinates().iter().map(|&p| gaussian_amplitude(p, packet.p0, packet.sigma_p)).collect();
    let mut psi = Array3::from_shape_fn(grid.shape(), |(i, j, l)| phi[i] * (chi[j] * xi[l]));
    let norm = squared_sum(&psi) * grid.cell_volume();
    let scale = 1.0 / norm.sqrt();
    psi.mapv_inplace(|z| z * scale);
    Ok(HybridState { psi, grid: *grid, time: 0.0 })
}

fn squared_sum(a: &Array3<Complex64>) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum()
}

/// Representation of one axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Space {
    Coordinate,
    Frequency,
}

/// Batched FFTs along the three axes.
struct Transforms {
    forward: [Arc<dyn Fft<f64>>; 3],
    inverse: [Arc<dyn Fft<f64>>; 3],
    scratch: Vec<Complex64>,
    lane: Vec<Complex64>,
}

impl Transforms {
    fn new(grid: &GridSpec) -> Self {
        let mut planner = FftPlanner::new();
        let sizes = [grid.x.n, grid.q.n, grid.p.n];
        let forward = sizes.map(|n| planner.plan_fft_forward(n));
        let inverse = sizes.map(|n| planner.plan_fft_inverse(n));
        let scratch_len = forward.iter().chain(inverse.iter()).map(|f| f.get_inplace_scratch_len()).max().unwrap_or(0);
        Transforms { forward, inverse, scratch: vec![Complex64::default(); scratch_len], lane: Vec::new() }
    }

    /// Transform `axis` to `target`; the inverse transform carries `1/N`.
    fn transform_axis(&mut self, psi: &mut Array3<Complex64>, axis: usize, from: Space, target: Space) {
        if from == target {
            return;
        }
        let inverse = target == Space::Coordinate;
        let fft = if inverse { &self.inverse[axis] } else { &self.forward[axis] };
        let n = psi.len_of(Axis(axis));
        let scale = 1.0 / n as f64;
        if axis == 2 && psi.is_standard_layout() {
            let data = psi.as_slice_mut().expect("contiguous");
            fft.process_with_scratch(data, &mut self.scratch);
            if inverse {
                data.iter_mut().for_each(|z| *z *= scale);
            }
            return;
        }
        self.lane.resize(n, Complex64::default());
        for mut lane in psi.lanes_mut(Axis(axis)) {
            for (b, z) in self.lane.iter_mut().zip(lane.iter()) {
                *b = *z;
            }
            fft.process_with_scratch(&mut self.lane, &mut self.scratch);
            if inverse {
                for (z, b) in lane.iter_mut().zip(&self.lane) {
                    *z = b * scale;
                }
            } else {
                for (z, b) in lane.iter_mut().zip(&self.lane) {
                    *z = *b;
                }
            }
        }
    }
}

/// The four split factors, in published order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Factor {
    /// `g1 (x − q)²`
    Coupling,
    /// `(p/m) λq`
    Streaming,
    /// `g3 (x − q) λp`
    Force,
    /// `k²/2M + g2 (k/M − p/m)²`
    Kinetic,
}

impl Factor {
    /// Required representation of each axis the factor depends on.
    fn requirements(self, h: &HamiltonianSpec) -> [Option<Space>; 3] {
        use Space::*;
        match self {
            Factor::Coupling => [Some(Coordinate), Some(Coordinate), None],
            Factor::Streaming => [None, Some(Frequency), Some(Coordinate)],
            Factor::Force => [Some(Coordinate), Some(Coordinate), Some(Frequency)],
            Factor::Kinetic => [Some(Frequency), None, (h.g2 != 0.0).then_some(Coordinate)],
        }
    }

    /// Generator value at one grid point; `v` holds the axis values in the
    /// representation given by `requirements`.
    fn value(self, h: &HamiltonianSpec, v: [f64; 3]) -> f64 {
        let [a, b, c] = v;
        match self {
            Factor::Coupling => h.g1 * (a - b).powi(2),
            Factor::Streaming => c / h.classical_mass * b,
            Factor::Force => h.g3 * (a - b) * c,
            Factor::Kinetic => {
                let rel = a / h.quantum_mass - c / h.classical_mass;
                a * a / (2.0 * h.quantum_mass) + h.g2 * rel * rel
            }
        }
    }
}

/// Factors of `steps` consecutive Strang steps, with identity factors
/// dropped and adjacent equal factors merged. Durations are in units of dt.
fn factor_sequence(h: &HamiltonianSpec, steps: usize) -> Vec<(Factor, f64)> {
    let mut half = Vec::new();
    if h.g1 != 0.0 {
        half.push(Factor::Coupling);
    }
    half.push(Factor::Streaming);
    if h.g3 != 0.0 {
        half.push(Factor::Force);
    }
    let mut one_step: Vec<(Factor, f64)> = half.iter().map(|&f| (f, 0.5)).collect();
    one_step.push((Factor::Kinetic, 1.0));
    one_step.extend(half.iter().rev().map(|&f| (f, 0.5)));

    let mut out: Vec<(Factor, f64)> = Vec::new();
    for _ in 0..steps {
        for &(f, tau) in &one_step {
            match out.last_mut() {
                Some((g, t)) if *g == f => *t += tau,
                _ => out.push((f, tau)),
            }
        }
    }
    out
}

/// Consecutive factors sharing one mixed representation.
#[derive(Clone, Debug, PartialEq)]
struct Group {
    spaces: [Option<Space>; 3],
    factors: Vec<(Factor, f64)>,
}

fn group_factors(h: &HamiltonianSpec, seq: &[(Factor, f64)]) -> Vec<Group> {
    let mut out: Vec<Group> = Vec::new();
    for &(f, tau) in seq {
        let req = f.requirements(h);
        let fits = out.last().is_some_and(|g| {
            (0..3).all(|a| match (g.spaces[a], req[a]) {
                (Some(x), Some(y)) => x == y,
                _ => true,
            })
        });
        if !fits {
            out.push(Group { spaces: [None; 3], factors: Vec::new() });
        }
        let g = out.last_mut().expect("nonempty");
        for a in 0..3 {
            if req[a].is_some() {
                g.spaces[a] = req[a];
            }
        }
        g.factors.push((f, tau));
    }
    out
}

type TableKey = Vec<(Factor, u64)>;

/// Evolution engine holding a state in a mixed representation.
struct Propagator {
    grid: GridSpec,
    h: HamiltonianSpec,
    psi: Array3<Complex64>,
    spaces: [Space; 3],
    transforms: Transforms,
    tables: HashMap<TableKey, Array3<Complex64>>,
}

impl Propagator {
    fn new(state: &HybridState, h: &HamiltonianSpec) -> Self {
        Propagator {
            grid: state.grid,
            h: *h,
            psi: state.psi.clone(),
            spaces: [Space::Coordinate; 3],
            transforms: Transforms::new(&state.grid),
            tables: HashMap::new(),
        }
    }

    fn set_space(&mut self, axis: usize, target: Space) {
        self.transforms.transform_axis(&mut self.psi, axis, self.spaces[axis], target);
        self.spaces[axis] = target;
    }

    fn restore_coordinates(&mut self) {
        for a in 0..3 {
            self.set_space(a, Space::Coordinate);
        }
    }

    fn coordinate_state(&self) -> Array3<Complex64> {
        let mut psi = self.psi.clone();
        let mut t = Transforms::new(&self.grid);
        for a in 0..3 {
            t.transform_axis(&mut psi, a, self.spaces[a], Space::Coordinate);
        }
        psi
    }

    fn advance(&mut self, steps: usize) {
        if steps == 0 {
            return;
        }
        let seq = factor_sequence(&self.h, steps);
        for group in group_factors(&self.h, &seq) {
            for a in 0..3 {
                if let Some(s) = group.spaces[a] {
                    self.set_space(a, s);
                }
            }
            let table = phase_table(&mut self.tables, &self.grid, &self.h, &group);
            Zip::from(&mut self.psi).and_broadcast(table).for_each(|z, &w| *z *= w);
        }
    }

    fn is_finite(&self) -> bool {
        self.psi.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

/// Combined phase of a group, cached by its factors and durations. Axes
/// the group does not depend on have length one.
fn phase_table<'a>(
    tables: &'a mut HashMap<TableKey, Array3<Complex64>>,
    grid: &GridSpec,
    h: &HamiltonianSpec,
    group: &Group,
) -> &'a Array3<Complex64> {
    let key: TableKey = group.factors.iter().map(|&(f, t)| (f, t.to_bits())).collect();
    tables.entry(key).or_insert_with(|| {
        let axes = grid.axes();
        let values: Vec<Vec<f64>> = (0..3)
            .map(|a| match group.spaces[a] {
                Some(Space::Coordinate) => axes[a].coordinates(),
                Some(Space::Frequency) => axes[a].frequencies(),
                None => vec![0.0],
            })
            .collect();
        let shape = (values[0].len(), values[1].len(), values[2].len());
        Array3::from_shape_fn(shape, |(i, j, l)| {
            let v = [values[0][i], values[1][j], values[2][l]];
            let phase: f64 = group.factors.iter().map(|&(f, tau)| f.value(h, v) * tau * grid.dt).sum();
            Complex64::from_polar(1.0, -phase)
        })
    })
}

/// One Strang step.
pub fn step(state: &HybridState, h: &HamiltonianSpec) -> Result<HybridState> {
    let mut s = state.clone();
    evolve(&mut s, h, 1, 1)?;
    Ok(s)
}

/// Observables at one instant.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub t: f64,
    pub norm: f64,
    pub x: f64,
    pub k: f64,
    pub q: f64,
    pub p: f64,
    /// `⟨k + p⟩`
    pub ktot: f64,
}

/// Recorded observables of one run.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct TimeSeries {
    pub rows: Vec<Record>,
    /// `⟨H⟩` at each recorded time, a diagnostic.
    pub energy: Vec<f64>,
}

pub const CSV_HEADER: &str = "t,norm,x,k,q,p,ktot";

impl TimeSeries {
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "{CSV_HEADER}")?;
        for r in &self.rows {
            writeln!(
                out,
                "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
                r.t, r.norm, r.x, r.k, r.q, r.p, r.ktot
            )?;
        }
        Ok(())
    }

    pub fn save_csv(&self, path: &Path) -> Result<()> {
        let f = std::fs::File::create(path)?;
        self.write_csv(std::io::BufWriter::new(f))
    }

    pub fn column(&self, f: impl Fn(&Record) -> f64) -> Vec<f64> {
        self.rows.iter().map(f).collect()
    }

    /// Largest deviation of a column from its first value.
    pub fn max_drift(&self, f: impl Fn(&Record) -> f64) -> f64 {
        let col = self.column(f);
        let first = col.first().copied().unwrap_or(0.0);
        col.iter().map(|v| (v - first).abs()).fold(0.0, f64::max)
    }
}

/// Evolve `steps` steps of the state's grid time step, recording at the
/// start, every `record_every` steps and at the end. The state is left in
/// coordinate representation.
pub fn evolve(state: &mut HybridState, h: &HamiltonianSpec, steps: usize, record_every: usize) -> Result<TimeSeries> {
    state.grid.validate()?;
    h.validate()?;
    let record_every = record_every.max(1);
    let mut prop = Propagator::new(state, h);
    let mut series = TimeSeries::default();
    let t0 = state.time;
    let push = |psi: Array3<Complex64>, t: f64, series: &mut TimeSeries| {
        let s = HybridState { psi, grid: state.grid, time: t };
        series.rows.push(observables(&s));
        series.energy.push(energy(&s, h));
    };
    push(prop.coordinate_state(), t0, &mut series);
    let mut done = 0;
    while done < steps {
        let n = record_every.min(steps - done);
        prop.advance(n);
        done += n;
        let t = t0 + done as f64 * state.grid.dt;
        if !prop.is_finite() {
            return Err(Error::NonFinite { step: done, time: t });
        }
        push(prop.coordinate_state(), t, &mut series);
    }
    prop.restore_coordinates();
    state.psi = prop.psi;
    state.time = t0 + steps as f64 * state.grid.dt;
    Ok(series)
}

/// Weighted average of `f` over `|a|²` with axis values from `values`.
fn average(a: &Array3<Complex64>, values: [&[f64]; 3], f: impl Fn(f64, f64, f64) -> f64) -> f64 {
    let mut num = 0.0;
    let mut den = 0.0;
    for ((i, j, l), z) in a.indexed_iter() {
        let w = z.norm_sqr();
        num += w * f(values[0][i], values[1][j], values[2][l]);
        den += w;
    }
    num / den
}

fn transformed(state: &HybridState, targets: [Space; 3]) -> Array3<Complex64> {
    let mut psi = state.psi.clone();
    let mut t = Transforms::new(&state.grid);
    for (a, s) in targets.into_iter().enumerate() {
        t.transform_axis(&mut psi, a, Space::Coordinate, s);
    }
    psi
}

/// Norm and normalized first moments.
pub fn observables(state: &HybridState) -> Record {
    let g = &state.grid;
    let (xs, qs, ps) = (g.x.coordinates(), g.q.coordinates(), g.p.coordinates());
    let norm = squared_sum(&state.psi) * g.cell_volume();
    let coords = [xs.as_slice(), qs.as_slice(), ps.as_slice()];
    let x = average(&state.psi, coords, |x, _, _| x);
    let q = average(&state.psi, coords, |_, q, _| q);
    let p = average(&state.psi, coords, |_, _, p| p);
    let kx = g.x.frequencies();
    let psi_k = transformed(state, [Space::Frequency, Space::Coordinate, Space::Coordinate]);
    let k = average(&psi_k, [kx.as_slice(), qs.as_slice(), ps.as_slice()], |k, _, _| k);
    Record { t: state.time, norm, x, k, q, p, ktot: k + p }
}

/// `⟨H⟩`, each term evaluated in the representation where it is diagonal.
pub fn energy(state: &HybridState, h: &HamiltonianSpec) -> f64 {
    use Space::*;
    let g = &state.grid;
    let (xs, qs, ps) = (g.x.coordinates(), g.q.coordinates(), g.p.coordinates());
    let (kx, kq, kp) = (g.x.frequencies(), g.q.frequencies(), g.p.frequencies());
    let psi = transformed(state, [Frequency, Coordinate, Coordinate]);
    let mut e = average(&psi, [&kx, &qs, &ps], |k, _, p| Factor::Kinetic.value(h, [k, 0.0, p]));
    let psi = transformed(state, [Coordinate, Frequency, Coordinate]);
    e += average(&psi, [&xs, &kq, &ps], |_, kq, p| Factor::Streaming.value(h, [0.0, kq, p]));
    if h.g1 != 0.0 {
        e += average(&state.psi, [&xs, &qs, &ps], |x, q, _| Factor::Coupling.value(h, [x, q, 0.0]));
    }
    if h.g3 != 0.0 {
        let psi = transformed(state, [Coordinate, Coordinate, Frequency]);
        e += average(&psi, [&xs, &qs, &kp], |x, q, kp| Factor::Force.value(h, [x, q, kp]));
    }
    e
}

/// Classical density `ρ(q, p) = ∫ |Ψ|² dx`.
pub fn classical_marginal(state: &HybridState) -> Array2<f64> {
    let dx = state.grid.x.spacing();
    state.psi.map(|z| z.norm_sqr()).sum_axis(Axis(0)) * dx
}

/// Probability in the outer 5% of each axis, as `[x, q, p]`.
pub fn tail_mass(state: &HybridState) -> [f64; 3] {
    let g = &state.grid;
    let dens = state.psi.map(|z| z.norm_sqr());
    let total: f64 = dens.sum();
    let mut out = [0.0; 3];
    for (a, axis) in g.axes().iter().enumerate() {
        let cut = 0.95 * axis.half_width;
        let coords = axis.coordinates();
        let outer: f64 =
            dens.axis_iter(Axis(a)).zip(&coords).filter(|(_, c)| c.abs() >= cut).map(|(s, _)| s.sum()).sum();
        out[a] = outer / total;
    }
    out
}

/// Free classical transport of an initial density along characteristics:
/// `ρ(q, p, t) = ρ0(q − p t/m, p)`, with `q` wrapped into the periodic
/// domain and `ρ0` evaluated directly.
pub fn characteristics_oracle(
    grid: &GridSpec,
    rho0: impl Fn(f64, f64) -> f64,
    classical_mass: f64,
    t: f64,
) -> Array2<f64> {
    let (qs, ps) = (grid.q.coordinates(), grid.p.coordinates());
    Array2::from_shape_fn((grid.q.n, grid.p.n), |(j, l)| {
        let p = ps[l];
        rho0(grid.q.wrap(qs[j] - p * t / classical_mass), p)
    })
}

/// Density of a product Gaussian packet in `(q, p)`, unit integral.
pub fn gaussian_density(packet: &PacketSpec) -> impl Fn(f64, f64) -> f64 {
    let pk = *packet;
    move |q, p| {
        let a = (q - pk.q0) / pk.sigma_q;
        let b = (p - pk.p0) / pk.sigma_p;
        (-(a * a + b * b) / 2.0).exp() / (2.0 * PI * pk.sigma_q * pk.sigma_p)
    }
}

/// `( ∫ (a − b)² dq dp )^½`
pub fn l2_distance(grid: &GridSpec, a: &Array2<f64>, b: &Array2<f64>) -> f64 {
    let s: f64 = Zip::from(a).and(b).fold(0.0, |acc, x, y| acc + (x - y).powi(2));
    (s * grid.q.spacing() * grid.p.spacing()).sqrt()
}

/// `( ∫ |a − b|² )^½` over the full grid.
pub fn state_distance(a: &HybridState, b: &HybridState) -> f64 {
    let s: f64 = Zip::from(&a.psi).and(&b.psi).fold(0.0, |acc, x, y| acc + (x - y).norm_sqr());
    (s * a.grid.cell_volume()).sqrt()
}

/// Input document of a simulation run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimulationConfig {
    pub grid: GridSpec,
    pub hamiltonian: HamiltonianSpec,
    pub packet: PacketSpec,
    #[serde(default = "default_record_every")]
    pub record_every: usize,
}

fn default_record_every() -> usize {
    1
}

impl SimulationConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn run(&self) -> Result<TimeSeries> {
        let mut state = init_gaussian(&self.grid, &self.packet)?;
        evolve(&mut state, &self.hamiltonian, self.grid.steps, self.record_every)
    }
}
