//! Nash equilibrium search over two-dimensional strategy charts.
//!
//! Each player's strategy is a point `(u, v)` of a chart: `u` is a polar-type
//! coordinate searched over `[u_min, u_max]`, `v` an azimuth on `[−π, π)`.
//! Payoffs must extend smoothly to all real `u` (both charts used here are
//! double covers of the Bloch sphere), so finite differences never need
//! one-sided stencils.
//!
//! [`nash_search`] runs alternating best response from seeded random starts.
//! Best-response cycles (games whose only equilibria are mixed) are handled
//! by a damped Newton solve of the first-order conditions from the same
//! start. Every candidate is scored by [`verify_nash`] and the smallest
//! residual wins.

use std::cmp::Ordering;
use std::f64::consts::{FRAC_PI_2, PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::correlation::{wrap_angle, CoordinatorParams};
use crate::error::{Error, Result};
use crate::payoff::{interference_gains, pc_table, DiagonalGame, PayoffTable, StrategyParams};

/// Central-difference step for gradients.
pub const GRADIENT_STEP: f64 = 1e-5;
/// Step for curvature probes; larger than [`GRADIENT_STEP`] to keep roundoff below the flatness threshold.
const CURVATURE_STEP: f64 = 1e-3;
/// `|∂²Π| below this` marks a coordinate as a flat direction.
pub const FLAT_CURVATURE: f64 = 1e-7;
/// Final payoffs within this distance count as the same equilibrium.
pub const AGREEMENT_TOL: f64 = 1e-6;

const MAX_REFINE_SWEEPS: usize = 100;
const GOLDEN_TOL: f64 = 1e-7;
const NEWTON_POLISH_STEPS: usize = 6;
const FIRST_ORDER_ITERS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub grid_density: usize,
    pub refine_iters: usize,
    pub restarts: usize,
    pub step_tol: f64,
    pub payoff_tol: f64,
    pub rng_seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            grid_density: 24,
            refine_iters: 200,
            restarts: 16,
            step_tol: 1e-9,
            payoff_tol: 1e-8,
            rng_seed: 0,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.grid_density < 4 {
            return Err(Error::InvalidParameter(format!(
                "grid_density must be >= 4, got {}",
                self.grid_density
            )));
        }
        if self.restarts < 1 {
            return Err(Error::InvalidParameter("restarts must be >= 1".into()));
        }
        if !(self.step_tol > 0.0 && self.payoff_tol > 0.0) {
            return Err(Error::InvalidParameter("tolerances must be positive".into()));
        }
        Ok(())
    }
}

/// A point of a player's strategy chart.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChartPoint {
    pub u: f64,
    pub v: f64,
}

impl ChartPoint {
    pub fn new(u: f64, v: f64) -> Self {
        Self { u, v }
    }

    fn coord(&self, k: usize) -> f64 {
        if k == 0 {
            self.u
        } else {
            self.v
        }
    }

    fn with(&self, k: usize, x: f64) -> Self {
        if k == 0 {
            Self { u: x, ..*self }
        } else {
            Self { v: x, ..*self }
        }
    }

    fn lex_cmp(&self, other: &Self) -> Ordering {
        self.u.total_cmp(&other.u).then(self.v.total_cmp(&other.v))
    }
}

/// Coordinate ranges and names of a chart; `v` always spans `[−π, π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Chart {
    pub u_min: f64,
    pub u_max: f64,
    pub names: [&'static str; 2],
}

impl Chart {
    /// Folds any real `u` back into `[u_min, u_max]`. Both charts are
    /// reflection-symmetric about their ends: `u → 2·u_end − u` together with
    /// `v → v + π` names the same strategy (up to a global phase).
    pub fn canonical(&self, p: ChartPoint) -> ChartPoint {
        let span = self.u_max - self.u_min;
        let mut u = (p.u - self.u_min).rem_euclid(2.0 * span);
        let mut v = p.v;
        if u > span {
            u = 2.0 * span - u;
            v += PI;
        }
        ChartPoint::new(self.u_min + u, wrap_angle(v))
    }

    fn grid(&self, density: usize) -> impl Iterator<Item = ChartPoint> + '_ {
        let du = (self.u_max - self.u_min) / (density - 1) as f64;
        let dv = TAU / density as f64;
        (0..density).flat_map(move |i| {
            (0..density).map(move |j| ChartPoint::new(self.u_min + i as f64 * du, -PI + j as f64 * dv))
        })
    }

    fn spacing(&self, density: usize) -> [f64; 2] {
        [(self.u_max - self.u_min) / (density - 1) as f64, TAU / density as f64]
    }

    fn random(&self, rng: &mut impl Rng) -> ChartPoint {
        ChartPoint::new(rng.gen_range(self.u_min..=self.u_max), rng.gen_range(-PI..PI))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Player {
    A,
    B,
}

impl Player {
    fn label(self) -> &'static str {
        match self {
            Player::A => "a",
            Player::B => "b",
        }
    }
}

/// A two-player game whose strategies are charted by [`ChartPoint`]s.
pub trait ChartedGame: Sync {
    type Strategy;

    fn chart(&self) -> Chart;

    /// `(Π_A, Π_B)` at the profile `(a, b)`.
    fn payoffs(&self, a: ChartPoint, b: ChartPoint) -> (f64, f64);

    fn strategy(&self, p: ChartPoint) -> Self::Strategy;

    /// Payoff of `player` when it plays `own` against `other`.
    fn payoff_of(&self, player: Player, own: ChartPoint, other: ChartPoint) -> f64 {
        match player {
            Player::A => self.payoffs(own, other).0,
            Player::B => self.payoffs(other, own).1,
        }
    }
}

/// A diagonal game played at fixed coordinator parameters, charted by
/// `(t, ξ)` with `a₀ = cos t`, `a₁ = sin t`.
#[derive(Debug, Clone)]
pub struct DiagonalQuantumGame {
    pc_a: PayoffTable,
    pc_b: PayoffTable,
    gains_a: (f64, f64),
    gains_b: (f64, f64),
}

impl DiagonalQuantumGame {
    pub fn new(game: &DiagonalGame, gamma: &CoordinatorParams) -> Result<Self> {
        Ok(Self {
            pc_a: pc_table(game.a(), gamma)?,
            pc_b: pc_table(game.b(), gamma)?,
            gains_a: interference_gains(game.a(), gamma),
            gains_b: interference_gains(game.b(), gamma),
        })
    }

    fn closed_form(pc: &PayoffTable, gains: (f64, f64), a: ChartPoint, b: ChartPoint) -> f64 {
        let (sa, ca) = a.u.sin_cos();
        let (sb, cb) = b.u.sin_cos();
        let (xa, ya) = ([ca * ca, sa * sa], [cb * cb, sb * sb]);
        let mut total = 0.0;
        for (i, x) in xa.iter().enumerate() {
            for (j, y) in ya.iter().enumerate() {
                total += x * y * pc.get(i, j);
            }
        }
        total - ca * sa * cb * sb * (gains.0 * (a.v + b.v).sin() + gains.1 * (a.v - b.v).sin())
    }
}

impl ChartedGame for DiagonalQuantumGame {
    type Strategy = StrategyParams;

    fn chart(&self) -> Chart {
        Chart { u_min: 0.0, u_max: FRAC_PI_2, names: ["t", "xi"] }
    }

    fn payoffs(&self, a: ChartPoint, b: ChartPoint) -> (f64, f64) {
        (
            Self::closed_form(&self.pc_a, self.gains_a, a, b),
            Self::closed_form(&self.pc_b, self.gains_b, a, b),
        )
    }

    fn strategy(&self, p: ChartPoint) -> StrategyParams {
        StrategyParams::from_angle(p.u, wrap_angle(p.v))
    }
}

fn golden_max(f: &impl Fn(f64) -> f64, lo: f64, hi: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > GOLDEN_TOL {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    if fc >= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Maximizes `f` on `[lo, hi]` near `x` (with value `fx`); returns the
/// improved point, or `x` itself when nothing beats `fx`.
fn refine_1d(f: &impl Fn(f64) -> f64, x: f64, fx: f64, lo: f64, hi: f64) -> (f64, f64) {
    let (mut best, mut best_f) = (x, fx);
    let (g, fg) = golden_max(f, lo, hi);
    if fg > best_f {
        best = g;
        best_f = fg;
    }
    // Newton polish on finite differences
    for _ in 0..NEWTON_POLISH_STEPS {
        let h1 = GRADIENT_STEP;
        let d1 = (f(best + h1) - f(best - h1)) / (2.0 * h1);
        let h2 = CURVATURE_STEP / 10.0;
        let d2 = (f(best + h2) - 2.0 * best_f + f(best - h2)) / (h2 * h2);
        if d2.is_nan() || d2 >= 0.0 || d1 == 0.0 {
            break;
        }
        let step = (-d1 / d2).clamp(-(hi - lo), hi - lo);
        let y = best + step;
        let fy = f(y);
        if fy > best_f {
            best = y;
            best_f = fy;
        } else {
            break;
        }
        if step.abs() < 1e-15 {
            break;
        }
    }
    (best, best_f)
}

fn grid_max<G: ChartedGame + ?Sized>(
    game: &G,
    player: Player,
    other: ChartPoint,
    density: usize,
) -> (ChartPoint, f64) {
    let mut best = None::<(ChartPoint, f64)>;
    for p in game.chart().grid(density) {
        let value = game.payoff_of(player, p, other);
        // strict comparison keeps the lexicographically smallest grid point on ties
        if best.is_none_or(|(_, b)| value > b) {
            best = Some((p, value));
        }
    }
    best.expect("grid is non-empty")
}

/// Global maximization of one player's payoff against a fixed opponent:
/// grid sweep followed by coordinate-wise golden-section refinement.
/// The returned value is never below the grid maximum.
pub fn best_response<G: ChartedGame + ?Sized>(
    game: &G,
    player: Player,
    other: ChartPoint,
    cfg: &SearchConfig,
) -> (ChartPoint, f64) {
    let chart = game.chart();
    let (mut p, mut value) = grid_max(game, player, other, cfg.grid_density);
    let spacing = chart.spacing(cfg.grid_density);
    let mut width = spacing;
    for _ in 0..MAX_REFINE_SWEEPS {
        let mut moved = 0.0f64;
        for k in 0..2 {
            let x = p.coord(k);
            let f = |y: f64| game.payoff_of(player, p.with(k, y), other);
            let (y, fy) = refine_1d(&f, x, value, x - width[k], x + width[k]);
            if fy > value {
                moved = moved.max((y - x).abs());
                p = p.with(k, y);
                value = fy;
            }
            width[k] = (8.0 * (y - x).abs()).clamp(1e-4, spacing[k]);
        }
        if moved < cfg.step_tol {
            break;
        }
    }
    (chart.canonical(p), value)
}

/// First-order certificate for a candidate profile.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NashCheck {
    /// `max(gradient, deviation_gain)`.
    pub residual: f64,
    /// Largest own-coordinate gradient component over both players.
    pub gradient: f64,
    /// Best unilateral improvement found on the grid.
    pub deviation_gain: f64,
    /// Own coordinates along which the payoff curvature vanishes, e.g. `"a.t"`.
    pub flat_directions: Vec<String>,
}

/// Residual of the equilibrium conditions at `(a, b)`: central-difference
/// gradients of each player's own payoff (step `eps`) and the best
/// unilateral gain on a grid of `cfg.grid_density²` points.
pub fn verify_nash<G: ChartedGame + ?Sized>(
    game: &G,
    a: ChartPoint,
    b: ChartPoint,
    cfg: &SearchConfig,
    eps: f64,
) -> NashCheck {
    let chart = game.chart();
    let mut gradient = 0.0f64;
    let mut deviation_gain = 0.0f64;
    let mut flat_directions = Vec::new();
    for (player, own, other) in [(Player::A, a, b), (Player::B, b, a)] {
        let here = game.payoff_of(player, own, other);
        for k in 0..2 {
            let f = |y: f64| game.payoff_of(player, own.with(k, y), other);
            let x = own.coord(k);
            let g = (f(x + eps) - f(x - eps)) / (2.0 * eps);
            gradient = gradient.max(g.abs());
            let h = CURVATURE_STEP;
            let curvature = (f(x + h) - 2.0 * here + f(x - h)) / (h * h);
            if curvature.abs() < FLAT_CURVATURE {
                flat_directions.push(format!("{}.{}", player.label(), chart.names[k]));
            }
        }
        let (_, best) = grid_max(game, player, other, cfg.grid_density);
        deviation_gain = deviation_gain.max(best - here);
    }
    NashCheck {
        residual: gradient.max(deviation_gain),
        gradient,
        deviation_gain,
        flat_directions,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NashResult<S> {
    pub a_star: S,
    pub b_star: S,
    pub a_point: ChartPoint,
    pub b_point: ChartPoint,
    pub payoff_a: f64,
    pub payoff_b: f64,
    pub residual: f64,
    pub converged: bool,
    pub restarts_agreeing: usize,
    pub flat_directions: Vec<String>,
    /// Distinct certified equilibrium payoff pairs seen across restarts.
    pub observed_equilibria: Vec<(f64, f64)>,
}

#[derive(Debug, Clone)]
struct Candidate {
    a: ChartPoint,
    b: ChartPoint,
    payoffs: (f64, f64),
    check: NashCheck,
}

impl Candidate {
    fn new<G: ChartedGame + ?Sized>(game: &G, a: ChartPoint, b: ChartPoint, cfg: &SearchConfig) -> Self {
        let chart = game.chart();
        let (a, b) = (chart.canonical(a), chart.canonical(b));
        Self {
            a,
            b,
            payoffs: game.payoffs(a, b),
            check: verify_nash(game, a, b, cfg, GRADIENT_STEP),
        }
    }

    /// Certified candidates tie on residual; ties go to the smallest coordinates.
    fn order(&self, other: &Self, tol: f64) -> Ordering {
        let key = |c: &Self| if c.check.residual <= tol { 0.0 } else { c.check.residual };
        key(self)
            .total_cmp(&key(other))
            .then_with(|| self.a.lex_cmp(&other.a))
            .then_with(|| self.b.lex_cmp(&other.b))
    }
}

fn alternate_best_responses<G: ChartedGame + ?Sized>(
    game: &G,
    mut a: ChartPoint,
    mut b: ChartPoint,
    cfg: &SearchConfig,
) -> (ChartPoint, ChartPoint, bool) {
    for _ in 0..cfg.refine_iters {
        let before_a = game.payoff_of(Player::A, a, b);
        let (next_a, value_a) = best_response(game, Player::A, b, cfg);
        let gain_a = value_a - before_a;
        if gain_a > 0.0 {
            a = next_a;
        }
        let before_b = game.payoff_of(Player::B, b, a);
        let (next_b, value_b) = best_response(game, Player::B, a, cfg);
        let gain_b = value_b - before_b;
        if gain_b > 0.0 {
            b = next_b;
        }
        if gain_a < cfg.payoff_tol && gain_b < cfg.payoff_tol {
            return (a, b, true);
        }
    }
    (a, b, false)
}

/// Own-coordinate gradients of both players, `(∂_a Π_A, ∂_b Π_B)`.
fn first_order_field<G: ChartedGame + ?Sized>(game: &G, z: &[f64; 4]) -> [f64; 4] {
    let a = ChartPoint::new(z[0], z[1]);
    let b = ChartPoint::new(z[2], z[3]);
    let h = GRADIENT_STEP;
    let mut out = [0.0; 4];
    for k in 0..2 {
        out[k] = (game.payoff_of(Player::A, a.with(k, a.coord(k) + h), b)
            - game.payoff_of(Player::A, a.with(k, a.coord(k) - h), b))
            / (2.0 * h);
        out[2 + k] = (game.payoff_of(Player::B, b.with(k, b.coord(k) + h), a)
            - game.payoff_of(Player::B, b.with(k, b.coord(k) - h), a))
            / (2.0 * h);
    }
    out
}

fn norm_sqr(v: &[f64; 4]) -> f64 {
    v.iter().map(|x| x * x).sum()
}

/// Gaussian elimination with partial pivoting on a 4×4 system.
fn solve4(mut m: [[f64; 4]; 4], mut rhs: [f64; 4]) -> Option<[f64; 4]> {
    for col in 0..4 {
        let pivot = (col..4).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))?;
        if m[pivot][col].abs() < 1e-300 {
            return None;
        }
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        for row in col + 1..4 {
            let factor = m[row][col] / m[col][col];
            let pivot_row = m[col];
            for (dst, src) in m[row][col..].iter_mut().zip(&pivot_row[col..]) {
                *dst -= factor * src;
            }
            rhs[row] -= factor * rhs[col];
        }
    }
    let mut x = [0.0; 4];
    for row in (0..4).rev() {
        let tail: f64 = (row + 1..4).map(|k| m[row][k] * x[k]).sum();
        x[row] = (rhs[row] - tail) / m[row][row];
    }
    Some(x)
}

/// Levenberg–Marquardt on the first-order conditions, started at `(a, b)`.
/// Finds interior stationary profiles that best-response cycles circle around.
fn solve_first_order<G: ChartedGame + ?Sized>(game: &G, a: ChartPoint, b: ChartPoint) -> (ChartPoint, ChartPoint) {
    let mut z = [a.u, a.v, b.u, b.v];
    let mut field = first_order_field(game, &z);
    let mut cost = norm_sqr(&field);
    let mut damping = 1e-3;
    let h = 1e-4;
    for _ in 0..FIRST_ORDER_ITERS {
        if cost < 1e-30 {
            break;
        }
        let mut jac = [[0.0; 4]; 4];
        for k in 0..4 {
            let (mut up, mut down) = (z, z);
            up[k] += h;
            down[k] -= h;
            let (fu, fd) = (first_order_field(game, &up), first_order_field(game, &down));
            for r in 0..4 {
                jac[r][k] = (fu[r] - fd[r]) / (2.0 * h);
            }
        }
        let mut normal = [[0.0; 4]; 4];
        let mut rhs = [0.0; 4];
        for i in 0..4 {
            for j in 0..4 {
                normal[i][j] = (0..4).map(|r| jac[r][i] * jac[r][j]).sum();
            }
            rhs[i] = -(0..4).map(|r| jac[r][i] * field[r]).sum::<f64>();
        }
        let mut improved = false;
        while damping < 1e12 {
            let mut damped = normal;
            for (i, row) in damped.iter_mut().enumerate() {
                row[i] += damping * (1.0 + normal[i][i]);
            }
            if let Some(step) = solve4(damped, rhs) {
                let trial = [z[0] + step[0], z[1] + step[1], z[2] + step[2], z[3] + step[3]];
                let trial_field = first_order_field(game, &trial);
                let trial_cost = norm_sqr(&trial_field);
                if trial_cost < cost {
                    z = trial;
                    field = trial_field;
                    cost = trial_cost;
                    damping = (damping / 3.0).max(1e-15);
                    improved = true;
                    break;
                }
            }
            damping *= 4.0;
        }
        if !improved {
            break;
        }
    }
    (ChartPoint::new(z[0], z[1]), ChartPoint::new(z[2], z[3]))
}

fn run_restart<G: ChartedGame + ?Sized>(game: &G, cfg: &SearchConfig, index: usize) -> (Candidate, bool) {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    rng.set_stream(index as u64);
    let chart = game.chart();
    let (a0, b0) = (chart.random(&mut rng), chart.random(&mut rng));

    let (a, b, settled) = alternate_best_responses(game, a0, b0, cfg);
    let candidate = Candidate::new(game, a, b, cfg);
    if settled && candidate.check.residual <= cfg.payoff_tol {
        return (candidate, true);
    }
    let (fa, fb) = solve_first_order(game, a0, b0);
    let stationary = Candidate::new(game, fa, fb, cfg);
    if stationary.order(&candidate, cfg.payoff_tol) == Ordering::Less {
        (stationary, true)
    } else {
        (candidate, settled)
    }
}

/// Nash equilibrium search by alternating best response from
/// `cfg.restarts` seeded starts. Restart `k` draws its start from the
/// ChaCha stream `k` of `cfg.rng_seed`, so results do not depend on thread
/// scheduling.
pub fn nash_search<G: ChartedGame>(game: &G, cfg: &SearchConfig) -> Result<NashResult<G::Strategy>> {
    cfg.validate()?;
    let runs: Vec<(Candidate, bool)> = (0..cfg.restarts)
        .into_par_iter()
        .map(|k| run_restart(game, cfg, k))
        .collect();
    let best = runs
        .iter()
        .map(|(c, _)| c)
        .min_by(|x, y| x.order(y, cfg.payoff_tol))
        .expect("at least one restart")
        .clone();
    let restarts_agreeing = runs
        .iter()
        .filter(|(c, _)| {
            (c.payoffs.0 - best.payoffs.0).abs() <= AGREEMENT_TOL
                && (c.payoffs.1 - best.payoffs.1).abs() <= AGREEMENT_TOL
        })
        .count();
    let mut observed_equilibria: Vec<(f64, f64)> = Vec::new();
    for (c, _) in &runs {
        if c.check.residual > cfg.payoff_tol {
            continue;
        }
        let seen = observed_equilibria.iter().any(|p| {
            (p.0 - c.payoffs.0).abs() <= AGREEMENT_TOL && (p.1 - c.payoffs.1).abs() <= AGREEMENT_TOL
        });
        if !seen {
            observed_equilibria.push(c.payoffs);
        }
    }
    observed_equilibria.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.total_cmp(&y.1)));
    Ok(NashResult {
        a_star: game.strategy(best.a),
        b_star: game.strategy(best.b),
        a_point: best.a,
        b_point: best.b,
        payoff_a: best.payoffs.0,
        payoff_b: best.payoffs.1,
        residual: best.check.residual,
        converged: best.check.residual <= cfg.payoff_tol,
        restarts_agreeing,
        flat_directions: best.check.flat_directions,
        observed_equilibria,
    })
}

/// Nash search for a diagonal game at coordinator parameters `gamma`.
pub fn diagonal_nash_search(
    game: &DiagonalGame,
    gamma: &CoordinatorParams,
    cfg: &SearchConfig,
) -> Result<NashResult<StrategyParams>> {
    nash_search(&DiagonalQuantumGame::new(game, gamma)?, cfg)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EquilibriumKind {
    Pure,
    Mixed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassicalEquilibrium {
    pub x: [f64; 2],
    pub y: [f64; 2],
    pub payoff_a: f64,
    pub payoff_b: f64,
    pub kind: EquilibriumKind,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassicalSolution {
    pub equilibria: Vec<ClassicalEquilibrium>,
    /// Some player has a best-response tie at a pure profile, so equilibria
    /// may form a continuum; the list then holds representatives only.
    pub degenerate: bool,
}

const CLASSICAL_TIE_TOL: f64 = 1e-12;

/// Support enumeration for a 2×2 bimatrix game.
pub fn classical_nash_2x2(a: &PayoffTable, b: &PayoffTable) -> Result<ClassicalSolution> {
    if a.n() != 2 || b.n() != 2 {
        return Err(Error::UnsupportedDimension(a.n().max(b.n())));
    }
    let tie = |p: f64, q: f64| (p - q).abs() <= CLASSICAL_TIE_TOL;
    let degenerate = tie(a.get(0, 0), a.get(1, 0))
        || tie(a.get(0, 1), a.get(1, 1))
        || tie(b.get(0, 0), b.get(0, 1))
        || tie(b.get(1, 0), b.get(1, 1));

    let mut equilibria = Vec::new();
    let unit = |k: usize| if k == 0 { [1.0, 0.0] } else { [0.0, 1.0] };
    for i in 0..2 {
        for j in 0..2 {
            let a_best = a.get(i, j) >= a.get(1 - i, j) - CLASSICAL_TIE_TOL;
            let b_best = b.get(i, j) >= b.get(i, 1 - j) - CLASSICAL_TIE_TOL;
            if a_best && b_best {
                equilibria.push(ClassicalEquilibrium {
                    x: unit(i),
                    y: unit(j),
                    payoff_a: a.get(i, j),
                    payoff_b: b.get(i, j),
                    kind: EquilibriumKind::Pure,
                });
            }
        }
    }

    // x makes B indifferent between columns, y makes A indifferent between rows
    let den_b = b.get(0, 0) - b.get(1, 0) - b.get(0, 1) + b.get(1, 1);
    let den_a = a.get(0, 0) - a.get(0, 1) - a.get(1, 0) + a.get(1, 1);
    if den_a.abs() > CLASSICAL_TIE_TOL && den_b.abs() > CLASSICAL_TIE_TOL {
        let p = (b.get(1, 1) - b.get(1, 0)) / den_b;
        let q = (a.get(1, 1) - a.get(0, 1)) / den_a;
        let inside = |v: f64| (0.0..=1.0).contains(&v);
        if inside(p) && inside(q) {
            let (x, y) = ([p, 1.0 - p], [q, 1.0 - q]);
            let duplicate = equilibria
                .iter()
                .any(|e| (e.x[0] - p).abs() < 1e-12 && (e.y[0] - q).abs() < 1e-12);
            if !duplicate {
                equilibria.push(ClassicalEquilibrium {
                    x,
                    y,
                    payoff_a: crate::payoff::classical_payoff(a, &x, &y)?,
                    payoff_b: crate::payoff::classical_payoff(b, &x, &y)?,
                    kind: if p == 0.0 || p == 1.0 || q == 0.0 || q == 1.0 {
                        EquilibriumKind::Pure
                    } else {
                        EquilibriumKind::Mixed
                    },
                });
            }
        }
    }
    Ok(ClassicalSolution { equilibria, degenerate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::payoff::payoff_analytic;

    fn pd() -> PayoffTable {
        PayoffTable::from_rows(&[vec![3.0, 0.0], vec![5.0, 1.0]]).unwrap()
    }

    fn quick() -> SearchConfig {
        SearchConfig { restarts: 4, ..SearchConfig::default() }
    }

    #[test]
    fn config_validation() {
        assert!(SearchConfig::default().validate().is_ok());
        assert!(SearchConfig { grid_density: 3, ..SearchConfig::default() }.validate().is_err());
        assert!(SearchConfig { restarts: 0, ..SearchConfig::default() }.validate().is_err());
        assert!(SearchConfig { payoff_tol: 0.0, ..SearchConfig::default() }.validate().is_err());
    }

    #[test]
    fn closed_form_chart_matches_payoff_module() {
        let game = DiagonalGame::new(pd(), PayoffTable::from_rows(&[vec![2.0, -1.0], vec![0.5, 4.0]]).unwrap())
            .unwrap();
        let gamma = CoordinatorParams::new(0.7, -1.2).unwrap();
        let q = DiagonalQuantumGame::new(&game, &gamma).unwrap();
        let (a, b) = (ChartPoint::new(0.4, 1.1), ChartPoint::new(1.2, -2.0));
        let (pa, pb) = q.payoffs(a, b);
        let (sa, sb) = (q.strategy(a), q.strategy(b));
        assert!((pa - payoff_analytic(game.a(), &sa, &sb, &gamma).unwrap().total).abs() < 1e-13);
        assert!((pb - payoff_analytic(game.b(), &sa, &sb, &gamma).unwrap().total).abs() < 1e-13);
    }

    #[test]
    fn golden_section_finds_interior_maximum() {
        let f = |x: f64| -(x - 0.3).powi(2);
        let (x, _) = golden_max(&f, -1.0, 2.0);
        assert!((x - 0.3).abs() < 1e-7);
        let (x, fx) = refine_1d(&f, -1.0, f(-1.0), -1.0, 2.0);
        assert!((x - 0.3).abs() < 1e-10 && fx <= 0.0);
    }

    #[test]
    fn dominant_strategy_is_best_response_at_zero_gamma() {
        let game = DiagonalGame::symmetric(pd());
        let q = DiagonalQuantumGame::new(&game, &CoordinatorParams::zero()).unwrap();
        for b in [ChartPoint::new(0.0, 0.0), ChartPoint::new(0.9, 1.0), ChartPoint::new(FRAC_PI_2, -2.0)] {
            let (p, _) = best_response(&q, Player::A, b, &quick());
            assert!((p.u - FRAC_PI_2).abs() < 1e-9, "{p:?}");
        }
    }

    #[test]
    fn flat_game_best_response_and_nash() {
        let flat = PayoffTable::from_fn(2, |_, _| 2.5).unwrap();
        let game = DiagonalGame::new(flat.clone(), flat).unwrap();
        let q = DiagonalQuantumGame::new(&game, &CoordinatorParams::new(0.8, 0.3).unwrap()).unwrap();
        let (_, value) = best_response(&q, Player::A, ChartPoint::new(0.5, 0.5), &quick());
        assert!((value - 2.5).abs() < 1e-14);
        let result = nash_search(&q, &quick()).unwrap();
        assert!(result.converged && result.residual < 1e-12);
        assert_eq!(result.flat_directions.len(), 4);
    }

    #[test]
    fn best_response_beats_random_sampling() {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..5 {
            let a = PayoffTable::from_fn(2, |_, _| rng.gen_range(-3.0..3.0)).unwrap();
            let b = PayoffTable::from_fn(2, |_, _| rng.gen_range(-3.0..3.0)).unwrap();
            let game = DiagonalGame::new(a, b).unwrap();
            let q = DiagonalQuantumGame::new(&game, &CoordinatorParams::new(FRAC_PI_2, 0.0).unwrap()).unwrap();
            let other = q.chart().random(&mut rng);
            let (_, best) = best_response(&q, Player::B, other, &quick());
            let (_, grid) = grid_max(&q, Player::B, other, 24);
            assert!(best >= grid);
            for _ in 0..10_000 {
                let p = q.chart().random(&mut rng);
                let v = q.payoff_of(Player::B, p, other);
                assert!(v <= best + 1e-12, "{v} > {best} at {p:?}, other {other:?}");
            }
        }
    }

    #[test]
    fn verify_nash_prisoners_dilemma_profiles() {
        let game = DiagonalGame::symmetric(pd());
        let q = DiagonalQuantumGame::new(&game, &CoordinatorParams::zero()).unwrap();
        let cfg = SearchConfig::default();
        let defect = ChartPoint::new(FRAC_PI_2, 0.0);
        let cooperate = ChartPoint::new(0.0, 0.0);
        assert!(verify_nash(&q, defect, defect, &cfg, 1e-5).residual < 1e-8);
        let check = verify_nash(&q, cooperate, cooperate, &cfg, 1e-5);
        assert!((check.residual - 2.0).abs() < 1e-9, "{check:?}");
    }

    #[test]
    fn classical_oracle_examples() {
        let sol = classical_nash_2x2(&pd(), &pd().swapped()).unwrap();
        assert!(!sol.degenerate);
        assert_eq!(sol.equilibria.len(), 1);
        let e = &sol.equilibria[0];
        assert_eq!((e.x, e.y, e.payoff_a, e.payoff_b), ([0.0, 1.0], [0.0, 1.0], 1.0, 1.0));

        let pennies = PayoffTable::from_rows(&[vec![1.0, -1.0], vec![-1.0, 1.0]]).unwrap();
        let minus = PayoffTable::from_fn(2, |i, j| -pennies.get(i, j)).unwrap();
        let sol = classical_nash_2x2(&pennies, &minus).unwrap();
        assert_eq!(sol.equilibria.len(), 1);
        assert_eq!(sol.equilibria[0].kind, EquilibriumKind::Mixed);
        assert_eq!((sol.equilibria[0].x, sol.equilibria[0].y), ([0.5, 0.5], [0.5, 0.5]));

        let zero = PayoffTable::from_fn(2, |_, _| 0.0).unwrap();
        let sol = classical_nash_2x2(&zero, &zero).unwrap();
        assert!(sol.degenerate);
        assert_eq!(sol.equilibria.len(), 4);

        // coordination: two pure equilibria and one mixed
        let coord = PayoffTable::from_rows(&[vec![2.0, 0.0], vec![0.0, 1.0]]).unwrap();
        let sol = classical_nash_2x2(&coord, &coord).unwrap();
        assert_eq!(sol.equilibria.len(), 3);
    }

    #[test]
    fn nash_search_prisoners_dilemma_at_zero_gamma() {
        let game = DiagonalGame::symmetric(pd());
        let r = diagonal_nash_search(&game, &CoordinatorParams::zero(), &quick()).unwrap();
        assert!(r.converged);
        assert!((r.payoff_a - 1.0).abs() < 1e-9 && (r.payoff_b - 1.0).abs() < 1e-9);
        assert!(r.a_star.a1 > 1.0 - 1e-9 && r.b_star.a1 > 1.0 - 1e-9);
    }

    #[test]
    fn nash_search_finds_mixed_equilibrium_of_matching_pennies() {
        let pennies = PayoffTable::from_rows(&[vec![1.0, -1.0], vec![-1.0, 1.0]]).unwrap();
        let minus = PayoffTable::from_fn(2, |i, j| -pennies.get(i, j)).unwrap();
        let game = DiagonalGame::new(pennies, minus).unwrap();
        let r = diagonal_nash_search(&game, &CoordinatorParams::zero(), &SearchConfig::default()).unwrap();
        assert!(r.converged, "{r:?}");
        assert!(r.payoff_a.abs() < 1e-6 && r.payoff_b.abs() < 1e-6);
        assert!((r.a_star.probabilities()[0] - 0.5).abs() < 1e-6);
    }

    #[test]
    fn nash_search_is_deterministic() {
        let game = DiagonalGame::new(
            pd(),
            PayoffTable::from_rows(&[vec![1.0, 4.0], vec![2.0, 0.0]]).unwrap(),
        )
        .unwrap();
        let gamma = CoordinatorParams::new(0.9, 0.4).unwrap();
        let cfg = SearchConfig { rng_seed: 99, ..quick() };
        let r1 = diagonal_nash_search(&game, &gamma, &cfg).unwrap();
        let r2 = diagonal_nash_search(&game, &gamma, &cfg).unwrap();
        assert_eq!(format!("{r1:?}"), format!("{r2:?}"));
    }

    #[test]
    fn solve4_matches_known_system() {
        let m = [[4.0, 1.0, 0.0, 0.0], [1.0, 3.0, 1.0, 0.0], [0.0, 1.0, 2.0, 1.0], [0.0, 0.0, 1.0, 5.0]];
        let x = [1.0, -2.0, 0.5, 3.0];
        let rhs: Vec<f64> = m.iter().map(|r| r.iter().zip(&x).map(|(a, b)| a * b).sum()).collect();
        let got = solve4(m, [rhs[0], rhs[1], rhs[2], rhs[3]]).unwrap();
        for k in 0..4 {
            assert!((got[k] - x[k]).abs() < 1e-12);
        }
        assert!(solve4([[0.0; 4]; 4], [1.0; 4]).is_none());
    }

    #[test]
    fn half_altruistic_member_matches_classical_play() {
        use crate::payoff::altruism_mixture;
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        let gamma = CoordinatorParams::new(std::f64::consts::FRAC_PI_2, 0.0).unwrap();
        for _ in 0..10 {
            // prisoner's-dilemma ordering T > R > P > S
            let mut v: Vec<f64> = (0..4).map(|_| rng.gen_range(-5.0..5.0)).collect();
            v.sort_by(f64::total_cmp);
            let (s, p, r, t) = (v[0], v[1], v[2], v[3]);
            let game = DiagonalGame::symmetric(PayoffTable::from_rows(&[vec![r, s], vec![t, p]]).unwrap());
            let result = diagonal_nash_search(&game, &gamma, &SearchConfig::default()).unwrap();
            assert!(result.converged, "{result:?}");
            let (ea, eb) = altruism_mixture(&game, gamma.gamma1()).unwrap();
            let oracle = classical_nash_2x2(&ea, &eb).unwrap();
            let matched = oracle.equilibria.iter().any(|e| {
                (e.payoff_a - result.payoff_a).abs() < 1e-6 && (e.payoff_b - result.payoff_b).abs() < 1e-6
            });
            assert!(matched, "{result:?} vs {oracle:?}");
        }
    }
}
