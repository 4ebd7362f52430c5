"""Game-theoretic analysis on top of the engine.

Best-response search (coarse grid plus coordinate-wise refinement),
Nash-equilibrium verification via the unilateral-deviation inequality,
Pareto comparison, the closed-form 6-player payoff formulas, the
N-player entangler-payoff conjecture, and parameter sweeps that
produce figure-ready tables.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from .game import (
    GameSpec,
    StrategyParams,
    StrategyProfile,
    expected_payoff,
    final_state,
    minority_projector,
)
from .states import InitialStateRecipe, StateFamily, build_pure

NASH_TOLERANCE = 1e-4
REFINEMENT_MIN_STEP = 1e-6

PARETO_MARGIN = 1e-10


def ne_strategy(n: int) -> StrategyParams:
    """The known symmetric equilibrium strategy M(pi/2, -pi/2n, pi/2n)."""
    return StrategyParams(math.pi / 2, -math.pi / (2 * n), math.pi / (2 * n))


def entangler_ne_strategy(n: int) -> StrategyParams:
    """Equilibrium strategy for the exponential-entangler initial state.

    That state carries a relative phase i on |1...1>; shifting the GHZ
    equilibrium phases by pi/(4n) absorbs it, giving
    M(pi/2, -pi/4n, pi/4n). At gamma=pi/2 this reproduces the GHZ
    equilibrium payoff exactly.
    """
    return StrategyParams(math.pi / 2, -math.pi / (4 * n), math.pi / (4 * n))


def payoff_formula_eq8(x: float) -> float:
    """6-player noiseless equilibrium payoff: 1/4 + x^2/16."""
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x must be in [0, 1], got {x}")
    return 0.25 + x**2 / 16


def payoff_formula_eq9(x: float, f: float) -> float:
    """6-player equilibrium payoff with noise: (3 + f + f x^2)/16."""
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x must be in [0, 1], got {x}")
    if not 0.0 <= f <= 1.0:
        raise ValueError(f"f must be in [0, 1], got {f}")
    return (3 + f + f * x**2) / 16


def conjecture_eq14(gamma: float, payoff_classical: float, payoff_quantum: float) -> float:
    """Conjectured N-player payoff as a function of the entangler angle."""
    if not 0.0 <= gamma <= math.pi / 2:
        raise ValueError(f"gamma must be in [0, pi/2], got {gamma}")
    for name, v in (("payoff_classical", payoff_classical), ("payoff_quantum", payoff_quantum)):
        if not 0.0 <= v <= 1.0:
            raise ValueError(f"{name} must be in [0, 1], got {v}")
    c, s = math.cos(gamma / 2), math.sin(gamma / 2)
    return (payoff_classical - payoff_quantum / 2) * (c - s) ** 2 + (
        payoff_quantum / 2
    ) * (c + s) ** 2


@dataclass(frozen=True)
class DeviationReport:
    """Outcome of a best-response search for one player."""

    player: int
    candidate: StrategyProfile
    best_deviation: StrategyParams
    best_deviation_payoff: float
    equilibrium_payoff: float
    max_gain: float
    is_nash_within_tol: bool
    grid_resolution: int
    refinement_steps: int


@dataclass(frozen=True)
class SweepRow:
    """One gridpoint of a sweep or surface; absent axes stay None."""

    x: Optional[float] = None
    f: Optional[float] = None
    gamma: Optional[float] = None
    theta: Optional[float] = None
    alpha: Optional[float] = None
    payoff_simulated: float = 0.0
    payoff_analytic: Optional[float] = None
    abs_error: Optional[float] = None


class ParetoResult(enum.Enum):
    A_DOMINATES = "ADominates"
    B_DOMINATES = "BDominates"
    EQUAL = "Equal"
    INCOMPARABLE = "Incomparable"


def pareto_compare(payoffs_a: Sequence[float], payoffs_b: Sequence[float]) -> ParetoResult:
    """Componentwise dominance with a small strictness margin."""
    a = np.asarray(payoffs_a, dtype=float)
    b = np.asarray(payoffs_b, dtype=float)
    if a.shape != b.shape:
        raise ValueError("payoff vectors differ in length")
    diff = a - b
    if np.all(np.abs(diff) <= PARETO_MARGIN):
        return ParetoResult.EQUAL
    if np.all(diff >= -PARETO_MARGIN):
        return ParetoResult.A_DOMINATES
    if np.all(diff <= PARETO_MARGIN):
        return ParetoResult.B_DOMINATES
    return ParetoResult.INCOMPARABLE


def _su2_batch(thetas: np.ndarray, alphas: np.ndarray, betas: np.ndarray) -> np.ndarray:
    """Stack of strategy matrices, shape (G, 2, 2)."""
    c = np.cos(thetas / 2)
    s = np.sin(thetas / 2)
    ea = np.exp(1j * alphas)
    eb = np.exp(1j * betas)
    m = np.empty((len(thetas), 2, 2), dtype=complex)
    m[:, 0, 0] = ea * c
    m[:, 0, 1] = 1j * eb * s
    m[:, 1, 0] = 1j * s / eb
    m[:, 1, 1] = c / ea
    return m


class _DeviationEvaluator:
    """Batched payoffs of one player deviating while the rest stay fixed.

    The other players' unitaries are applied once up front; each
    candidate deviation then costs a single 2 x 2^(n-1) product.
    """

    def __init__(self, spec: GameSpec, candidate: StrategyProfile, player: int):
        n = spec.n_players
        if len(candidate) != n:
            raise ValueError("profile length does not match player count")
        if not 1 <= player <= n:
            raise ValueError(f"player {player} out of range")
        psi = build_pure(spec.recipe)
        partial = final_state(psi, candidate.replace(player, StrategyParams(0, 0, 0)))
        q = player - 1
        self._block = (
            np.moveaxis(partial.amplitudes.reshape([2] * n), q, 0).reshape(2, -1)
        )
        proj = minority_projector(n, player)
        mask = np.zeros(2**n, dtype=bool)
        mask[list(proj.winning_indices)] = True
        self._mask = np.moveaxis(mask.reshape([2] * n), q, 0).reshape(-1)
        self._f = spec.recipe.f
        self._mixed_floor = (1 - self._f) * len(proj.winning_indices) / 2**n

    def payoffs(self, thetas, alphas, betas) -> np.ndarray:
        mats = _su2_batch(
            np.atleast_1d(np.asarray(thetas, dtype=float)),
            np.atleast_1d(np.asarray(alphas, dtype=float)),
            np.atleast_1d(np.asarray(betas, dtype=float)),
        )
        amps = mats @ self._block
        probs = np.abs(amps.reshape(len(mats), -1)) ** 2
        pure = probs[:, self._mask].sum(axis=1)
        return self._f * pure + self._mixed_floor


_THETA_BOX = (0.0, math.pi)
_ANGLE_BOX = (-math.pi, math.pi)


def best_response(
    spec: GameSpec,
    candidate: StrategyProfile,
    player: int,
    grid_resolution: int = 25,
    tolerance: float = NASH_TOLERANCE,
) -> DeviationReport:
    """Search the full (theta, alpha, beta) box for the player's best deviation.

    Coarse grid first, then coordinate-wise interval shrinking around
    the running optimum until every step is below 1e-6. The reported
    best payoff never decreases across refinement rounds.
    """
    if grid_resolution < 2:
        raise ValueError("grid_resolution must be >= 2")
    ev = _DeviationEvaluator(spec, candidate, player)
    inc = candidate[player - 1]
    equilibrium_payoff = float(ev.payoffs(inc.theta, inc.alpha, inc.beta)[0])

    thetas = np.linspace(*_THETA_BOX, grid_resolution)
    angles = np.linspace(*_ANGLE_BOX, grid_resolution)
    tg, ag, bg = np.meshgrid(thetas, angles, angles, indexing="ij")
    vals = ev.payoffs(tg.ravel(), ag.ravel(), bg.ravel())
    k = int(np.argmax(vals))
    best = np.array([tg.ravel()[k], ag.ravel()[k], bg.ravel()[k]])
    best_val = float(vals[k])

    boxes = (_THETA_BOX, _ANGLE_BOX, _ANGLE_BOX)
    steps = np.array([b[1] - b[0] for b in boxes]) / (grid_resolution - 1)
    rounds = 0
    while steps.max() > REFINEMENT_MIN_STEP:
        rounds += 1
        for coord in range(3):
            lo = max(boxes[coord][0], best[coord] - steps[coord])
            hi = min(boxes[coord][1], best[coord] + steps[coord])
            scan = np.linspace(lo, hi, 11)
            args = [np.full_like(scan, best[c]) for c in range(3)]
            args[coord] = scan
            vals = ev.payoffs(*args)
            j = int(np.argmax(vals))
            if vals[j] > best_val:
                best_val = float(vals[j])
                best[coord] = scan[j]
            steps[coord] /= 5
    gain = best_val - equilibrium_payoff

    theta = float(np.clip(best[0], *_THETA_BOX))
    alpha, beta = (float(np.clip(v, *_ANGLE_BOX)) for v in best[1:])
    return DeviationReport(
        player=player,
        candidate=candidate,
        best_deviation=StrategyParams(theta, alpha, beta),
        best_deviation_payoff=best_val,
        equilibrium_payoff=equilibrium_payoff,
        max_gain=gain,
        is_nash_within_tol=gain <= tolerance,
        grid_resolution=grid_resolution,
        refinement_steps=rounds,
    )


def nash_check(
    spec: GameSpec,
    candidate: StrategyProfile,
    grid_resolution: int = 25,
    tolerance: float = NASH_TOLERANCE,
) -> List[DeviationReport]:
    """Best-response search for every player; NE iff no player gains."""
    return [
        best_response(spec, candidate, player, grid_resolution, tolerance)
        for player in range(1, spec.n_players + 1)
    ]


def payoff_surface(
    spec: GameSpec, theta_steps: int = 25, alpha_steps: int = 25
) -> List[SweepRow]:
    """Player 1 payoff when everyone plays M(theta, alpha, -alpha) on a grid."""
    if theta_steps < 2 or alpha_steps < 2:
        raise ValueError("steps must be >= 2")
    rows = []
    for theta in np.linspace(*_THETA_BOX, theta_steps):
        for alpha in np.linspace(*_ANGLE_BOX, alpha_steps):
            profile = StrategyProfile.symmetric(
                StrategyParams(theta, alpha, -alpha), spec.n_players
            )
            rows.append(
                SweepRow(
                    theta=float(theta),
                    alpha=float(alpha),
                    payoff_simulated=expected_payoff(spec, profile, 1),
                )
            )
    return rows


def _ne_payoff(recipe: InitialStateRecipe) -> float:
    n = recipe.n_qubits
    if recipe.family is StateFamily.EXPONENTIAL_ENTANGLER:
        strategy = entangler_ne_strategy(n)
    else:
        strategy = ne_strategy(n)
    return expected_payoff(GameSpec(n, recipe), StrategyProfile.symmetric(strategy, n), 1)


def sweep_x(n: int = 6, f: float = 1.0, steps: int = 11) -> List[SweepRow]:
    """Simulated equilibrium payoff vs the closed-form value across x."""
    if steps < 2:
        raise ValueError("steps must be >= 2")
    rows = []
    for x in np.linspace(0.0, 1.0, steps):
        sim = _ne_payoff(
            InitialStateRecipe(StateFamily.GHZ_BELL_MIXTURE, n, x=float(x), f=f)
        )
        analytic = payoff_formula_eq9(float(x), f) if n == 6 else None
        rows.append(
            SweepRow(
                x=float(x),
                f=f,
                payoff_simulated=sim,
                payoff_analytic=analytic,
                abs_error=None if analytic is None else abs(sim - analytic),
            )
        )
    return rows


def sweep_f(n: int = 6, x: float = 1.0, steps: int = 11) -> List[SweepRow]:
    """Simulated equilibrium payoff vs the closed-form value across f."""
    if steps < 2:
        raise ValueError("steps must be >= 2")
    rows = []
    for f in np.linspace(0.0, 1.0, steps):
        sim = _ne_payoff(
            InitialStateRecipe(StateFamily.GHZ_BELL_MIXTURE, n, x=x, f=float(f))
        )
        analytic = payoff_formula_eq9(x, float(f)) if n == 6 else None
        rows.append(
            SweepRow(
                x=x,
                f=float(f),
                payoff_simulated=sim,
                payoff_analytic=analytic,
                abs_error=None if analytic is None else abs(sim - analytic),
            )
        )
    return rows


def sweep_gamma(
    n: int = 6,
    steps: int = 11,
    payoff_classical: Optional[float] = None,
    payoff_quantum: Optional[float] = None,
) -> List[SweepRow]:
    """Simulated entangler payoff vs the conjectured formula across gamma.

    The conjecture is reported, not asserted; only the endpoints are
    expected to agree.
    """
    if steps < 2:
        raise ValueError("steps must be >= 2")
    from .game import classical_payoff

    if payoff_classical is None:
        payoff_classical = float(classical_payoff(n))
    if payoff_quantum is None:
        payoff_quantum = _ne_payoff(
            InitialStateRecipe(
                StateFamily.EXPONENTIAL_ENTANGLER, n, gamma=math.pi / 2
            )
        )
    rows = []
    for gamma in np.linspace(0.0, math.pi / 2, steps):
        sim = _ne_payoff(
            InitialStateRecipe(StateFamily.EXPONENTIAL_ENTANGLER, n, gamma=float(gamma))
        )
        analytic = conjecture_eq14(float(gamma), payoff_classical, payoff_quantum)
        rows.append(
            SweepRow(
                gamma=float(gamma),
                payoff_simulated=sim,
                payoff_analytic=analytic,
                abs_error=abs(sim - analytic),
            )
        )
    return rows
