"""Ground-truth invariants and seeded dataset generators.

Synthetic systems draw every free variable, then solve for the remaining one so
the group's invariant holds exactly. Physical systems are integrated with
explicit Euler and subsampled. Stored states are rescaled per variable; the
factors are kept in ``GroupedDataset.rescale_log``.
"""

import math
import re
from collections.abc import Callable
from dataclasses import dataclass

import logfire
import numpy as np
from numpy.typing import ArrayLike
from scipy.optimize import brentq

from conservnet.core.exceptions import (
    ArgumentError,
    DimensionError,
    DomainError,
    InfeasibleSpecError,
    SimulationError,
)
from conservnet.core.seeding import make_rng, spawn_rngs
from conservnet.models import (
    FloatArray,
    Group,
    GroupedDataset,
    Invariant,
    KeplerTarget,
    SystemName,
)

# Lotka-Volterra: dx/dt = alpha x - gamma x y, dy/dt = -beta y + delta x y
LV_ALPHA, LV_BETA, LV_DELTA, LV_GAMMA = 1.1, 0.4, 0.1, 0.4
LV_DT = 0.01
LV_STRIDE = 100

KEPLER_GM = 1.0
KEPLER_MASS = 1.0
KEPLER_DT_MAX = 1e-4
KEPLER_MAX_ECCENTRICITY = 0.99
KEPLER_MIN_RADIUS = 0.1
KEPLER_MAX_SEMI_MAJOR_AXIS = 10.0
KEPLER_MAX_ATTEMPTS = 200_000

RESCALE_THRESHOLD = 10.0
RESCALE_FACTOR = 0.1

NULL_DIM = 5
GROUND_TRUTH_TOLERANCE = 1e-6

_DIMS = {
    Invariant.S1: 4,
    Invariant.S1_ALT: 4,
    Invariant.S2: 3,
    Invariant.S3: 4,
    Invariant.LOTKA_VOLTERRA: 2,
    Invariant.KEPLER_ANGULAR_MOMENTUM: 4,
    Invariant.KEPLER_ENERGY: 4,
}


def _as_rows(state: ArrayLike, invariant: Invariant) -> FloatArray:
    x = np.atleast_2d(np.asarray(state, dtype=np.float64))
    if x.shape[1] != _DIMS[invariant]:
        raise DimensionError(expected=_DIMS[invariant], got=x.shape[1])
    if not np.all(np.isfinite(x)):
        raise DomainError(f"{invariant.value}: state must be finite")
    return x


def invariant_value(invariant: Invariant, state: ArrayLike) -> FloatArray | float:
    """Exact invariant of one state (returns a float) or of every row of a matrix."""
    single = np.ndim(state) == 1
    x = _as_rows(state, invariant)
    cols = x.T

    match invariant:
        case Invariant.S1:
            x1, x2, x3, x4 = cols
            value = x1 - 3.0 * x2 * x3 + 0.5 * x4**2
        case Invariant.S1_ALT:
            x1, x2, x3, x4 = cols
            value = x1 - 2.0 * x2 * x3 + 3.0 * x4**2
        case Invariant.S2:
            x1, x2, x3 = cols
            value = 3.0 * x1 + 2.0 * np.sin(x2) + np.sqrt(np.abs(x1)) * x3**3
        case Invariant.S3:
            x1, x2, x3, x4 = cols
            if np.any(x3 == 0.0) or np.any(x1 + x3 == 0.0):
                raise DomainError("s3 requires x3 != 0 and x1 + x3 != 0")
            value = 2.0 * x1 * x2 - (np.log(np.abs(x1 + x3)) - x4) / x3
        case Invariant.LOTKA_VOLTERRA:
            x, y = cols
            if np.any(x <= 0.0) or np.any(y <= 0.0):
                raise DomainError("lotka_volterra requires positive populations")
            value = LV_BETA * np.log(x) + LV_ALPHA * np.log(y) - LV_DELTA * x - LV_GAMMA * y
        case Invariant.KEPLER_ANGULAR_MOMENTUM:
            x, y, vx, vy = cols
            _check_radius(x, y)
            value = KEPLER_MASS * (x * vy - y * vx)
        case Invariant.KEPLER_ENERGY:
            x, y, vx, vy = cols
            r = _check_radius(x, y)
            value = 0.5 * KEPLER_MASS * (vx**2 + vy**2) - KEPLER_GM * KEPLER_MASS / r

    return float(value[0]) if single else value


def _check_radius(x: FloatArray, y: FloatArray) -> FloatArray:
    r = np.hypot(x, y)
    if np.any(r == 0.0):
        raise DomainError("kepler requires r > 0")
    return r


# ---------------------------------------------------------------- synthetic


@dataclass
class _RejectionMonitor:
    """Fails when acceptance over a full window drops below the floor."""

    system: str
    window: int = 10_000
    min_acceptance: float = 0.01
    attempts: int = 0
    accepted: int = 0
    total_attempts: int = 0
    total_accepted: int = 0

    def record(self, attempts: int, accepted: int) -> None:
        self.attempts += attempts
        self.accepted += accepted
        self.total_attempts += attempts
        self.total_accepted += accepted
        if self.attempts >= self.window:
            rate = self.accepted / self.attempts
            if rate < self.min_acceptance:
                raise InfeasibleSpecError(self.system, rate)
            self.attempts = self.accepted = 0

    @property
    def acceptance(self) -> float:
        return self.total_accepted / max(self.total_attempts, 1)


Sampler = Callable[[float, int, np.random.Generator], FloatArray]


@dataclass(frozen=True, slots=True)
class SystemSpec:
    """How one synthetic system is sampled.

    ``sample(C, k, rng)`` returns up to k candidate rows already solved for
    ``solved_variable``. Rows whose solved value leaves ``[-solved_bound,
    solved_bound]`` or whose invariant misses C are rejected afterwards.
    """

    invariant: Invariant
    variables: tuple[str, ...]
    c_range: tuple[float, float]
    solved_variable: str
    solved_bound: float
    sample: Sampler
    # stored = raw * factor
    rescale: tuple[float, ...]

    @property
    def solved_column(self) -> int:
        return self.variables.index(self.solved_variable)


def _sample_s1(form: Invariant) -> Sampler:
    def sample(C: float, k: int, rng: np.random.Generator) -> FloatArray:
        x2, x3, x4 = rng.normal(0.0, 2.0, size=(3, k))
        if form is Invariant.S1:
            x1 = C + 3.0 * x2 * x3 - 0.5 * x4**2
        else:
            x1 = C + 2.0 * x2 * x3 - 3.0 * x4**2
        return np.column_stack([x1, x2, x3, x4])

    return sample


_S2_SHIFTS = 2.0 * np.pi * np.arange(-2, 3)
_S2_LIMIT = 3.0 * np.pi


def _sample_s2(C: float, k: int, rng: np.random.Generator) -> FloatArray:
    x1 = rng.uniform(-3.0, 3.0, size=k)
    x3 = rng.uniform(-3.0, 3.0, size=k)
    rhs = (C - 3.0 * x1 - np.sqrt(np.abs(x1)) * x3**3) / 2.0
    ok = np.abs(rhs) <= 1.0
    x1, x3, rhs = x1[ok], x3[ok], rhs[ok]

    # every solution of sin(x2) = rhs inside [-3pi, 3pi], one picked uniformly
    base = np.arcsin(rhs)[:, None]
    candidates = np.hstack([base + _S2_SHIFTS, np.pi - base + _S2_SHIFTS])
    inside = np.abs(candidates) <= _S2_LIMIT
    scores = np.where(inside, rng.random(candidates.shape), -1.0)
    x2 = candidates[np.arange(len(rhs)), scores.argmax(axis=1)]
    return np.column_stack([x1, x2, x3])


_S3_GRID = np.linspace(-10.0, 10.0, 201)


def _s3_residual(x1: FloatArray, x2: float, x3: float, x4: float, C: float):
    return 2.0 * x1 * x2 - (np.log(np.abs(x1 + x3)) - x4) / x3 - C


def _sample_s3(C: float, k: int, rng: np.random.Generator) -> FloatArray:
    x2 = rng.uniform(-10.0, 10.0, size=k)
    x3 = rng.uniform(0.5, 5.0, size=k)
    x4 = rng.uniform(-10.0, 10.0, size=k)

    with np.errstate(divide="ignore", invalid="ignore"):
        g = _s3_residual(_S3_GRID[None, :], x2[:, None], x3[:, None], x4[:, None], C)
    finite = np.isfinite(g[:, :-1]) & np.isfinite(g[:, 1:])
    brackets = finite & (np.sign(g[:, :-1]) * np.sign(g[:, 1:]) < 0)

    rows: list[tuple[float, float, float, float]] = []
    for i in np.flatnonzero(brackets.any(axis=1)):
        choices = np.flatnonzero(brackets[i])
        j = int(rng.choice(choices))
        a, b, c, e = float(x2[i]), float(x3[i]), float(x4[i]), C
        root = brentq(
            lambda t: float(_s3_residual(np.float64(t), a, b, c, e)),
            _S3_GRID[j],
            _S3_GRID[j + 1],
            xtol=1e-14,
            maxiter=200,
        )
        rows.append((root, a, b, c))
    if not rows:
        return np.empty((0, 4))
    return np.asarray(rows)


SYSTEM_SPECS: dict[Invariant, SystemSpec] = {
    Invariant.S1: SystemSpec(
        invariant=Invariant.S1,
        variables=("x1", "x2", "x3", "x4"),
        c_range=(-4.5, 5.0),
        solved_variable="x1",
        solved_bound=5.0,
        sample=_sample_s1(Invariant.S1),
        rescale=(1.0, 1.0, 1.0, 1.0),
    ),
    Invariant.S1_ALT: SystemSpec(
        invariant=Invariant.S1_ALT,
        variables=("x1", "x2", "x3", "x4"),
        c_range=(-4.5, 5.0),
        solved_variable="x1",
        solved_bound=5.0,
        sample=_sample_s1(Invariant.S1_ALT),
        rescale=(1.0, 1.0, 1.0, 1.0),
    ),
    Invariant.S2: SystemSpec(
        invariant=Invariant.S2,
        variables=("x1", "x2", "x3"),
        c_range=(-5.0, 0.0),
        solved_variable="x2",
        solved_bound=_S2_LIMIT,
        sample=_sample_s2,
        rescale=(1.0, 1.0, 1.0),
    ),
    Invariant.S3: SystemSpec(
        invariant=Invariant.S3,
        variables=("x1", "x2", "x3", "x4"),
        c_range=(1.0, 3.85),
        solved_variable="x1",
        solved_bound=10.0,
        sample=_sample_s3,
        rescale=(1.0, 1.0, 1.0, 1.0),
    ),
}


def synthetic_invariant(system: SystemName, s1_form: str = "standard") -> Invariant:
    match system:
        case SystemName.S1:
            return Invariant.S1 if s1_form == "standard" else Invariant.S1_ALT
        case SystemName.S2:
            return Invariant.S2
        case SystemName.S3:
            return Invariant.S3
        case _:
            raise ArgumentError(f"{system.value} is not a synthetic system")


def _check_counts(n_groups: int, points_per_group: int) -> None:
    if n_groups < 1 or points_per_group < 1:
        raise ArgumentError(
            f"Need N, M >= 1, got N={n_groups}, M={points_per_group}"
        )


def accept_rows(spec: SystemSpec, rows: FloatArray, C: float) -> FloatArray:
    """Candidates inside the solved-variable bound whose invariant reproduces C."""
    rows = rows[np.abs(rows[:, spec.solved_column]) <= spec.solved_bound]
    if len(rows) == 0:
        return rows
    residual = np.abs(invariant_value(spec.invariant, rows) - C)
    return rows[residual < GROUND_TRUTH_TOLERANCE]


def generate_synthetic(
    system: SystemName,
    n_groups: int,
    points_per_group: int,
    seed: int,
    s1_form: str = "standard",
) -> GroupedDataset:
    _check_counts(n_groups, points_per_group)
    spec = SYSTEM_SPECS[synthetic_invariant(system, s1_form)]
    monitor = _RejectionMonitor(system=spec.invariant.value)
    batch = max(points_per_group, 64)

    groups: list[Group] = []
    max_residual = 0.0
    with logfire.span(
        "generate {system}", system=spec.invariant.value, n=n_groups, m=points_per_group
    ):
        for group_id, rng in enumerate(spawn_rngs(seed, n_groups, spec.invariant.value)):
            C = float(rng.uniform(*spec.c_range))
            chunks: list[FloatArray] = []
            have = 0
            while have < points_per_group:
                rows = accept_rows(spec, spec.sample(C, batch, rng), C)
                monitor.record(batch, len(rows))
                chunks.append(rows)
                have += len(rows)
            states = np.vstack(chunks)[:points_per_group]

            residual = float(np.max(np.abs(invariant_value(spec.invariant, states) - C)))
            max_residual = max(max_residual, residual)
            groups.append(
                Group(
                    group_id=group_id,
                    states=states * np.asarray(spec.rescale),
                    invariant=C,
                )
            )

        logfire.info(
            "Generated {system}", system=spec.invariant.value, acceptance=monitor.acceptance
        )

    return GroupedDataset(
        name=system.value,
        variables=spec.variables,
        groups=tuple(groups),
        rescale_log=spec.rescale,
        meta={
            "system": system.value,
            "invariant": spec.invariant.value,
            "seed": seed,
            "acceptance": monitor.acceptance,
            "max_residual": max_residual,
        },
    )


# ---------------------------------------------------------------- physical


def _relative_drift(values: FloatArray, reference: FloatArray) -> FloatArray:
    """max_t |V(x_t) - V(x_0)| / |V(x_0)| per group; values is (N, M)."""
    scale = np.maximum(np.abs(reference), np.finfo(np.float64).tiny)
    return np.max(np.abs(values - reference[:, None]), axis=1) / scale


def simulate_lotka_volterra(
    n_groups: int, points_per_group: int, seed: int
) -> GroupedDataset:
    _check_counts(n_groups, points_per_group)
    rngs = spawn_rngs(seed, n_groups, SystemName.LOTKA_VOLTERRA.value)
    state = np.vstack([rng.uniform(1.0, 10.0, size=2) for rng in rngs])
    initial = invariant_value(Invariant.LOTKA_VOLTERRA, state)
    assert isinstance(initial, np.ndarray)

    trajectory = np.empty((points_per_group, n_groups, 2))
    with logfire.span("simulate lotka_volterra", n=n_groups, m=points_per_group):
        for step in range(LV_STRIDE * points_per_group):
            if step % LV_STRIDE == 0:
                trajectory[step // LV_STRIDE] = state
            x, y = state[:, 0], state[:, 1]
            rate = np.column_stack(
                [LV_ALPHA * x - LV_GAMMA * x * y, -LV_BETA * y + LV_DELTA * x * y]
            )
            state = state + LV_DT * rate
            if not np.all(np.isfinite(state)) or np.any(state <= 0.0):
                raise SimulationError(
                    "lotka_volterra", f"state left the positive quadrant at step {step}"
                )

    per_group = trajectory.transpose(1, 0, 2)
    values = invariant_value(
        Invariant.LOTKA_VOLTERRA, per_group.reshape(-1, 2)
    ).reshape(n_groups, points_per_group)
    drift = _relative_drift(values, initial)

    rescale = (RESCALE_FACTOR, RESCALE_FACTOR)
    groups = tuple(
        Group(group_id=i, states=per_group[i] * np.asarray(rescale), invariant=float(c))
        for i, c in enumerate(initial)
    )
    return GroupedDataset(
        name=SystemName.LOTKA_VOLTERRA.value,
        variables=("x", "y"),
        groups=groups,
        rescale_log=rescale,
        meta={
            "system": SystemName.LOTKA_VOLTERRA.value,
            "seed": seed,
            "dt": LV_DT,
            "stride": LV_STRIDE,
            "drift": drift.tolist(),
            "max_drift": float(drift.max()),
        },
    )


@dataclass(frozen=True, slots=True)
class _Orbit:
    state: FloatArray
    period: float


def _sample_orbit(
    rng: np.random.Generator,
    fixed_l: float | None,
    max_semi_major_axis: float,
) -> tuple[_Orbit, int]:
    for attempt in range(1, KEPLER_MAX_ATTEMPTS + 1):
        x, y, vx, vy = rng.uniform(-5.0, 5.0, size=4)
        r = math.hypot(x, y)
        if r < KEPLER_MIN_RADIUS:
            continue
        if fixed_l is not None:
            # keep the radial velocity, pin the tangential one so x vy - y vx = L
            v_r = (x * vx + y * vy) / r
            v_t = fixed_l / (KEPLER_MASS * r)
            vx = (v_r * x - v_t * y) / r
            vy = (v_r * y + v_t * x) / r
        energy = 0.5 * (vx * vx + vy * vy) - KEPLER_GM / r
        if energy >= 0.0:
            continue
        ang = x * vy - y * vx
        eccentricity = math.sqrt(max(0.0, 1.0 + 2.0 * energy * ang * ang / KEPLER_GM**2))
        if eccentricity >= KEPLER_MAX_ECCENTRICITY:
            continue
        a = -KEPLER_GM / (2.0 * energy)
        if a > max_semi_major_axis or a * (1.0 - eccentricity) < KEPLER_MIN_RADIUS:
            continue
        period = 2.0 * math.pi * math.sqrt(a**3 / KEPLER_GM)
        return _Orbit(state=np.array([x, y, vx, vy]), period=period), attempt
    raise SimulationError("kepler", f"no bound orbit after {KEPLER_MAX_ATTEMPTS} draws")


def simulate_kepler(
    n_groups: int,
    points_per_group: int,
    seed: int,
    fixed_l: float | None = None,
    target: KeplerTarget | None = None,
    dt_max: float = KEPLER_DT_MAX,
    max_semi_major_axis: float = KEPLER_MAX_SEMI_MAJOR_AXIS,
) -> GroupedDataset:
    """Bound orbits integrated with explicit Euler, M points over one period each.

    All groups advance together for M * S steps; group i uses
    dt_i = T_i / (M * S) <= dt_max so its stored points span exactly one period.
    """
    _check_counts(n_groups, points_per_group)
    if target is None:
        target = "angular_momentum" if fixed_l is None else "energy"

    orbits: list[_Orbit] = []
    attempts = 0
    for rng in spawn_rngs(seed, n_groups, SystemName.KEPLER.value):
        orbit, tries = _sample_orbit(rng, fixed_l, max_semi_major_axis)
        orbits.append(orbit)
        attempts += tries

    state = np.vstack([orbit.state for orbit in orbits])
    periods = np.array([orbit.period for orbit in orbits])
    substeps = max(1, math.ceil(periods.max() / (points_per_group * dt_max)))
    dt = (periods / (points_per_group * substeps))[:, None]

    trajectory = np.empty((points_per_group, n_groups, 4))
    with logfire.span(
        "simulate kepler", n=n_groups, m=points_per_group, substeps=substeps
    ):
        for step in range(points_per_group * substeps):
            if step % substeps == 0:
                trajectory[step // substeps] = state
            pos = state[:, :2]
            r3 = np.sum(pos * pos, axis=1, keepdims=True) ** 1.5
            accel = -KEPLER_GM * pos / r3
            state = state + dt * np.hstack([state[:, 2:], accel])
        if not np.all(np.isfinite(trajectory)):
            raise SimulationError("kepler", "non-finite state during integration")

    per_group = trajectory.transpose(1, 0, 2)
    flat = per_group.reshape(-1, 4)
    ang = invariant_value(Invariant.KEPLER_ANGULAR_MOMENTUM, flat)
    energy = invariant_value(Invariant.KEPLER_ENERGY, flat)
    assert isinstance(ang, np.ndarray) and isinstance(energy, np.ndarray)
    ang = ang.reshape(n_groups, points_per_group)
    energy = energy.reshape(n_groups, points_per_group)
    c1, c2 = ang[:, 0], energy[:, 0]
    drift_c1 = _relative_drift(ang, c1)
    drift_c2 = _relative_drift(energy, c2)

    rescale = (RESCALE_FACTOR, RESCALE_FACTOR, 1.0, 1.0)
    primary = c1 if target == "angular_momentum" else c2
    groups = tuple(
        Group(
            group_id=i,
            states=per_group[i] * np.asarray(rescale),
            invariant=float(primary[i]),
            aux_invariants={"C1": float(c1[i]), "C2": float(c2[i])},
        )
        for i in range(n_groups)
    )
    logfire.info(
        "Simulated kepler",
        max_drift_c1=float(drift_c1.max()),
        max_drift_c2=float(drift_c2.max()),
        acceptance=n_groups / attempts,
    )
    return GroupedDataset(
        name=SystemName.KEPLER.value,
        variables=("x", "y", "vx", "vy"),
        groups=groups,
        rescale_log=rescale,
        meta={
            "system": SystemName.KEPLER.value,
            "seed": seed,
            "target": target,
            "fixed_l": fixed_l,
            "substeps": substeps,
            "dt": dt[:, 0].tolist(),
            "period": periods.tolist(),
            "drift_c1": drift_c1.tolist(),
            "drift_c2": drift_c2.tolist(),
            "max_drift_c1": float(drift_c1.max()),
            "max_drift_c2": float(drift_c2.max()),
        },
    )


# ---------------------------------------------------------------- transforms


def rescale_factors(states: FloatArray) -> tuple[float, ...]:
    """0.1 for every column whose largest magnitude exceeds 10, else 1."""
    peaks = np.max(np.abs(states), axis=0)
    return tuple(RESCALE_FACTOR if p > RESCALE_THRESHOLD else 1.0 for p in peaks)


def cartesian_to_polar(states: ArrayLike) -> FloatArray:
    x, y, vx, vy = np.asarray(states, dtype=np.float64).T
    r = np.hypot(x, y)
    if np.any(r == 0.0):
        raise DomainError("polar coordinates need r > 0")
    r_dot = (x * vx + y * vy) / r
    theta = np.arctan2(y, x)
    theta_dot = (x * vy - y * vx) / r**2
    return np.column_stack([r, r_dot, theta, theta_dot])


def from_polar(states: ArrayLike) -> FloatArray:
    r, r_dot, theta, theta_dot = np.asarray(states, dtype=np.float64).T
    cos, sin = np.cos(theta), np.sin(theta)
    x, y = r * cos, r * sin
    vx = r_dot * cos - r * theta_dot * sin
    vy = r_dot * sin + r * theta_dot * cos
    return np.column_stack([x, y, vx, vy])


def to_polar(dataset: GroupedDataset) -> GroupedDataset:
    if dataset.variables != ("x", "y", "vx", "vy"):
        raise DimensionError(expected=4, got=dataset.dim)
    raw = [cartesian_to_polar(dataset.unscale(group.states)) for group in dataset.groups]
    factors = rescale_factors(np.vstack(raw))
    groups = [
        Group(
            group_id=group.group_id,
            states=states * np.asarray(factors),
            invariant=group.invariant,
            aux_invariants=group.aux_invariants,
        )
        for group, states in zip(dataset.groups, raw, strict=True)
    ]
    return dataset.with_groups(
        groups,
        name=f"{dataset.name}_polar",
        variables=("r", "r_dot", "theta", "theta_dot"),
        rescale_log=factors,
        meta={**dataset.meta, "polar": True},
    )


_NUMBERED = re.compile(r"x\d+")


def add_nuisance(dataset: GroupedDataset, seed: int) -> GroupedDataset:
    """Append one standard-normal column that no invariant depends on."""
    rng = make_rng(seed, "nuisance")
    numbered = all(_NUMBERED.fullmatch(name) for name in dataset.variables)
    name = f"x{dataset.dim + 1}" if numbered else "nuisance"
    groups = [
        Group(
            group_id=group.group_id,
            states=np.hstack([group.states, rng.standard_normal((group.size, 1))]),
            invariant=group.invariant,
            aux_invariants=group.aux_invariants,
        )
        for group in dataset.groups
    ]
    return dataset.with_groups(
        groups,
        name=f"{dataset.name}+",
        variables=(*dataset.variables, name),
        rescale_log=(*dataset.rescale_log, 1.0),
        meta={**dataset.meta, "nuisance": name},
    )


def add_observation_noise(dataset: GroupedDataset, s: float, seed: int) -> GroupedDataset:
    if s < 0:
        raise ArgumentError(f"Noise strength must be non-negative, got {s}")
    if s == 0:
        return dataset
    rng = make_rng(seed, "observation_noise")
    groups = [
        Group(
            group_id=group.group_id,
            states=group.states + rng.normal(0.0, s, size=group.states.shape),
            invariant=group.invariant,
            aux_invariants=group.aux_invariants,
        )
        for group in dataset.groups
    ]
    return dataset.with_groups(groups, meta={**dataset.meta, "observation_noise": s})


def generate_null(n_groups: int, points_per_group: int, seed: int) -> GroupedDataset:
    """Gaussian groups with random means: nothing is conserved."""
    _check_counts(n_groups, points_per_group)
    groups: list[Group] = []
    for group_id, rng in enumerate(spawn_rngs(seed, n_groups, SystemName.NULL.value)):
        mean = rng.uniform(-1.0, 1.0, size=NULL_DIM)
        states = mean + rng.standard_normal((points_per_group, NULL_DIM))
        groups.append(Group(group_id=group_id, states=states))
    return GroupedDataset(
        name=SystemName.NULL.value,
        variables=tuple(f"x{i + 1}" for i in range(NULL_DIM)),
        groups=tuple(groups),
        rescale_log=(1.0,) * NULL_DIM,
        meta={"system": SystemName.NULL.value, "seed": seed},
    )
