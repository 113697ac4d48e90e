"""Independent numerical oracles for the closed-form curve.

* fixed-step RK4 integration of the fourth-order equation
  r'''' + (a^2 s^2 + 1) r'' + 3 a^2 s r' = 0 with its initial conditions;
* the kinematic route: a unit sphere rolled without slipping or twisting
  along a planar clothoid, either as the 3x3 rotation system or through the
  two-level spinor system and the Hopf map.

The rolling system X' = A(s) X moves points fixed in the sphere.  The curve
traced on the sphere by the contact point is R(s)^T e3, the third row of
the rotation, which in spinor form is hopf_map(conj(a), -b).  That trace,
not X itself, is congruent to the closed-form curve.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from ._backend import kernels
from .curve import CurveParams, eval_position
from .errors import NonFiniteError, SingularityError
from .special import SeriesControl, hyp1f1


@dataclass(frozen=True)
class Trajectory:
    s: np.ndarray       # (N,)
    states: np.ndarray  # (N, dim)
    step: float

    def __post_init__(self):
        if self.states.ndim != 2 or self.states.shape[0] != self.s.shape[0]:
            raise ValueError("states must have shape (len(s), dim)")
        if not np.all(np.isfinite(self.states)):
            raise NonFiniteError("trajectory contains non-finite states")

    @property
    def dim(self) -> int:
        return self.states.shape[1]

    def __len__(self):
        return self.s.shape[0]

    def samples(self):
        return list(zip(self.s.tolist(), self.states))


@dataclass(frozen=True)
class RigidMotion:
    rotation: np.ndarray
    translation: np.ndarray

    def __post_init__(self):
        R = self.rotation
        if np.abs(R.T @ R - np.eye(3)).max() > 1e-12 or np.linalg.det(R) < 0:
            raise ValueError("rotation must be orthogonal with determinant +1")

    def apply(self, points: np.ndarray) -> np.ndarray:
        return np.asarray(points) @ self.rotation.T + self.translation


def _grid(s_max: float, h: float):
    if not h > 0:
        raise ValueError("step h must be positive")
    if s_max < 0:
        raise ValueError("s_max must be nonnegative")
    n = int(round(s_max / h))
    if n == 0 and s_max > 0:
        n = 1
    step = s_max / n if n else h
    return n, step


def rk4(deriv: Callable, state0, s_span, h: float) -> Trajectory:
    """Classical fixed-step Runge-Kutta on s_span; the step is adjusted so
    that it divides the span evenly."""
    s0, s1 = (float(v) for v in s_span)
    if s1 < s0:
        raise ValueError("s_span must be increasing")
    n, step = _grid(s1 - s0, h)
    y = np.array(state0, dtype=float).reshape(-1)
    out = np.empty((n + 1, y.size))
    out[0] = y
    for i in range(n):
        s = s0 + i * step
        k1 = np.asarray(deriv(s, y), dtype=float)
        k2 = np.asarray(deriv(s + 0.5 * step, y + 0.5 * step * k1), dtype=float)
        k3 = np.asarray(deriv(s + 0.5 * step, y + 0.5 * step * k2), dtype=float)
        k4 = np.asarray(deriv(s + step, y + step * k3), dtype=float)
        y = y + (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not np.all(np.isfinite(y)):
            raise NonFiniteError(f"non-finite state at s={s + step}")
        out[i + 1] = y
    return Trajectory(s0 + step * np.arange(n + 1), out, step)


def mehlum_initial_state(alpha: float) -> np.ndarray:
    """(r, r', r'', r''') at s = 0."""
    return np.array([0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0, -1.0, 0.0, alpha])


def mehlum_rhs(alpha: float):
    """First-order form of the fourth-order equation, for use with ``rk4``."""
    a2 = alpha * alpha

    def f(s, u):
        out = np.empty(12)
        out[:9] = u[3:]
        out[9:] = -(a2 * s * s + 1.0) * u[6:9] - 3.0 * a2 * s * u[3:6]
        return out
    return f


def integrate_mehlum_ode(p: CurveParams, s_max: float, h: float = 1e-3) -> Trajectory:
    """RK4 trajectory of the 12-dimensional state (r, r', r'', r''')."""
    n, step = _grid(s_max, h)
    states = kernels.rk4_mehlum(p.alpha, mehlum_initial_state(p.alpha), n, step)
    return Trajectory(step * np.arange(n + 1), states, step)


def integrate_two_level(alpha: float, s_max: float, h: float = 1e-3) -> Trajectory:
    """i d/ds (a, b) = -1/2 [[0, e^{-i a s^2/2}], [e^{i a s^2/2}, 0]] (a, b), a(0)=1, b(0)=0.

    States are (Re a, Im a, Re b, Im b).
    """
    n, step = _grid(s_max, h)
    states = kernels.rk4_two_level(float(alpha), np.array([1.0, 0.0, 0.0, 0.0]), n, step)
    return Trajectory(step * np.arange(n + 1), states, step)


def spinor(traj: Trajectory) -> tuple[np.ndarray, np.ndarray]:
    st = traj.states
    return st[:, 0] + 1j * st[:, 1], st[:, 2] + 1j * st[:, 3]


def spinor_closed_form(alpha: float, s: float,
                       ctrl: SeriesControl | None = None) -> tuple[complex, complex]:
    """a = 1F1(-i/(8 alpha), 1/2; -i alpha s^2/2), b = (i s/2) 1F1(1/2 + i/(8 alpha), 3/2; i alpha s^2/2)."""
    beta = 1.0 / (8.0 * alpha)
    w = 0.5j * alpha * s * s
    a = hyp1f1(complex(0.0, -beta), 0.5, -w, ctrl).value
    b = 0.5j * s * hyp1f1(complex(0.5, beta), 1.5, w, ctrl).value
    return a, b


def hopf_map(a, b) -> np.ndarray:
    """(ab* + ba*, i(ab* - ba*), aa* - bb*); vectorised over array inputs."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    q = a * np.conj(b)
    out = np.stack([2.0 * q.real, -2.0 * q.imag, (np.abs(a) ** 2 - np.abs(b) ** 2)], axis=-1)
    return out


def integrate_rolling_frame(alpha: float, s_max: float, h: float = 1e-3,
                            initial=(0.0, 0.0, 1.0)) -> Trajectory:
    """X' = A(s) X for the skew generator of a sphere rolling on a clothoid."""
    n, step = _grid(s_max, h)
    x0 = np.asarray(initial, dtype=float)
    if x0.shape != (3,):
        raise ValueError("initial must be a 3-vector")
    states = kernels.rk4_rolling(float(alpha), x0, n, step)
    return Trajectory(step * np.arange(n + 1), states, step)


def rolling_contact_trace(alpha: float, s_max: float, h: float = 1e-3) -> Trajectory:
    """Contact-point trace R(s)^T e3 from the full rotation (three columns at once)."""
    n, step = _grid(s_max, h)
    cols = kernels.rk4_rolling(float(alpha), np.eye(3).reshape(-1), n, step)
    # cols[:, 3j:3j+3] is R e_j; its third component is row 3 of R
    trace = cols[:, 2::3]
    return Trajectory(step * np.arange(n + 1), np.ascontiguousarray(trace), step)


def spinor_contact_trace(two_level: Trajectory) -> Trajectory:
    """Contact-point trace from the spinor: hopf_map(conj(a), -b)."""
    a, b = spinor(two_level)
    return Trajectory(two_level.s, hopf_map(np.conj(a), -b), two_level.step)


def _forward_weights(order: int, npts: int) -> np.ndarray:
    # one-sided finite-difference weights on offsets 0..npts-1 (unit spacing)
    j = np.arange(npts, dtype=float)
    V = np.array([j ** k / math.factorial(k) for k in range(npts)])
    rhs = np.zeros(npts)
    rhs[order] = 1.0
    return np.linalg.solve(V, rhs)


def align_to_mehlum_frame(traj: Trajectory, npts: int = 7) -> tuple[RigidMotion, Trajectory]:
    """Rigid motion putting the curve at the origin with tangent e1 and
    principal normal e2 at s = 0, applied to the whole trajectory."""
    if traj.dim != 3:
        raise ValueError("expected a trajectory of 3-vectors")
    if len(traj) < npts:
        raise ValueError(f"need at least {npts} samples for the derivatives at s = 0")
    pts = traj.states[:npts]
    d1 = _forward_weights(1, npts) @ pts / traj.step
    d2 = _forward_weights(2, npts) @ pts / traj.step ** 2
    n1 = np.linalg.norm(d1)
    if n1 < 1e-8:
        raise SingularityError("tangent vanishes at s = 0")
    t = d1 / n1
    nrm = d2 - (d2 @ t) * t
    n2 = np.linalg.norm(nrm)
    if n2 < 1e-8 * max(1.0, np.linalg.norm(d2)):
        raise SingularityError("first and second derivatives are parallel at s = 0")
    nrm /= n2
    rot = np.vstack([t, nrm, np.cross(t, nrm)])
    motion = RigidMotion(rot, -rot @ traj.states[0])
    return motion, Trajectory(traj.s, motion.apply(traj.states), traj.step)


def closed_form_samples(p: CurveParams, s_values) -> np.ndarray:
    return np.array([eval_position(p, s) for s in s_values])


def ode_deviation(p: CurveParams, s_max: float, h: float = 1e-3) -> float:
    """max |closed form - RK4 position| over the integration grid."""
    traj = integrate_mehlum_ode(p, s_max, h)
    ref = closed_form_samples(p, traj.s)
    return float(np.abs(traj.states[:, :3] - ref).max())


def kinematic_deviation(p: CurveParams, s_max: float, h: float = 1e-3,
                        route: str = "rotation") -> float:
    """max |closed form - aligned contact trace| over [0, s_max]."""
    if s_max == 0:
        return 0.0
    span = max(s_max, 10 * h)
    if route == "rotation":
        trace = rolling_contact_trace(p.alpha, span, h)
    elif route == "spinor":
        trace = spinor_contact_trace(integrate_two_level(p.alpha, span, h))
    else:
        raise ValueError("route must be 'rotation' or 'spinor'")
    _, aligned = align_to_mehlum_frame(trace)
    keep = aligned.s <= s_max + 1e-12
    ref = closed_form_samples(p, aligned.s[keep])
    return float(np.abs(aligned.states[keep] - ref).max())
