"""Wolfe's minimum-norm-point method as an exact state machine.

A run records every insertion (major cycle), every removal (minor cycle)
and every corral it settles on, so traces can be compared row by row with
hand-computed iteration tables.
"""
import enum
import warnings
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Callable, Optional, Sequence

from . import kernels
from .rational import (
    ONE,
    ZERO,
    AffineMinimizer,
    Rational,
    Vector,
    affine_minimizer,
    affine_minimizer_int,
    as_rational,
    barycentric_int,
    combine,
    integerize,
    is_zero,
    norm2,
)


class Rule(enum.Enum):
    """Insertion rule: which improving point enters the potential corral."""

    MINNORM = "minnorm"
    LINOPT = "linopt"


class EventKind(enum.Enum):
    MAJOR_ENTER = "major_enter"
    MINOR_REMOVE = "minor_remove"
    CORRAL_REACHED = "corral_reached"


@dataclass(frozen=True)
class Instance:
    """Ordered point list; the order is what tie-breaking refers to."""

    points: tuple
    labels: Optional[tuple] = None

    def __post_init__(self):
        pts = tuple(tuple(as_rational(c) for c in p) for p in self.points)
        object.__setattr__(self, "points", pts)
        if pts:
            dim = len(pts[0])
            if dim == 0 or any(len(p) != dim for p in pts):
                raise ValueError("all points must share a positive dimension")
        if self.labels is not None:
            if len(self.labels) != len(pts):
                raise ValueError("one label per point required")
            object.__setattr__(self, "labels", tuple(self.labels))

    @classmethod
    def from_rows(cls, rows, labels=None) -> "Instance":
        """Build an instance, dropping exact duplicates (first occurrence kept)."""
        seen = {}
        keep = []
        for i, row in enumerate(rows):
            key = tuple(as_rational(c) for c in row)
            if key in seen:
                warnings.warn(
                    f"point {i + 1} duplicates point {seen[key] + 1}; dropped",
                    stacklevel=2,
                )
                continue
            seen[key] = i
            keep.append(i)
        pts = [tuple(as_rational(c) for c in rows[i]) for i in keep]
        labs = [labels[i] for i in keep] if labels is not None else None
        return cls(tuple(pts), tuple(labs) if labs is not None else None)

    @property
    def dim(self) -> int:
        return len(self.points[0]) if self.points else 0

    def __len__(self):
        return len(self.points)

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else f"p{i + 1}"

    @cached_property
    def _ints(self) -> tuple:
        return tuple(integerize(p)[0] for p in self.points)

    @cached_property
    def _dens(self) -> tuple:
        return tuple(integerize(p)[1] for p in self.points)

    @cached_property
    def _gram(self) -> list:
        return kernels.gram(list(self._ints)) if self.points else []

    @cached_property
    def norms2(self) -> tuple:
        return tuple(Rational(self._gram[i][i], d * d) for i, d in enumerate(self._dens))

    def _sub(self, indices):
        ints = [self._ints[i] for i in indices]
        dens = [self._dens[i] for i in indices]
        gram = [[self._gram[i][j] for j in indices] for i in indices]
        return ints, dens, gram

    def affine_minimizer(self, indices) -> Optional[AffineMinimizer]:
        return affine_minimizer_int(*self._sub(indices))

    def barycentric(self, indices, x) -> Optional[Vector]:
        return barycentric_int(*self._sub(indices), x)


@dataclass(frozen=True)
class SolverState:
    """Potential corral ``indices`` with convex weights ``lam`` of ``x``."""

    indices: tuple
    lam: tuple
    x: Vector


@dataclass(frozen=True)
class TraceEvent:
    kind: EventKind
    major: int
    minor: int
    corral: tuple
    x: Vector
    y: Optional[Vector] = None
    entering: Optional[int] = None
    leaving: Optional[int] = None
    theta: Optional[Rational] = None


@dataclass
class WolfeResult:
    x: Vector
    corral: tuple
    coefficients: tuple
    trace: list = field(repr=False)

    def __iter__(self):
        # unpacks as (x_star, final_corral, trace)
        return iter((self.x, self.corral, self.trace))

    @property
    def corrals(self) -> list:
        return [e.corral for e in self.trace if e.kind is EventKind.CORRAL_REACHED]

    @property
    def minor_cycles(self) -> int:
        return sum(e.kind is EventKind.MINOR_REMOVE for e in self.trace)


def initial_point(instance: Instance) -> int:
    """Index of a minimum-norm point, smallest index on ties."""
    if not instance.points:
        raise ValueError("empty instance")
    norms = instance.norms2
    return min(range(len(norms)), key=lambda i: (norms[i], i))


def _inner_products(instance: Instance, x: Sequence[Rational]):
    """Yield ``(j, s, L)`` with ``p_j . x == s / L`` for every improving point ``j``."""
    xi, xl = integerize(x)
    xx = kernels.dots([xi], xi)[0]
    dens = instance._dens
    for j, s in enumerate(kernels.dots(instance._ints, xi)):
        if s * xl < xx * dens[j]:
            yield j, s, xl * dens[j]


def select_entering(instance: Instance, x: Sequence[Rational], rule: Rule) -> Optional[int]:
    """Improving point chosen by ``rule``; ``None`` when ``x`` is optimal."""
    improving = list(_inner_products(instance, x))
    if not improving:
        return None
    if rule is Rule.MINNORM:
        norms = instance.norms2
        return min(improving, key=lambda t: (norms[t[0]], t[0]))[0]
    if rule is Rule.LINOPT:
        return min(improving, key=lambda t: (Rational(t[1], t[2]), t[0]))[0]
    raise ValueError(f"unknown insertion rule {rule!r}")


def minor_step(state: SolverState, alpha: Sequence[Rational], y: Vector,
               instance: Instance) -> tuple[SolverState, int, Rational]:
    """One minor cycle: move toward ``y`` until a weight hits zero, drop that point.

    ``alpha`` holds the affine coefficients of ``y`` aligned with
    ``state.indices``. The new ``lam`` comes from an exact solve against the
    reduced set and must agree with the weights ``theta*alpha + (1-theta)*lam``.
    Returns the new state, the removed point index and theta.
    """
    lam = state.lam
    if len(alpha) != len(lam):
        raise ValueError("alpha must be aligned with the state's index set")
    nonpos = [k for k, a in enumerate(alpha) if a <= 0]
    if not nonpos:
        raise ValueError("minor_step called with a strictly positive affine combination")
    # entries with lam == alpha == 0 put no bound on theta
    ratios = [lam[k] / (lam[k] - alpha[k]) for k in nonpos if lam[k] != alpha[k]]
    theta = min(ratios, default=ONE)
    weights = [theta * a + (1 - theta) * l for a, l in zip(alpha, lam)]
    if any(w < 0 for w in weights):
        raise AssertionError("minor cycle left the convex hull of the reduced set")
    pos = min((k for k, w in enumerate(weights) if w == 0), key=lambda k: state.indices[k])
    removed = state.indices[pos]
    z = _between(theta, y, state.x)
    indices = state.indices[:pos] + state.indices[pos + 1:]
    new_lam = instance.barycentric(indices, z)
    if new_lam is None or list(new_lam) != weights[:pos] + weights[pos + 1:]:
        raise AssertionError("minor cycle weights disagree with the exact solve")
    return SolverState(indices, new_lam, z), removed, theta


def _between(theta: Rational, y: Vector, x: Vector) -> Vector:
    """``theta*y + (1-theta)*x`` with one common denominator."""
    yi, yl = integerize(y)
    xi, xl = integerize(x)
    tn, td = int(theta.numerator), int(theta.denominator)
    num = kernels.combine([tn * xl, (td - tn) * yl], [yi, xi])
    den = td * xl * yl
    return tuple(Rational(v, den) for v in num)


def solve(instance: Instance, rule: Rule = Rule.MINNORM,
          on_event: Optional[Callable[[TraceEvent], None]] = None) -> WolfeResult:
    """Run Wolfe's method from the minimum-norm point with the given insertion rule."""
    pts = instance.points
    trace: list[TraceEvent] = []

    def emit(ev):
        trace.append(ev)
        if on_event is not None:
            on_event(ev)

    i0 = initial_point(instance)
    state = SolverState((i0,), (ONE,), pts[i0])
    emit(TraceEvent(EventKind.CORRAL_REACHED, 0, 0, state.indices, state.x))
    major = 0
    while not is_zero(state.x):
        j = select_entering(instance, state.x, rule)
        if j is None:
            break
        major += 1
        state = SolverState(state.indices + (j,), state.lam + (ZERO,), state.x)
        am = instance.affine_minimizer(state.indices)
        if am is None:
            raise AssertionError(f"entering point {j} is affinely dependent on the corral")
        emit(TraceEvent(EventKind.MAJOR_ENTER, major, 0, state.indices, state.x,
                        am.point, entering=j))
        minor = 0
        while any(a <= 0 for a in am.coefficients):
            minor += 1
            state, removed, theta = minor_step(state, am.coefficients, am.point, instance)
            am = instance.affine_minimizer(state.indices)
            emit(TraceEvent(EventKind.MINOR_REMOVE, major, minor, state.indices, state.x,
                            am.point, leaving=removed, theta=theta))
        state = SolverState(state.indices, am.coefficients, am.point)
        emit(TraceEvent(EventKind.CORRAL_REACHED, major, minor, state.indices, state.x))
    return WolfeResult(state.x, state.indices, state.lam, trace)


def table_rows(trace: Sequence[TraceEvent]) -> list[TraceEvent]:
    """Events laid out like an iteration table: start, insertions, removals."""
    rows = [trace[0]] if trace else []
    rows += [e for e in trace if e.kind is not EventKind.CORRAL_REACHED]
    return rows


def is_corral(points: Sequence[Vector]) -> bool:
    """True iff the affine minimizer lies in the relative interior of the hull."""
    am = affine_minimizer(points)
    if am is None:
        raise ValueError("points are affinely dependent")
    return all(c > 0 for c in am.coefficients)


def brute_force_min_norm(instance: Instance, cap: int = 16) -> Vector:
    """Minimum-norm point by enumerating every affinely independent subset.

    Exponential in the number of points; refuses more than ``cap`` of them.
    """
    n = len(instance)
    if n == 0:
        raise ValueError("empty instance")
    if n > cap:
        raise ValueError(f"{n} points exceeds the enumeration cap of {cap}")
    pts = instance.points
    best = None
    best_norm = None
    for size in range(1, min(n, instance.dim + 1) + 1):
        for subset in combinations(pts, size):
            am = affine_minimizer(subset)
            if am is None or any(c < 0 for c in am.coefficients):
                continue
            nn = norm2(am.point)
            if best is None or nn < best_norm:
                best, best_norm = am.point, nn
    return best


def check_state(points: Sequence[Vector], state: SolverState) -> None:
    """Assert the convex-combination bookkeeping of ``state``."""
    assert sum(state.lam) == 1
    assert combine(state.lam, [points[i] for i in state.indices]) == tuple(state.x)
