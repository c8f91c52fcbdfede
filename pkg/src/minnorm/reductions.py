"""Strongly-polynomial reduction chain from LP down to distance-to-a-simplex.

LP -> FP (feasibility and KKT systems) -> BFP (add a sum bound) -> VPM
(scale onto the simplex) -> ZVPM (translate by b) -> ZVPMD (redundancy
elimination with a membership oracle) -> DVS (lift to a simplex and
threshold the squared distance). The distance question at the bottom is
answered by Wolfe's method.

Every constant (the sum bound, epsilon, the distance threshold) is an exact
rational and grows very fast with the input size; the chain is meant for
tiny instances.
"""
import enum
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .rational import (
    ONE,
    ZERO,
    Rational,
    Vector,
    as_rational,
    affinely_independent,
    barycentric,
    gram_schmidt_complement,
    is_zero,
    norm2,
    rank,
)
from .wolfe import Instance, Rule, solve

Matrix = tuple  # tuple of row tuples


class Stage(enum.Enum):
    FP = "FP"
    BFP = "BFP"
    VPM = "VPM"
    ZVPM = "ZVPM"
    ZVPMD = "ZVPMD"
    DVS = "DVS"


class LPStatus(enum.Enum):
    OPTIMAL = "OPTIMAL"
    INFEASIBLE = "INFEASIBLE"
    INFINITE = "INFINITE"


def _matrix(rows) -> Matrix:
    return tuple(tuple(as_rational(v) for v in row) for row in rows)


@dataclass(frozen=True)
class LPInstance:
    """``max c.x  s.t.  A x <= b`` with ``A`` of shape ``d x n``."""

    A: Matrix
    b: Vector
    c: Vector

    def __post_init__(self):
        object.__setattr__(self, "A", _matrix(self.A))
        object.__setattr__(self, "b", tuple(as_rational(v) for v in self.b))
        object.__setattr__(self, "c", tuple(as_rational(v) for v in self.c))
        if not self.A or len(self.b) != len(self.A):
            raise ValueError("A must have one row per entry of b")
        if any(len(row) != len(self.c) for row in self.A):
            raise ValueError("every row of A must have one entry per entry of c")

    @property
    def shape(self) -> tuple:
        return len(self.A), len(self.c)


@dataclass(frozen=True)
class LPOutcome:
    status: LPStatus
    x: Optional[Vector] = None

    def objective(self, lp: LPInstance) -> Optional[Rational]:
        if self.x is None:
            return None
        return sum((ci * xi for ci, xi in zip(lp.c, self.x)), ZERO)


@dataclass(frozen=True)
class BackMap:
    """How a solution of a stage maps to a solution of the stage above it.

    ``split``: ``x = x[:keep] - x[keep:2*keep]``; ``scale``: ``x = factor * y[:keep]``;
    ``identity``: ``x = y[:keep]``.
    """

    kind: str
    keep: int
    factor: Rational = ONE

    def __call__(self, sol: Sequence[Rational]) -> Vector:
        if self.kind == "split":
            return tuple(sol[i] - sol[self.keep + i] for i in range(self.keep))
        if self.kind == "scale":
            return tuple(self.factor * v for v in sol[:self.keep])
        if self.kind == "identity":
            return tuple(sol[:self.keep])
        raise ValueError(f"unknown back map {self.kind!r}")

    def describe(self) -> str:
        if self.kind == "split":
            return f"x = x[0:{self.keep}] - x[{self.keep}:{2 * self.keep}]"
        if self.kind == "scale":
            return f"x = {self.factor} * y[0:{self.keep}]"
        return f"x = y[0:{self.keep}]"


@dataclass(frozen=True)
class StageInstance:
    """One problem of the chain.

    FP/BFP/VPM carry ``A`` and ``b`` (BFP also ``bound``); ZVPM carries
    ``points`` (the translated columns).
    """

    tag: Stage
    back_map: BackMap
    A: Optional[Matrix] = None
    b: Optional[Vector] = None
    bound: Optional[Rational] = None
    points: Optional[tuple] = None

    @property
    def shape(self) -> tuple:
        if self.A is not None:
            return len(self.A), len(self.A[0])
        return len(self.points[0]), len(self.points)


@dataclass(frozen=True)
class FeasibilityBound:
    """Size constants of an ``A x = b, x >= 0`` system with ``A`` of shape ``d x n``."""

    D: int         # largest denominator
    N: int         # largest numerator magnitude, plus one
    M: int         # n * D**(d(n+1) min(d^3, n^3)) * N**(d(n+1))


@dataclass(frozen=True)
class SeparationBound:
    """Size constants of a point set in ``Q^d`` with ``n`` points."""

    T: int              # largest numerator or denominator magnitude
    epsilon: Rational   # 1 / (n d (dT)^d)
    threshold: Rational  # 1 / (d (dT)^(2d))


def feasibility_bound(A: Matrix, b: Vector) -> FeasibilityBound:
    d, n = len(A), len(A[0])
    entries = [v for row in A for v in row] + list(b)
    D = max(int(v.denominator) for v in entries)
    N = max(abs(int(v.numerator)) for v in entries) + 1
    e = d * (n + 1)
    return FeasibilityBound(D, N, n * D ** (e * min(d ** 3, n ** 3)) * N ** e)


def separation_bound(points: Sequence[Vector]) -> SeparationBound:
    n, d = len(points), len(points[0])
    T = max(max(abs(int(v.numerator)), int(v.denominator)) for p in points for v in p)
    base = (d * T) ** d
    return SeparationBound(T, Rational(1, n * d * base), Rational(1, d * base * base))


def _identity(k: int) -> list:
    return [[ONE if i == j else ZERO for j in range(k)] for i in range(k)]


def lp_to_fp(lp: LPInstance) -> tuple[StageInstance, StageInstance]:
    """Feasibility system ``[A -A I](x+, x-, s) = b`` and the KKT system.

    The KKT rows are ``-c x+ + c x- + b y + s_1 = 0``, ``A x+ - A x- + s = b``,
    ``A^T y + s = c`` and ``-A^T y + s = -c``, all variables nonnegative.
    Both back maps return ``x = x+ - x-``.
    """
    A, b, c = lp.A, lp.b, lp.c
    d, n = lp.shape
    eye = _identity(d)
    feas = [list(A[i]) + [-v for v in A[i]] + eye[i] for i in range(d)]

    At = [[A[i][j] for i in range(d)] for j in range(n)]
    rows = [[-v for v in c] + list(c) + list(b)]
    rows += [list(A[i]) + [-v for v in A[i]] + [ZERO] * d for i in range(d)]
    rows += [[ZERO] * (2 * n) + At[j] for j in range(n)]
    rows += [[ZERO] * (2 * n) + [-v for v in At[j]] for j in range(n)]
    slack = _identity(len(rows))
    kkt = [row + slack[i] for i, row in enumerate(rows)]
    rhs = (ZERO,) + tuple(b) + tuple(c) + tuple(-v for v in c)

    back = BackMap("split", n)
    return (StageInstance(Stage.FP, back, A=_matrix(feas), b=tuple(b)),
            StageInstance(Stage.FP, back, A=_matrix(kkt), b=rhs))


def fp_to_bfp(fp: StageInstance) -> StageInstance:
    """Add ``sum(x) <= M`` with ``M`` large enough to keep a vertex solution."""
    bound = feasibility_bound(fp.A, fp.b)
    return StageInstance(Stage.BFP, BackMap("identity", len(fp.A[0])),
                         A=fp.A, b=fp.b, bound=Rational(bound.M))


def bfp_to_vpm(bfp: StageInstance) -> StageInstance:
    """``[M A  0](y, z) = b`` on the simplex; back map ``x = M y``."""
    M = bfp.bound
    if M <= 0:
        raise ValueError("the sum bound must be positive")
    A = tuple(tuple(M * v for v in row) + (ZERO,) for row in bfp.A)
    return StageInstance(Stage.VPM, BackMap("scale", len(bfp.A[0]), M), A=A, b=bfp.b)


def vpm_to_zvpm(vpm: StageInstance) -> StageInstance:
    """Columns ``a_i - b``: ``A x = b`` on the simplex iff ``sum x_i (a_i - b) = 0``."""
    d, n = len(vpm.A), len(vpm.A[0])
    points = tuple(tuple(vpm.A[i][j] - vpm.b[i] for i in range(d)) for j in range(n))
    return StageInstance(Stage.ZVPM, BackMap("identity", n), points=points)


Oracle = Callable[[Sequence[Vector]], bool]


def zvpm_to_zvpmd(points: Sequence[Vector], oracle: Oracle) -> Optional[Vector]:
    """Convex coefficients writing 0 from ``points``, or ``None``.

    Asks the membership oracle once for the full set, then drops each point
    in turn whenever the rest still contains 0. The survivors carry 0 as a
    strict convex combination and their coefficients come from one exact
    solve.
    """
    points = [tuple(p) for p in points]
    if not oracle(points):
        return None
    keep = list(range(len(points)))
    for i in range(len(points)):
        trial = [k for k in keep if k != i]
        if len(trial) < len(keep) and trial and oracle([points[k] for k in trial]):
            keep = trial
    dim = len(points[0])
    if len(keep) > dim + 1:
        raise AssertionError(f"{len(keep)} irredundant points in dimension {dim}")
    coeffs = barycentric([points[k] for k in keep], (ZERO,) * dim)
    if coeffs is None or any(c <= 0 for c in coeffs):
        raise AssertionError("irredundant set does not hold 0 in its relative interior")
    x = [ZERO] * len(points)
    for k, v in zip(keep, coeffs):
        x[k] = v
    return tuple(x)


@dataclass(frozen=True)
class LiftedSimplex:
    points: tuple       # columns of the lifted matrix
    lift_rows: int      # t, the number of epsilon-scaled rows
    bound: SeparationBound


def lift_to_simplex(points: Sequence[Vector]) -> LiftedSimplex:
    """Append epsilon-scaled orthogonal-complement rows so the columns become
    affinely independent."""
    n, d = len(points), len(points[0])
    rows = [tuple(p[i] for p in points) for i in range(d)]
    ones = (ONE,) * n
    complement = gram_schmidt_complement([ones] + rows, n)
    sep = separation_bound(points)
    lifted_rows = rows + [tuple(sep.epsilon * v for v in w) for w in complement]
    cols = tuple(tuple(r[j] for r in lifted_rows) for j in range(n))
    if rank([list(r) for r in lifted_rows] + [list(ones)]) != n:
        raise AssertionError("lifted columns are not affinely independent")
    return LiftedSimplex(cols, len(complement), sep)


def dvs_answer(points: Sequence[Vector]) -> Rational:
    """Squared distance from 0 to the simplex spanned by ``points``."""
    if len(points) > len(points[0]) + 1 or not affinely_independent(points):
        raise ValueError("distance-to-simplex needs affinely independent points")
    return norm2(solve(Instance(tuple(points)), Rule.MINNORM).x)


def zvpmd_via_dvs(points: Sequence[Vector],
                  dvs: Callable[[Sequence[Vector]], Rational] = dvs_answer) -> bool:
    """Decide ``0 in conv(points)`` with a single distance-to-simplex query."""
    lifted = lift_to_simplex(points)
    return dvs(lifted.points) < lifted.bound.threshold


def direct_membership(points: Sequence[Vector]) -> bool:
    """Reference oracle: Wolfe's method on the raw points, YES iff distance 0."""
    return is_zero(solve(Instance(tuple(tuple(p) for p in points)), Rule.MINNORM).x)


def reduce_fp(fp: StageInstance) -> list[StageInstance]:
    """The FP followed by its BFP, VPM and ZVPM images."""
    bfp = fp_to_bfp(fp)
    vpm = bfp_to_vpm(bfp)
    return [fp, bfp, vpm, vpm_to_zvpm(vpm)]


def solve_fp(fp: StageInstance, oracle: Oracle = zvpmd_via_dvs) -> Optional[Vector]:
    """Nonnegative solution of ``A x = b`` answered down the chain, or ``None``."""
    _, bfp, vpm, zvpm = reduce_fp(fp)
    x = zvpm_to_zvpmd(zvpm.points, oracle)
    if x is None:
        return None
    x = bfp.back_map(vpm.back_map(zvpm.back_map(x)))
    if any(v < 0 for v in x) or any(
        sum((a * v for a, v in zip(row, x)), ZERO) != bi for row, bi in zip(fp.A, fp.b)
    ):
        raise AssertionError("recovered vector does not solve the feasibility system")
    return x


def solve_lp(lp: LPInstance, oracle: Oracle = zvpmd_via_dvs) -> LPOutcome:
    """Solve ``max c.x, A x <= b`` through the reduction chain.

    ``oracle`` answers the zero-membership questions; the default goes all
    the way down to distance-to-simplex, ``direct_membership`` skips the lift.
    """
    feas, kkt = lp_to_fp(lp)
    if solve_fp(feas, oracle) is None:
        return LPOutcome(LPStatus.INFEASIBLE)
    sol = solve_fp(kkt, oracle)
    if sol is None:
        return LPOutcome(LPStatus.INFINITE)
    x = kkt.back_map(sol)
    _check_optimal(lp, x, sol)
    return LPOutcome(LPStatus.OPTIMAL, x)


def _check_optimal(lp: LPInstance, x: Vector, sol: Vector) -> None:
    d, n = lp.shape
    y = sol[2 * n:2 * n + d]
    ax = [sum((a * v for a, v in zip(row, x)), ZERO) for row in lp.A]
    aty = [sum((lp.A[i][j] * y[i] for i in range(d)), ZERO) for j in range(n)]
    primal = sum((ci * xi for ci, xi in zip(lp.c, x)), ZERO)
    dual = sum((bi * yi for bi, yi in zip(lp.b, y)), ZERO)
    if (any(v > bi for v, bi in zip(ax, lp.b)) or any(v < 0 for v in y)
            or list(aty) != list(lp.c) or dual != primal):
        raise AssertionError("KKT certificate check failed")
