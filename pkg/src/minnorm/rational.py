"""Exact rational geometry: vectors, linear solves, affine minimizers.

Scalars are of type :data:`Rational` (``gmpy2.mpq`` on the GMP backend,
``fractions.Fraction`` otherwise; the two compare and hash alike) and a
vector is a tuple of them. Every comparison is exact. Heavy lifting (Gram
products, square solves, matrix-vector products) runs on
denominator-cleared integer data through :mod:`minnorm.kernels`.
"""
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Optional, Sequence

from . import kernels
from .kernels import Rational

Vector = tuple  # tuple[Rational, ...]

ZERO = Rational(0)
ONE = Rational(1)


def as_rational(value) -> Rational:
    """Parse an int, a rational, or a string such as ``"-3/4"``, ``"0.8"``, ``"2"``.

    Floats are rejected: they rarely mean what their decimal rendering shows.
    """
    if isinstance(value, Rational):
        return value
    if isinstance(value, (bool, float)):
        raise TypeError(f"refusing inexact value {value!r}; pass a string or int")
    if isinstance(value, int):
        return Rational(value)
    if isinstance(value, str):
        try:
            return Rational(Fraction(value.strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational number: {value!r}") from exc
    if hasattr(value, "numerator") and hasattr(value, "denominator"):
        return Rational(int(value.numerator), int(value.denominator))
    raise TypeError(f"cannot interpret {value!r} as a rational")


def vec(*coords) -> Vector:
    return tuple(as_rational(c) for c in coords)


def zeros(n: int) -> Vector:
    return (ZERO,) * n


def unit(n: int, i: int) -> Vector:
    return tuple(ONE if k == i else ZERO for k in range(n))


def dot(u: Sequence[Rational], v: Sequence[Rational]) -> Rational:
    if len(u) != len(v):
        raise ValueError(f"dimension mismatch: {len(u)} vs {len(v)}")
    iu, lu = integerize(u)
    iv, lv = integerize(v)
    return Rational(kernels.dots([iu], iv)[0], lu * lv)


def norm2(u: Sequence[Rational]) -> Rational:
    """Squared Euclidean norm."""
    iu, lu = integerize(u)
    return Rational(kernels.dots([iu], iu)[0], lu * lu)


def norm1(u: Sequence[Rational]) -> Rational:
    return sum((abs(c) for c in u), ZERO)


def norm_inf(u: Sequence[Rational]) -> Rational:
    return max((abs(c) for c in u), default=ZERO)


def add(u: Sequence[Rational], v: Sequence[Rational]) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence[Rational], v: Sequence[Rational]) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def scale(c: Rational, u: Sequence[Rational]) -> Vector:
    return tuple(c * a for a in u)


def combine(coeffs: Sequence[Rational], points: Sequence[Vector]) -> Vector:
    """``sum(coeffs[i] * points[i])``."""
    if not points:
        raise ValueError("empty combination")
    dim = len(points[0])
    out = [ZERO] * dim
    for c, p in zip(coeffs, points):
        if c:
            for k in range(dim):
                out[k] += c * p[k]
    return tuple(out)


def is_zero(u: Sequence[Rational]) -> bool:
    return not any(u)


def integerize(u: Sequence[Rational]) -> tuple[list[int], int]:
    """Return ``(ints, L)`` with ``u == ints / L`` and ``L`` the lcm of denominators."""
    den = lcm(*(int(c.denominator) for c in u)) if u else 1
    return [int(c.numerator) * (den // int(c.denominator)) for c in u], den


def _integer_rows(matrix, rhs=None):
    rows = []
    for i, row in enumerate(matrix):
        full = list(row) + ([rhs[i]] if rhs is not None else [])
        ints, _ = integerize(full)
        rows.append(ints)
    return rows


def solve_linear_system(matrix: Sequence[Sequence[Rational]],
                        rhs: Sequence[Rational]) -> Optional[Vector]:
    """Exact solution of a square system, or ``None`` when it is singular."""
    n = len(matrix)
    if any(len(row) != n for row in matrix) or len(rhs) != n:
        raise ValueError("matrix must be square and match rhs length")
    rows = _integer_rows(matrix, rhs)
    res = kernels.solve([r[:n] for r in rows], [r[n] for r in rows])
    if res is None:
        return None
    y, det = res
    return tuple(Rational(v, det) for v in y)


def rank(matrix: Sequence[Sequence[Rational]]) -> int:
    if not matrix:
        return 0
    return kernels.rank(_integer_rows(matrix))


def affinely_independent(points: Sequence[Vector]) -> bool:
    """Columns with a ones-row appended are linearly independent."""
    if not points:
        return True
    cols = [list(p) + [ONE] for p in points]
    return rank(cols) == len(points)


@dataclass(frozen=True)
class AffineMinimizer:
    point: Vector
    coefficients: tuple  # tuple[Rational, ...], sums to 1


def affine_minimizer(points: Sequence[Vector]) -> Optional[AffineMinimizer]:
    """Minimum-norm point of ``aff(points)`` with its affine coefficients.

    Solves the bordered Gram (KKT) system after clearing denominators:
    with ``p_i = u_i / L_i`` and ``alpha_i = L_i * beta_i`` it reads
    ``sum_j (u_i . u_j) beta_j - L_i mu = 0`` and ``sum_j L_j beta_j = 1``.
    Returns ``None`` when the points are affinely dependent.
    """
    if not points:
        raise ValueError("affine_minimizer needs at least one point")
    dim = len(points[0])
    if any(len(p) != dim for p in points):
        raise ValueError("points must share a dimension")
    ints, dens = zip(*(integerize(p) for p in points))
    return affine_minimizer_int(ints, dens, kernels.gram(list(ints)))


def affine_minimizer_int(ints, dens, gram) -> Optional[AffineMinimizer]:
    """:func:`affine_minimizer` on integerized points with their Gram matrix."""
    k = len(ints)
    system = [list(gram[i]) + [-dens[i]] for i in range(k)]
    system.append(list(dens) + [0])
    res = kernels.solve(system, [0] * k + [1])
    if res is None:
        return None
    y, det = res
    beta = y[:k]
    coeffs = tuple(Rational(dens[j] * beta[j], det) for j in range(k))
    point = tuple(Rational(v, det) for v in kernels.combine(beta, ints))
    return AffineMinimizer(point, coeffs)


def barycentric(points: Sequence[Vector], x: Sequence[Rational]) -> Optional[Vector]:
    """Affine coefficients of ``x`` over affinely independent ``points``.

    Returns ``None`` if ``x`` is not in the affine hull (or the points are
    dependent). Solved through the normal equations of ``[P; 1] lam = [x; 1]``
    and then checked exactly.
    """
    ints, dens = zip(*(integerize(p) for p in points))
    return barycentric_int(ints, dens, kernels.gram(list(ints)), x)


def barycentric_int(ints, dens, gram, x: Sequence[Rational]) -> Optional[Vector]:
    """:func:`barycentric` on integerized points with their Gram matrix."""
    k = len(ints)
    xi, xl = integerize(x)
    # with lam_i = L_i * gamma_i:  (U U^T + L L^T) gamma = (U xi + L xl) / xl
    system = [[gram[i][j] + dens[i] * dens[j] for j in range(k)] for i in range(k)]
    ux = kernels.dots(ints, xi)
    rhs = [ux[i] + dens[i] * xl for i in range(k)]
    res = kernels.solve(system, rhs)
    if res is None:
        return None
    y, det = res
    # exact check: sum L_j y_j == det * xl and sum y_j u_j == det * xi
    if sum(dens[j] * y[j] for j in range(k)) != det * xl:
        return None
    if kernels.combine(y, ints) != [det * v for v in xi]:
        return None
    return tuple(Rational(dens[j] * y[j], det * xl) for j in range(k))


def min_norm_on_line(a: Sequence[Rational], b: Sequence[Rational]) -> tuple[Vector, Rational]:
    """Minimum-norm point ``lam*a + (1-lam)*b`` of the line through ``a`` and ``b``."""
    diff = sub(b, a)
    if is_zero(diff):
        raise ValueError("min_norm_on_line needs two distinct points")
    lam = dot(b, diff) / norm2(diff)
    return add(scale(lam, a), scale(1 - lam, b)), lam


def wolfe_violators(x: Sequence[Rational], points: Sequence[Vector]) -> set[int]:
    """Indices ``j`` with ``p_j . x < |x|^2`` (strict)."""
    xi, xl = integerize(x)
    xx = kernels.dots([xi], xi)[0]
    if not points:
        return set()
    ints, dens = zip(*(integerize(p) for p in points))
    # p.x < |x|^2  <=>  (pi.xi) * xl < xx * pl   (xl, pl > 0)
    return {j for j, s in enumerate(kernels.dots(ints, xi)) if s * xl < xx * dens[j]}


def affine_criterion_holds(x: Sequence[Rational], points: Sequence[Vector]) -> bool:
    """True iff ``p . x == |x|^2`` for every point."""
    xx = norm2(x)
    return all(dot(p, x) == xx for p in points)


def gram_schmidt_complement(rows: Sequence[Vector], n: int) -> list[Vector]:
    """Orthogonal rational basis of ``span(rows)``'s complement in ``Q^n``.

    Runs unnormalized Gram-Schmidt over ``rows`` followed by ``e_1..e_n`` and
    keeps the nonzero residuals of the unit vectors, each divided by its
    1-norm so that its 2-norm is at most 1.
    """
    basis: list[tuple[Vector, Rational]] = []

    def residual(v):
        for b, bb in basis:
            c = dot(v, b) / bb
            if c:
                v = sub(v, scale(c, b))
        return v

    for r in rows:
        if len(r) != n:
            raise ValueError(f"row of length {len(r)} in ambient dimension {n}")
        res = residual(tuple(r))
        if not is_zero(res):
            basis.append((res, norm2(res)))
    out = []
    for i in range(n):
        res = residual(unit(n, i))
        if not is_zero(res):
            basis.append((res, norm2(res)))
            out.append(scale(1 / norm1(res), res))
    return out


def to_decimal(q: Rational, places: int = 4) -> str:
    """Round-half-even decimal rendering with a fixed number of places."""
    if places < 0:
        raise ValueError("places must be non-negative")
    q = as_rational(q)
    scaled = round(Fraction(int(q.numerator) * 10 ** places, int(q.denominator)))
    sign = "-" if scaled < 0 else ""
    scaled = abs(scaled)
    whole, frac = divmod(scaled, 10 ** places)
    return f"{sign}{whole}.{frac:0{places}d}" if places else f"{sign}{whole}"
