"""Instances on which Wolfe's method behaves badly, plus their predictions.

``generate_pd`` builds the recursive family in odd dimension ``d``: the
previous instance padded with two zero coordinates, followed by four new
points ``p, q, r, s`` placed on a common hyperplane. Under the minnorm rule
the corral sequence doubles (plus four) with each step.
"""
from dataclasses import dataclass, field

from .rational import (
    Rational,
    Vector,
    add,
    norm1,
    norm2,
    norm_inf,
    scale,
    vec,
)
from .wolfe import EventKind, Instance, Rule, solve


@dataclass(frozen=True)
class HardFamilyRecord:
    d: int
    instance: Instance
    max_l1: Rational   # largest 1-norm over the points
    min_inf: Rational  # infinity-norm of the optimum
    x_star: Vector


def _check_odd(d: int) -> None:
    if not isinstance(d, int) or d < 1 or d % 2 == 0:
        raise ValueError(f"d must be an odd positive integer, got {d!r}")


def generate_pd(d: int) -> HardFamilyRecord:
    """Exact instance in ``Q^d`` with ``2d - 1`` points.

    The optimum is carried along by the orthogonal-union formula rather
    than by running the solver, so generation does not depend on it.
    """
    _check_odd(d)
    one = Rational(1)
    points = [(one,)]
    x_star = (one,)
    big, small = one, one
    for dim in range(3, d + 1, 2):
        pad = (Rational(0), Rational(0))
        head = [tuple(p) + pad for p in points]
        half = scale(Rational(1, 2), x_star)
        zero = (Rational(0),) * (dim - 2)
        h = small / 4
        new = [
            half + (h, big),
            half + (h, -(big + 1)),
            zero + (h, big + 2),
            zero + (h, -(big + 3)),
        ]
        # optimum of conv(P_{dim-2} plus w) with w = h e_{dim-1}
        w = zero + (h, Rational(0))
        xx, ww = norm2(x_star), norm2(w)
        lam = ww / (xx + ww)
        x_star = add(scale(lam, tuple(x_star) + pad), scale(1 - lam, w))
        points = head + new
        big = max(norm1(p) for p in points)
        small = norm_inf(x_star)
    labels = _labels(d)
    return HardFamilyRecord(d, Instance(tuple(points), labels), big, small, x_star)


def _labels(d: int) -> tuple:
    labels = ["1"]
    for dim in range(3, d + 1, 2):
        labels += [f"{c}{dim}" for c in "pqrs"]
    return tuple(labels)


def new_point_indices(d: int) -> tuple:
    """0-based indices of ``p_d, q_d, r_d, s_d`` in ``generate_pd(d)``."""
    _check_odd(d)
    if d == 1:
        raise ValueError("P_1 has no added points")
    base = 2 * (d - 2) - 1
    return tuple(range(base, base + 4))


def predicted_count(d: int) -> int:
    """Number of corrals the minnorm rule visits on ``P_d``: ``5 * 2**(k-1) - 4``."""
    _check_odd(d)
    k = (d + 1) // 2
    return 5 * 2 ** (k - 1) - 4


@dataclass(frozen=True)
class CorralSequencePrediction:
    d: int
    sequence: list = field(repr=False)  # list of frozensets of 0-based indices

    @property
    def count(self) -> int:
        return len(self.sequence)


def predicted_sequence(d: int) -> CorralSequencePrediction:
    """Fully unrolled corral sequence for the minnorm rule on ``P_d``."""
    _check_odd(d)
    seq = [frozenset({0})]
    for dim in range(3, d + 1, 2):
        p, q, r, s = new_point_indices(dim)
        last = seq[-1]
        seq = (
            seq
            + [last | {p}, frozenset({p, q}), frozenset({q, r}), frozenset({r, s})]
            + [c | {r, s} for c in seq]
        )
    return CorralSequencePrediction(d, seq)


def reentry_example() -> Instance:
    """Four points in ``Q^3`` where the first point leaves and comes back."""
    return Instance((
        vec(1, 0, 0),
        vec("1/2", "1/4", 1),
        vec("1/2", "1/4", -1),
        vec(-2, "1/4", 0),
    ))


def figure1_example() -> Instance:
    """The 3-simplex whose minnorm and linopt runs differ."""
    return Instance((
        vec("0.8", "0.9", 0),
        vec("1.5", "-0.5", 0),
        vec(-1, -1, 2),
        vec(-4, "1.5", 2),
    ))


@dataclass
class ExponentialReport:
    d: int
    rule: Rule
    observed: int
    predicted: int
    sequence_match: bool
    mismatches: list  # (position, observed corral, predicted corral)

    @property
    def match(self) -> bool:
        return self.observed == self.predicted and self.sequence_match


def verify_exponential(d: int, rule: Rule = Rule.MINNORM) -> ExponentialReport:
    """Run the solver on ``P_d`` and diff its corrals against the prediction."""
    record = generate_pd(d)
    result = solve(record.instance, rule)
    observed = [frozenset(e.corral) for e in result.trace
                if e.kind is EventKind.CORRAL_REACHED]
    predicted = predicted_sequence(d).sequence
    mismatches = []
    for pos in range(max(len(observed), len(predicted))):
        o = observed[pos] if pos < len(observed) else None
        p = predicted[pos] if pos < len(predicted) else None
        if o != p:
            mismatches.append((pos, o, p))
    return ExponentialReport(d, rule, len(observed), predicted_count(d),
                             not mismatches, mismatches)
