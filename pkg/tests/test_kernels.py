import os
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from minnorm import _kernels_py, kernels

from oracles import sym_rank, sym_solve

try:
    from minnorm import _kernels as _kernels_gmp
except ImportError:
    _kernels_gmp = None

BACKENDS = [_kernels_py] + ([_kernels_gmp] if _kernels_gmp is not None else [])
ids = [m.__name__.rsplit(".", 1)[-1] for m in BACKENDS]

big = st.integers(min_value=-10**40, max_value=10**40)
small = st.integers(min_value=-3, max_value=3)


def square(elems, max_n=6):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.lists(elems, min_size=n, max_size=n), min_size=n, max_size=n))


def rect(elems):
    return st.tuples(st.integers(1, 5), st.integers(1, 5)).flatmap(
        lambda s: st.lists(st.lists(elems, min_size=s[1], max_size=s[1]),
                           min_size=s[0], max_size=s[0]))


@pytest.mark.parametrize("k", BACKENDS, ids=ids)
class TestKernel:
    def test_solve_identity(self, k):
        y, det = k.solve([[1, 0], [0, 1]], [3, 4])
        assert [Fraction(v, det) for v in y] == [3, 4]

    def test_solve_small(self, k):
        y, det = k.solve([[1, 1], [-1, 2]], [1, 0])
        assert [Fraction(v, det) for v in y] == [Fraction(2, 3), Fraction(1, 3)]

    def test_solve_singular(self, k):
        assert k.solve([[1, 1], [2, 2]], [1, 1]) is None

    def test_rank_zero_matrix(self, k):
        assert k.rank([[0, 0], [0, 0]]) == 0

    def test_dots_and_combine(self, k):
        assert k.dots([[1, 2], [3, 4]], [5, 6]) == [17, 39]
        assert k.combine([2, -1], [[1, 2], [3, 4]]) == [-1, 0]

    @settings(max_examples=60, deadline=None)
    @given(m=square(small))
    def test_solve_matches_sympy(self, k, m):
        rhs = [sum(row) + 1 for row in m]
        res = k.solve(m, rhs)
        ref = sym_solve(m, rhs)
        if ref is None:
            assert res is None
        else:
            y, det = res
            assert tuple(Fraction(v, det) for v in y) == ref

    @settings(max_examples=60, deadline=None)
    @given(m=rect(small))
    def test_rank_matches_sympy(self, k, m):
        assert k.rank(m) == sym_rank(m)

    @settings(max_examples=40, deadline=None)
    @given(m=rect(big))
    def test_gram_is_symmetric_and_exact(self, k, m):
        g = k.gram(m)
        for i, a in enumerate(m):
            for j, b in enumerate(m):
                assert g[i][j] == g[j][i] == sum(x * y for x, y in zip(a, b))


@pytest.mark.skipif(_kernels_gmp is None, reason="extension not built")
@settings(max_examples=80, deadline=None)
@given(m=square(big, 5), rhs_seed=big)
def test_backends_agree(m, rhs_seed):
    rhs = [rhs_seed + i for i in range(len(m))]
    assert _kernels_gmp.solve(m, rhs) == _kernels_py.solve(m, rhs)
    assert _kernels_gmp.rank(m) == _kernels_py.rank(m)
    assert _kernels_gmp.gram(m) == _kernels_py.gram(m)
    assert _kernels_gmp.dots(m, m[0]) == _kernels_py.dots(m, m[0])
    assert _kernels_gmp.combine(m[0], m) == _kernels_py.combine(m[0], m)


def test_backend_is_reported():
    assert kernels.BACKEND in ("gmp", "python")
    if kernels.BACKEND == "python":
        assert kernels.Rational is Fraction


def test_fallback_selected_by_environment():
    code = "from minnorm import kernels; print(kernels.BACKEND, kernels.Rational.__name__)"
    env = dict(os.environ, MINNORM_BACKEND="python")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                         text=True, check=True).stdout.split()
    assert out == ["python", "Fraction"]


def test_fallback_runs_the_solver():
    code = ("from minnorm.hard import figure1_example;"
            "from minnorm.wolfe import solve;"
            "print(len(solve(figure1_example()).corrals))")
    env = dict(os.environ, MINNORM_BACKEND="python")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                         text=True, check=True).stdout.strip()
    assert out == "4"
