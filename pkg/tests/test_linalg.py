"""Exact kernels, linear solves, determinants, and inertia."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from freedist.linalg import (FactoredSystem, kernel_of_columns, poly_adjugate,
                             poly_det, signature_of_symmetric, solve_linear)
from freedist.polynomials import Polynomial, chart
from freedist.scalars import ExactScalar

CH = chart(3)


def sc(v):
    return ExactScalar.of(v)


def const(v):
    return Polynomial.const(CH, sc(v))


def test_kernel_of_independent_columns_is_trivial():
    cols = [{"r1": sc(1)}, {"r2": sc(1)}, {"r1": sc(1), "r2": sc(1)}]
    # third column = first + second: kernel is one-dimensional
    ker = kernel_of_columns(cols)
    assert len(ker) == 1
    v = ker[0]
    # the relation c0*col0 + c1*col1 + c2*col2 = 0 must hold exactly
    rows = {}
    for c, col in zip(v, cols):
        for k, w in col.items():
            rows[k] = rows.get(k, sc(0)) + c * w
    assert all(x.is_zero() for x in rows.values())
    assert any(not x.is_zero() for x in v)


def test_kernel_of_zero_columns_is_full():
    ker = kernel_of_columns([{}, {}])
    assert len(ker) == 2


def test_kernel_empty_input():
    assert kernel_of_columns([]) == []


@given(st.lists(st.lists(st.fractions(min_value=-5, max_value=5,
                                      max_denominator=4),
                         min_size=3, max_size=3),
                min_size=5, max_size=5))
@settings(deadline=None, max_examples=40)
def test_kernel_vectors_annihilate_columns(rows):
    cols = []
    for j in range(3):
        col = {}
        for i in range(5):
            v = sc(rows[i][j])
            if not v.is_zero():
                col[i] = v
        cols.append(col)
    for vec in kernel_of_columns(cols):
        for i in range(5):
            acc = sc(0)
            for j in range(3):
                acc = acc + vec[j] * cols[j].get(i, sc(0))
            assert acc.is_zero()


def test_solve_linear_unique_solution():
    # x0 + x1 = 3, x0 - x1 = 1  ->  x0 = 2, x1 = 1
    rows = [{0: sc(1), 1: sc(1)}, {0: sc(1), 1: sc(-1)}]
    rhs = [const(3), const(1)]
    xs = solve_linear(rows, rhs, 2)
    assert xs[0] == const(2)
    assert xs[1] == const(1)


def test_solve_linear_polynomial_rhs():
    x1 = Polynomial.coordinate(CH, CH.x_index(1))
    rows = [{0: sc(2)}, {0: sc(2)}]  # redundant row
    xs = solve_linear(rows, [x1, x1], 1)
    assert xs[0] == x1.scale(Fraction(1, 2))


def test_solve_linear_rejects_inconsistent():
    rows = [{0: sc(1)}, {0: sc(1)}]
    with pytest.raises(ValueError):
        solve_linear(rows, [const(1), const(2)], 1)


def test_solve_linear_rejects_underdetermined():
    with pytest.raises(ValueError):
        solve_linear([{0: sc(1)}], [const(1)], 2)


def test_factored_system_matches_direct_solve():
    rows = [{0: sc(1), 1: sc(2)}, {1: sc(1)}, {0: sc(1), 1: sc(3)}]
    fs = FactoredSystem(rows, 2)
    for rhs in ([const(5), const(1), const(6)],
                [const(0), const(7), const(7)]):
        assert fs.solve(rhs) == solve_linear(rows, rhs, 2)


def test_factored_system_checks_consistency_per_solve():
    rows = [{0: sc(1)}, {0: sc(1)}]
    fs = FactoredSystem(rows, 1)
    assert fs.solve([const(4), const(4)]) == [const(4)]
    with pytest.raises(ValueError):
        fs.solve([const(4), const(5)])


@given(st.lists(st.lists(st.integers(min_value=-4, max_value=4),
                         min_size=3, max_size=3),
                min_size=3, max_size=3))
@settings(deadline=None, max_examples=40)
def test_adjugate_identity(mat):
    m = [[const(v) for v in row] for row in mat]
    det = poly_det(m)
    adj = poly_adjugate(m)
    n = 3
    for i in range(n):
        for j in range(n):
            acc = Polynomial.zero(CH)
            for k in range(n):
                acc = acc + m[i][k] * adj[k][j]
            assert acc == (det if i == j else Polynomial.zero(CH))


def test_poly_det_with_polynomial_entries():
    x1 = Polynomial.coordinate(CH, CH.x_index(1))
    x2 = Polynomial.coordinate(CH, CH.x_index(2))
    m = [[const(1), x1], [x2, const(1)]]
    assert poly_det(m) == const(1) - x1 * x2


def test_poly_det_triangular():
    x1 = Polynomial.coordinate(CH, CH.x_index(1))
    m = [[const(2), x1, x1 * x1],
         [Polynomial.zero(CH), const(3), x1],
         [Polynomial.zero(CH), Polynomial.zero(CH), const(-1)]]
    assert poly_det(m) == const(-6)


def test_signature_diagonal():
    m = [[sc(2), sc(0)], [sc(0), sc(-3)]]
    assert signature_of_symmetric(m) == (1, 1)


def test_signature_needs_off_diagonal_pivot():
    # hyperbolic plane: signature (1,1) with zero diagonal
    m = [[sc(0), sc(1)], [sc(1), sc(0)]]
    assert signature_of_symmetric(m) == (1, 1)


def test_signature_with_sqrt2_entries():
    r = ExactScalar.sqrt2()
    m = [[r, sc(0)], [sc(0), -r]]
    assert signature_of_symmetric(m) == (1, 1)


def test_signature_degenerate_block():
    m = [[sc(1), sc(0)], [sc(0), sc(0)]]
    assert signature_of_symmetric(m) == (1, 0)


def test_signature_rejects_asymmetric():
    with pytest.raises(ValueError):
        signature_of_symmetric([[sc(0), sc(1)], [sc(2), sc(0)]])
