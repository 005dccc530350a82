"""Exact linear algebra over Q(sqrt2) and its polynomial ring.

Everything here is dense-free where it matters: kernels and linear systems
work on sparse dicts, and determinants/adjugates of polynomial matrices use a
column-by-column bitmask dynamic program so the common near-triangular frames
stay cheap.
"""

from __future__ import annotations

from typing import Dict, Hashable, List, Sequence, Tuple

from .polynomials import Polynomial
from .scalars import ExactScalar


def kernel_of_columns(columns: Sequence[Dict[Hashable, ExactScalar]]
                      ) -> List[List[ExactScalar]]:
    """Basis of {c : sum_i c_i * columns[i] = 0}, as coefficient lists.

    Columns are sparse dicts keyed by arbitrary hashable row labels.  The
    returned vectors have one entry per column, in column order.
    """
    zero = ExactScalar.zero()
    pivots: List[Tuple[Hashable, Dict[Hashable, ExactScalar],
                       Dict[int, ExactScalar]]] = []
    kernel: List[List[ExactScalar]] = []
    for i, col in enumerate(columns):
        vec = {k: v for k, v in col.items() if v}
        tail: Dict[int, ExactScalar] = {i: ExactScalar.one()}
        for pkey, pvec, ptail in pivots:
            c = vec.get(pkey)
            if c is None or not c:
                continue
            for k, v in pvec.items():
                w = vec.get(k, zero) - c * v
                if w:
                    vec[k] = w
                elif k in vec:
                    del vec[k]
            for k, v in ptail.items():
                w = tail.get(k, zero) - c * v
                if w:
                    tail[k] = w
                elif k in tail:
                    del tail[k]
        if not vec:
            kernel.append([tail.get(j, zero) for j in range(len(columns))])
            continue
        pkey = min(vec.keys(), key=repr)
        inv = vec[pkey].inverse()
        vec = {k: v * inv for k, v in vec.items()}
        tail = {k: v * inv for k, v in tail.items()}
        pivots.append((pkey, vec, tail))
    return kernel


def solve_linear(rows: Sequence[Dict[int, ExactScalar]],
                 rhs: Sequence[Polynomial],
                 nunknowns: int) -> List[Polynomial]:
    """Solve a sparse exact linear system with polynomial right-hand sides.

    Requires the system to be consistent and of full column rank; raises
    ValueError otherwise.  Returns the unique solution as a list of
    polynomials indexed by unknown.
    """
    if len(rows) != len(rhs):
        raise ValueError("row/rhs length mismatch")
    # eliminated rows: pivot column -> (row dict with pivot coeff 1, rhs poly)
    elim: Dict[int, Tuple[Dict[int, ExactScalar], Polynomial]] = {}
    zero = ExactScalar.zero()
    for row0, b0 in zip(rows, rhs):
        row = {k: v for k, v in row0.items() if v}
        b = b0
        for pcol in sorted(set(row.keys()) & set(elim.keys())):
            c = row.get(pcol)
            if c is None or not c:
                continue
            prow, pb = elim[pcol]
            for k, v in prow.items():
                w = row.get(k, zero) - c * v
                if w:
                    row[k] = w
                elif k in row:
                    del row[k]
            b = b - pb.scale(c)
        if not row:
            if not b.is_zero():
                raise ValueError("inconsistent linear system")
            continue
        pcol = min(row.keys())
        inv = row[pcol].inverse()
        row = {k: v * inv for k, v in row.items()}
        b = b.scale(inv)
        # back-substitute into already-eliminated rows (full Gauss-Jordan)
        for qcol, (qrow, qb) in list(elim.items()):
            c = qrow.get(pcol)
            if c is None or not c:
                continue
            for k, v in row.items():
                w = qrow.get(k, zero) - c * v
                if w:
                    qrow[k] = w
                elif k in qrow:
                    del qrow[k]
            elim[qcol] = (qrow, qb - b.scale(c))
        elim[pcol] = (row, b)
    missing = [j for j in range(nunknowns) if j not in elim]
    if missing:
        raise ValueError(
            f"linear system does not determine unknowns {missing[:5]}"
            + ("..." if len(missing) > 5 else ""))
    return [elim[j][1] for j in range(nunknowns)]


class FactoredSystem:
    """A constant-coefficient sparse system factored once for many solves.

    Rows map unknown indices to scalars.  Requires full column rank (raises
    ValueError otherwise); redundant rows are allowed and every solve
    verifies consistency of its right-hand side exactly.
    """

    def __init__(self, rows: Sequence[Dict[int, ExactScalar]],
                 nunknowns: int):
        self.rows = [dict(r) for r in rows]
        self.nunknowns = nunknowns
        zero = ExactScalar.zero()
        # Gauss-Jordan over [M | I]; tails live in row-index space.
        elim: Dict[int, Tuple[Dict[int, ExactScalar],
                              Dict[int, ExactScalar]]] = {}
        for ridx, row0 in enumerate(self.rows):
            row = {k: v for k, v in row0.items() if v}
            tail: Dict[int, ExactScalar] = {ridx: ExactScalar.one()}
            for pcol in sorted(set(row) & set(elim)):
                c = row.get(pcol)
                if c is None or not c:
                    continue
                prow, ptail = elim[pcol]
                for k, v in prow.items():
                    w = row.get(k, zero) - c * v
                    if w:
                        row[k] = w
                    elif k in row:
                        del row[k]
                for k, v in ptail.items():
                    w = tail.get(k, zero) - c * v
                    if w:
                        tail[k] = w
                    elif k in tail:
                        del tail[k]
            if not row:
                continue  # redundant row; consistency is checked per solve
            pcol = min(row.keys())
            inv = row[pcol].inverse()
            row = {k: v * inv for k, v in row.items()}
            tail = {k: v * inv for k, v in tail.items()}
            for qcol, (qrow, qtail) in list(elim.items()):
                c = qrow.get(pcol)
                if c is None or not c:
                    continue
                for k, v in row.items():
                    w = qrow.get(k, zero) - c * v
                    if w:
                        qrow[k] = w
                    elif k in qrow:
                        del qrow[k]
                for k, v in tail.items():
                    w = qtail.get(k, zero) - c * v
                    if w:
                        qtail[k] = w
                    elif k in qtail:
                        del qtail[k]
            elim[pcol] = (row, tail)
        missing = [j for j in range(nunknowns) if j not in elim]
        if missing:
            raise ValueError(
                f"linear system does not determine unknowns {missing[:5]}"
                + ("..." if len(missing) > 5 else ""))
        # After full Gauss-Jordan each pivot row reads x_j = tail . rhs.
        self._op: List[Dict[int, ExactScalar]] = [
            elim[j][1] for j in range(nunknowns)]

    def solve(self, rhs: Sequence[Polynomial]) -> List[Polynomial]:
        if len(rhs) != len(self.rows):
            raise ValueError("row/rhs length mismatch")
        if not rhs:
            raise ValueError("empty system")
        chart = rhs[0].chart
        xs: List[Polynomial] = []
        for j in range(self.nunknowns):
            acc = Polynomial.zero(chart)
            for r, c in self._op[j].items():
                acc = acc + rhs[r].scale(c)
            xs.append(acc)
        for row, b in zip(self.rows, rhs):
            acc = Polynomial.zero(chart)
            for jj, c in row.items():
                acc = acc + xs[jj].scale(c)
            if acc != b:
                raise ValueError("inconsistent linear system")
        return xs


def _popcount_above(mask: int, r: int) -> int:
    return bin(mask >> (r + 1)).count("1")


def poly_det(m: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Determinant of a square polynomial matrix (bitmask column DP)."""
    n = len(m)
    if n == 0:
        raise ValueError("empty matrix")
    chart = m[0][0].chart
    states: Dict[int, Polynomial] = {0: Polynomial.const(
        chart, ExactScalar.one())}
    for c in range(n):
        nxt: Dict[int, Polynomial] = {}
        for mask, val in states.items():
            for r in range(n):
                if mask & (1 << r):
                    continue
                e = m[r][c]
                if e.is_zero():
                    continue
                term = val * e
                if _popcount_above(mask, r) % 2:
                    term = -term
                nm = mask | (1 << r)
                if nm in nxt:
                    nxt[nm] = nxt[nm] + term
                else:
                    nxt[nm] = term
        states = {k: v for k, v in nxt.items() if not v.is_zero()}
        if not states:
            return Polynomial.zero(chart)
    return states.get((1 << n) - 1, Polynomial.zero(chart))


def poly_adjugate(m: Sequence[Sequence[Polynomial]]
                  ) -> List[List[Polynomial]]:
    """Adjugate matrix: adj[i][j] = (-1)^(i+j) * minor(j, i)."""
    n = len(m)
    chart = m[0][0].chart
    if n == 1:
        return [[Polynomial.const(chart, ExactScalar.one())]]
    adj = [[Polynomial.zero(chart) for _ in range(n)] for _ in range(n)]
    for r in range(n):
        for c in range(n):
            minor = [[m[i][j] for j in range(n) if j != c]
                     for i in range(n) if i != r]
            d = poly_det(minor)
            if (r + c) % 2:
                d = -d
            adj[c][r] = d
    return adj


def signature_of_symmetric(m: Sequence[Sequence[ExactScalar]]
                           ) -> Tuple[int, int]:
    """(positive, negative) inertia of a symmetric matrix over Q(sqrt2),
    computed by exact congruence diagonalization."""
    n = len(m)
    a = [[m[i][j] for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            if a[i][j] != a[j][i]:
                raise ValueError("matrix is not symmetric")
    pos = neg = 0
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][i]), None)
        if piv is None:
            found = None
            for i in range(k, n):
                for j in range(i + 1, n):
                    if a[i][j]:
                        found = (i, j)
                        break
                if found:
                    break
            if found is None:
                break  # remaining block is zero
            i, j = found
            for t in range(n):
                a[i][t] = a[i][t] + a[j][t]
            for t in range(n):
                a[t][i] = a[t][i] + a[t][j]
            piv = i
        if piv != k:
            a[piv], a[k] = a[k], a[piv]
            for t in range(n):
                a[t][piv], a[t][k] = a[t][k], a[t][piv]
        d = a[k][k]
        if d.sign() > 0:
            pos += 1
        else:
            neg += 1
        for r in range(k + 1, n):
            f = a[r][k] / d
            if not f:
                continue
            for t in range(n):
                a[r][t] = a[r][t] - f * a[k][t]
            for t in range(n):
                a[t][r] = a[t][r] - f * a[t][k]
    return pos, neg
