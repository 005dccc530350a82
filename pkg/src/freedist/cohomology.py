"""Harmonic cochain spaces of the constant-coefficient graded complex.

A cochain is harmonic when both the differential and the codifferential
annihilate it.  For each homogeneity the space is computed exactly: the
candidate unit cochains span a finite space, both operators are evaluated
on every unit, and the joint kernel is extracted by sparse elimination
over the exact scalar field.
"""

from __future__ import annotations

from typing import Dict, Iterable, List, Tuple

from .algebra import (BasisKey, Chain, GradedAlgebra, ODD, TermKey, algebra,
                      codifferential, differential)
from .errors import UnsupportedError
from .linalg import kernel_of_columns
from .scalars import ExactScalar


class HarmonicSpace:
    """An exact basis of the harmonic k-cochains at one homogeneity."""

    def __init__(self, l: int, k: int, h: int, basis: Tuple[Chain, ...]):
        self.l = l
        self.k = k
        self.h = h
        self.basis = basis
        self.dimension = len(basis)


def _term_keys(ga: GradedAlgebra, k: int, h: int) -> List[TermKey]:
    """All degree-k term keys of the named homogeneity, in canonical order
    (slots strictly increasing in the positive-part rank order)."""
    pos = ga.positive_keys
    keys: List[TermKey] = []
    if k == 1:
        slot_tuples: Iterable[Tuple[BasisKey, ...]] = ((s,) for s in pos)
    else:
        slot_tuples = ((pos[a], pos[b])
                       for a in range(len(pos))
                       for b in range(a + 1, len(pos)))
    for slots in slot_tuples:
        sgrade = sum(GradedAlgebra.grade(s) for s in slots)
        for target in ga.odd_keys:
            if sgrade + GradedAlgebra.grade(target) == h:
                keys.append((slots, target))
    return keys


def harmonic_space(l: int, k: int, h: int) -> HarmonicSpace:
    """The harmonic k-cochains of homogeneity h (k = 1 or 2, l >= 3).

    Every returned basis chain is verified to be annihilated by both
    operators and to be homogeneous of the requested degree.
    """
    if l < 3:
        raise UnsupportedError("harmonic spaces require rank at least 3")
    if k not in (1, 2):
        raise UnsupportedError("harmonic spaces are computed for cochain "
                               "degrees 1 and 2 only")
    ga = algebra(l)
    keys = _term_keys(ga, k, h)
    one = ExactScalar.one()
    columns: List[Dict[object, ExactScalar]] = []
    for tk in keys:
        unit = Chain(ODD, l, k, {tk: one})
        col: Dict[object, ExactScalar] = {}
        for out_key, v in differential(unit).terms.items():
            col[("d", out_key)] = v
        for out_key, v in codifferential(unit).terms.items():
            col[("cd", out_key)] = v
        columns.append(col)
    basis: List[Chain] = []
    for vec in kernel_of_columns(columns):
        terms = {tk: c for tk, c in zip(keys, vec) if c}
        chain = Chain(ODD, l, k, terms)
        if not differential(chain).is_zero():
            raise AssertionError("harmonic basis chain is not closed")
        if not codifferential(chain).is_zero():
            raise AssertionError("harmonic basis chain is not coclosed")
        if any(chain.homogeneity(tk) != h for tk in chain.terms):
            raise AssertionError("harmonic basis chain is not homogeneous")
        basis.append(chain)
    return HarmonicSpace(l, k, h, tuple(basis))


def harmonic_h1_scan(l: int, h_range: Iterable[int]) -> Dict[int, int]:
    """Dimensions of the harmonic 1-cochain spaces over a homogeneity range."""
    return {h: harmonic_space(l, 1, h).dimension for h in h_range}
