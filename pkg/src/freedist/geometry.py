"""Polynomial vector fields, differential forms, frames, and coframes.

A rank-l frame consists of the l given fields plus the pairwise fields
obtained from negated Lie brackets; together they must span the tangent
space with constant determinant (unimodularity), which keeps the dual
coframe polynomial.  Structure functions are the coefficients of each
coframe differential in the basis of coframe wedge products.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple, Union

from .errors import (DegenerateFrameError, NotFreeDistributionError,
                     UnsupportedFrameError)
from .linalg import poly_adjugate, poly_det
from .polynomials import Chart, Polynomial
from .scalars import ExactScalar, ScalarLike

FrameKey = Tuple[str, object]  # ('s', i) or ('p', (j, k)) with j < k


class VectorField:
    """A polynomial vector field on a chart, stored componentwise."""

    __slots__ = ("chart", "components")

    def __init__(self, chart: Chart, components: Sequence[Polynomial]):
        if len(components) != chart.ncoords:
            raise ValueError("component count does not match the chart")
        object.__setattr__(self, "chart", chart)
        object.__setattr__(self, "components", tuple(components))

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("VectorField is immutable")

    @staticmethod
    def zero(chart: Chart) -> "VectorField":
        z = Polynomial.zero(chart)
        return VectorField(chart, [z] * chart.ncoords)

    @staticmethod
    def coordinate_x(chart: Chart, i: int) -> "VectorField":
        comps = [Polynomial.zero(chart)] * chart.ncoords
        comps[chart.x_index(i)] = Polynomial.const(chart, ExactScalar.one())
        return VectorField(chart, comps)

    @staticmethod
    def coordinate_y(chart: Chart, j: int, k: int) -> "VectorField":
        comps = [Polynomial.zero(chart)] * chart.ncoords
        comps[chart.y_index(j, k)] = Polynomial.const(chart,
                                                      ExactScalar.one())
        return VectorField(chart, comps)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def __add__(self, other: "VectorField") -> "VectorField":
        self._check(other)
        return VectorField(self.chart,
                           [a + b for a, b in zip(self.components,
                                                  other.components)])

    def __sub__(self, other: "VectorField") -> "VectorField":
        self._check(other)
        return VectorField(self.chart,
                           [a - b for a, b in zip(self.components,
                                                  other.components)])

    def __neg__(self) -> "VectorField":
        return VectorField(self.chart, [-a for a in self.components])

    def scale(self, c: Union[Polynomial, ScalarLike, ExactScalar]
              ) -> "VectorField":
        if isinstance(c, Polynomial):
            if c.chart != self.chart:
                raise ValueError("mismatched charts in vector-field scaling")
            return VectorField(self.chart, [a * c for a in self.components])
        return VectorField(self.chart, [a.scale(c) for a in self.components])

    def apply(self, p: Polynomial) -> Polynomial:
        """Directional derivative of a polynomial along this field."""
        if p.chart != self.chart:
            raise ValueError("mismatched charts in directional derivative")
        out = Polynomial.zero(self.chart)
        for d, comp in enumerate(self.components):
            if comp.is_zero():
                continue
            dp = p.partial_derivative(d)
            if not dp.is_zero():
                out = out + comp * dp
        return out

    def evaluate(self, point: Dict[int, ExactScalar]) -> List[ExactScalar]:
        return [c.evaluate(point) for c in self.components]

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, VectorField) and self.chart == other.chart
                and self.components == other.components)

    __hash__ = None  # type: ignore[assignment]

    def _check(self, other: "VectorField") -> None:
        if self.chart != other.chart:
            raise ValueError("mismatched charts in vector-field arithmetic")

    def __repr__(self) -> str:  # pragma: no cover
        parts = [f"({c.to_expr()})*D{self.chart.name(d)}"
                 for d, c in enumerate(self.components) if not c.is_zero()]
        return " + ".join(parts) if parts else "0"


def lie_bracket(v: VectorField, w: VectorField) -> VectorField:
    """Commutator [v, w] with components v(w^c) - w(v^c)."""
    if v.chart != w.chart:
        raise ValueError("mismatched charts in Lie bracket")
    return VectorField(v.chart, [v.apply(wc) - w.apply(vc)
                                 for vc, wc in zip(v.components,
                                                   w.components)])


class DifferentialForm:
    """A polynomial differential form of degree 1 or 2.

    Degree-1 terms are keyed by ``(c,)`` and degree-2 terms by ``(d, c)``
    with ``d < c``, coordinate indices into the chart.
    """

    __slots__ = ("chart", "degree", "terms")

    def __init__(self, chart: Chart, degree: int,
                 terms: Dict[Tuple[int, ...], Polynomial]):
        if degree not in (1, 2):
            raise ValueError("only degree-1 and degree-2 forms are supported")
        clean = {k: v for k, v in terms.items() if not v.is_zero()}
        object.__setattr__(self, "chart", chart)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("DifferentialForm is immutable")

    @staticmethod
    def zero(chart: Chart, degree: int) -> "DifferentialForm":
        return DifferentialForm(chart, degree, {})

    @staticmethod
    def dcoord(chart: Chart, idx: int) -> "DifferentialForm":
        one = Polynomial.const(chart, ExactScalar.one())
        return DifferentialForm(chart, 1, {(idx,): one})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "DifferentialForm") -> "DifferentialForm":
        self._check(other)
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms[k] + v if k in terms else v
        return DifferentialForm(self.chart, self.degree, terms)

    def __sub__(self, other: "DifferentialForm") -> "DifferentialForm":
        return self + (-other)

    def __neg__(self) -> "DifferentialForm":
        return DifferentialForm(self.chart, self.degree,
                                {k: -v for k, v in self.terms.items()})

    def scale(self, c: Union[Polynomial, ScalarLike, ExactScalar]
              ) -> "DifferentialForm":
        if isinstance(c, Polynomial):
            return DifferentialForm(self.chart, self.degree,
                                    {k: v * c for k, v in self.terms.items()})
        return DifferentialForm(self.chart, self.degree,
                                {k: v.scale(c) for k, v in self.terms.items()})

    def d(self) -> "DifferentialForm":
        """Exterior derivative of a degree-1 form."""
        if self.degree != 1:
            raise ValueError("exterior derivative implemented for degree 1")
        terms: Dict[Tuple[int, ...], Polynomial] = {}
        for (c,), g in self.terms.items():
            for dd in range(self.chart.ncoords):
                if dd == c:
                    continue
                dg = g.partial_derivative(dd)
                if dg.is_zero():
                    continue
                if dd < c:
                    key, val = (dd, c), dg
                else:
                    key, val = (c, dd), -dg
                terms[key] = terms[key] + val if key in terms else val
        return DifferentialForm(self.chart, 2, terms)

    def wedge(self, other: "DifferentialForm") -> "DifferentialForm":
        if self.degree != 1 or other.degree != 1:
            raise ValueError("wedge implemented for two degree-1 forms")
        if self.chart != other.chart:
            raise ValueError("mismatched charts in wedge product")
        terms: Dict[Tuple[int, ...], Polynomial] = {}
        for (a,), ga in self.terms.items():
            for (b,), gb in other.terms.items():
                if a == b:
                    continue
                prod = ga * gb
                if a < b:
                    key, val = (a, b), prod
                else:
                    key, val = (b, a), -prod
                terms[key] = terms[key] + val if key in terms else val
        return DifferentialForm(self.chart, 2, terms)

    def evaluate(self, *fields: VectorField) -> Polynomial:
        if len(fields) != self.degree:
            raise ValueError("wrong number of field arguments")
        for f in fields:
            if f.chart != self.chart:
                raise ValueError("mismatched charts in form evaluation")
        out = Polynomial.zero(self.chart)
        if self.degree == 1:
            v = fields[0]
            for (c,), g in self.terms.items():
                vc = v.components[c]
                if not vc.is_zero():
                    out = out + g * vc
            return out
        v, w = fields
        for (d, c), g in self.terms.items():
            t = v.components[d] * w.components[c] \
                - v.components[c] * w.components[d]
            if not t.is_zero():
                out = out + g * t
        return out

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, DifferentialForm)
                and self.chart == other.chart and self.degree == other.degree
                and self.terms == other.terms)

    __hash__ = None  # type: ignore[assignment]

    def _check(self, other: "DifferentialForm") -> None:
        if self.chart != other.chart:
            raise ValueError("mismatched charts in form arithmetic")
        if self.degree != other.degree:
            raise ValueError("mismatched degrees in form arithmetic")


def frame_keys(l: int) -> List[FrameKey]:
    """Canonical frame ordering: singles 1..l, then pairs in lex order."""
    keys: List[FrameKey] = [("s", i) for i in range(1, l + 1)]
    keys.extend(("p", (j, k)) for j in range(1, l + 1)
                for k in range(j + 1, l + 1))
    return keys


class Frame:
    """The l given fields plus their derived pair fields."""

    def __init__(self, chart: Chart, l: int, singles: List[VectorField],
                 pairs: Dict[Tuple[int, int], VectorField],
                 det: ExactScalar, point: Dict[int, ExactScalar]):
        self.chart = chart
        self.l = l
        self.singles = singles
        self.pairs = pairs
        self.det = det
        self.point = point
        self._coframe: Optional["Coframe"] = None

    def keys(self) -> List[FrameKey]:
        return frame_keys(self.l)

    def field(self, key: FrameKey) -> VectorField:
        if key[0] == "s":
            return self.singles[key[1] - 1]
        return self.pairs[key[1]]


class Coframe:
    """1-forms dual to a frame: one per single index, one per pair."""

    def __init__(self, l: int, cosingles: List[DifferentialForm],
                 copairs: Dict[Tuple[int, int], DifferentialForm]):
        self.l = l
        self.cosingles = cosingles
        self.copairs = copairs

    def form(self, key: FrameKey) -> DifferentialForm:
        if key[0] == "s":
            return self.cosingles[key[1] - 1]
        return self.copairs[key[1]]


def _const_det(m: List[List[ExactScalar]]) -> ExactScalar:
    """Determinant of a scalar matrix by exact Gaussian elimination."""
    n = len(m)
    a = [row[:] for row in m]
    det = ExactScalar.one()
    for k in range(n):
        piv = next((r for r in range(k, n) if a[r][k]), None)
        if piv is None:
            return ExactScalar.zero()
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det = det * a[k][k]
        inv = a[k][k].inverse()
        for r in range(k + 1, n):
            f = a[r][k] * inv
            if not f:
                continue
            for c in range(k, n):
                a[r][c] = a[r][c] - f * a[k][c]
    return det


def _assemble(fields: Sequence[VectorField]
              ) -> Tuple[Chart, int, List[VectorField],
                         Dict[Tuple[int, int], VectorField],
                         List[List[Polynomial]]]:
    chart = fields[0].chart
    l = chart.l
    if len(fields) != l:
        raise ValueError(f"expected {l} fields for this chart, "
                         f"got {len(fields)}")
    for f in fields:
        if f.chart != chart:
            raise ValueError("all frame fields must share one chart")
    singles = list(fields)
    pairs: Dict[Tuple[int, int], VectorField] = {}
    for j in range(1, l + 1):
        for k in range(j + 1, l + 1):
            pairs[(j, k)] = -lie_bracket(singles[j - 1], singles[k - 1])
    keys = frame_keys(l)
    cols = [singles[key[1] - 1] if key[0] == "s" else pairs[key[1]]
            for key in keys]
    n = chart.ncoords
    jac = [[cols[a].components[c] for a in range(n)] for c in range(n)]
    return chart, l, singles, pairs, jac


def build_frame(fields: Sequence[VectorField],
                point: Optional[Dict[int, ExactScalar]] = None) -> Frame:
    """Assemble the full frame, checking spanning and unimodularity.

    Raises DegenerateFrameError if the full frame fails to span at the base
    point (default: origin), then UnsupportedFrameError if its determinant
    is not a nonzero constant.
    """
    chart, l, singles, pairs, jac = _assemble(fields)
    n = chart.ncoords
    if point is None:
        point = {idx: ExactScalar.zero() for idx in range(n)}
    base = [[e.evaluate(point) for e in row] for row in jac]
    if not _const_det(base):
        raise DegenerateFrameError(
            "frame and its pair fields fail to span the tangent space at "
            "the base point")
    det_poly = poly_det(jac)
    if not det_poly.is_constant():
        raise UnsupportedFrameError(
            "frame determinant is not constant; only unimodular frames "
            "are supported")
    return Frame(chart, l, singles, pairs, det_poly.constant_value(), point)


def check_nondegenerate(frame_or_fields) -> bool:
    """True iff the full frame matrix is unimodular (invertible everywhere).

    Accepts a built Frame or a raw sequence of l vector fields.
    """
    if isinstance(frame_or_fields, Frame):
        return bool(frame_or_fields.det)
    try:
        _, _, _, _, jac = _assemble(frame_or_fields)
    except ValueError:
        return False
    det_poly = poly_det(jac)
    return det_poly.is_constant() and bool(det_poly.constant_value())


def dual_coframe(frame: Frame) -> Coframe:
    """The coframe dual to the full frame, with polynomial coefficients.

    Verifies the duality identity (value delta on every frame pair) exactly
    before returning; the result is cached on the frame.
    """
    if frame._coframe is not None:
        return frame._coframe
    chart = frame.chart
    n = chart.ncoords
    keys = frame.keys()
    cols = [frame.field(key) for key in keys]
    jac = [[cols[a].components[c] for a in range(n)] for c in range(n)]
    adj = poly_adjugate(jac)
    inv_det = frame.det.inverse()
    coforms: List[DifferentialForm] = []
    for a in range(n):
        terms = {(c,): adj[a][c].scale(inv_det) for c in range(n)
                 if not adj[a][c].is_zero()}
        coforms.append(DifferentialForm(chart, 1, terms))
    for a in range(n):
        for b in range(n):
            val = coforms[a].evaluate(cols[b])
            want = ExactScalar.one() if a == b else ExactScalar.zero()
            if val != Polynomial.const(chart, want):
                raise AssertionError("coframe duality identity failed")
    cosingles = coforms[:frame.l]
    copairs = {key[1]: coforms[a] for a, key in enumerate(keys)
               if key[0] == "p"}
    coframe = Coframe(frame.l, cosingles, copairs)
    frame._coframe = coframe
    return coframe


class StructureFunctions:
    """Coefficients of the coframe differentials over coframe wedge pairs.

    Blocks (1-based indices; pair indices (j, k) with j < k):
      ss_sp[(r, i, (j,k))]         : single target, (single, pair) arguments
      ss_pp[(r, (i,j), (k,l))]     : single target, (pair, pair) arguments
      pp_sp[((r,s), i, (j,k))]     : pair target, (single, pair) arguments
      pp_pp[((r,s), (i,j), (k,l))] : pair target, (pair, pair) arguments
    Pair-pair argument keys are stored with (i,j) < (k,l) lexicographically;
    the swapped order is the negative (see pair_pair()).
    """

    def __init__(self, l: int, chart: Chart):
        self.l = l
        self.chart = chart
        self.ss_sp: Dict[Tuple[int, int, Tuple[int, int]], Polynomial] = {}
        self.ss_pp: Dict[Tuple[int, Tuple[int, int], Tuple[int, int]],
                         Polynomial] = {}
        self.pp_sp: Dict[Tuple[Tuple[int, int], int, Tuple[int, int]],
                         Polynomial] = {}
        self.pp_pp: Dict[Tuple[Tuple[int, int], Tuple[int, int],
                               Tuple[int, int]], Polynomial] = {}

    def single_pair(self, target, arg_single: int,
                    arg_pair: Tuple[int, int]) -> Polynomial:
        """Value keyed by (target, single argument, pair argument); target
        may be a single index or a pair."""
        table = self.ss_sp if isinstance(target, int) else self.pp_sp
        return table.get((target, arg_single, arg_pair),
                         Polynomial.zero(self.chart))

    def pair_pair(self, target, left: Tuple[int, int],
                  right: Tuple[int, int]) -> Polynomial:
        """Signed lookup of a (pair, pair)-argument value."""
        if left == right:
            return Polynomial.zero(self.chart)
        table = self.ss_pp if isinstance(target, int) else self.pp_pp
        if left < right:
            return table.get((target, left, right),
                             Polynomial.zero(self.chart))
        v = table.get((target, right, left))
        return -v if v is not None else Polynomial.zero(self.chart)

    def is_zero(self) -> bool:
        return not (self.ss_sp or self.ss_pp or self.pp_sp or self.pp_pp)

    def blocks(self):
        return (("ss_sp", self.ss_sp), ("ss_pp", self.ss_pp),
                ("pp_sp", self.pp_sp), ("pp_pp", self.pp_pp))


def structure_functions(frame: Frame) -> StructureFunctions:
    """Expand each coframe differential over coframe wedge products.

    Verifies the expansion exactly as coordinate 2-forms and checks that
    each pair coframe differential carries exactly its own single wedge
    pair with unit coefficient in the single-single block (raising
    NotFreeDistributionError otherwise).
    """
    l = frame.l
    chart = frame.chart
    coframe = dual_coframe(frame)
    keys = frame.keys()
    fields = {key: frame.field(key) for key in keys}
    sf = StructureFunctions(l, chart)
    for tkey in keys:
        dtheta = coframe.form(tkey).d()
        recon = DifferentialForm.zero(chart, 2)
        for ui in range(len(keys)):
            for vi in range(ui + 1, len(keys)):
                ukey, vkey = keys[ui], keys[vi]
                coeff = dtheta.evaluate(fields[ukey], fields[vkey])
                if ukey[0] == "s" and vkey[0] == "s":
                    if tkey[0] == "s":
                        if not coeff.is_zero():
                            raise AssertionError(
                                "single coframe differential has a "
                                "single-single component")
                        continue
                    want = (ExactScalar.one()
                            if tkey[1] == (ukey[1], vkey[1])
                            else ExactScalar.zero())
                    if coeff != Polynomial.const(chart, want):
                        raise NotFreeDistributionError(
                            "pair coframe differentials do not reproduce "
                            "the single wedge pairs; the distribution is "
                            "not free of the stated rank")
                    if coeff.is_zero():
                        continue
                elif not coeff.is_zero():
                    _store(sf, tkey, ukey, vkey, coeff)
                else:
                    continue
                recon = recon + coframe.form(ukey).wedge(
                    coframe.form(vkey)).scale(coeff)
        if recon != dtheta:
            raise AssertionError(
                "structure-function expansion failed to reproduce the "
                "coframe differential")
    return sf


def _store(sf: StructureFunctions, tkey: FrameKey, ukey: FrameKey,
           vkey: FrameKey, coeff: Polynomial) -> None:
    target = tkey[1]
    if ukey[0] == "s" and vkey[0] == "p":
        table = sf.ss_sp if tkey[0] == "s" else sf.pp_sp
        table[(target, ukey[1], vkey[1])] = coeff
    elif ukey[0] == "p" and vkey[0] == "p":
        table = sf.ss_pp if tkey[0] == "s" else sf.pp_pp
        table[(target, ukey[1], vkey[1])] = coeff
    else:  # pragma: no cover - canonical ordering puts singles first
        raise AssertionError("unexpected argument ordering")
