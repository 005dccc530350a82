"""Graded orthogonal Lie algebras, chains, and the normality operators.

Two algebras per rank l:

* the "odd" algebra — matrices annihilating a symmetric form of odd size
  2l+1, carrying a 5-part grading (-2,-1,0,1,2);
* the "even" algebra — matrices annihilating a split form of even size
  2l+2, carrying a 3-part grading (-1,0,1).

All basis matrices are wedges v(Qw)^t - w(Qv)^t of standard vectors, so
every bracket is an honest matrix commutator and structure constants are
never transcribed by hand.  Basis keys name grade and indices:

  odd:  ('lo2',(i,j)) ('lo1',i) ('zero',(i,j)) ('up1',i) ('up2',(i,j))
  even: ('tlo',(r,s)) ('tzero',(r,s)) ('tup',(r,s))   (indices 0..l)

Pair keys always store i<j.  The trace pairing is normalized by -1/2 so
that ('up1',i) is exactly dual to ('lo1',i) and ('up2',p) to ('lo2',p).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .polynomials import Polynomial
from .scalars import ExactScalar

BasisKey = Tuple[str, object]
IntMatrix = Dict[Tuple[int, int], int]
Coefficients = Dict[BasisKey, ExactScalar]

ODD = "odd"
EVEN = "even"

_HALF_ROOT2 = ExactScalar(0, Fraction(1, 2))   # 1/sqrt2
_ROOT2 = ExactScalar.sqrt2()
_NEG_HALF = ExactScalar(Fraction(-1, 2))


# --------------------------------------------------------------------------
# sparse integer matrices
# --------------------------------------------------------------------------

def _mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    out: IntMatrix = {}
    for (r1, c1), v1 in a.items():
        for (r2, c2), v2 in b.items():
            if c1 != r2:
                continue
            key = (r1, c2)
            s = out.get(key, 0) + v1 * v2
            if s:
                out[key] = s
            elif key in out:
                del out[key]
    return out


def _mat_commutator(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    out = dict(_mat_mul(a, b))
    for key, v in _mat_mul(b, a).items():
        s = out.get(key, 0) - v
        if s:
            out[key] = s
        elif key in out:
            del out[key]
    return out


def _mat_trace_product(a: IntMatrix, b: IntMatrix) -> int:
    return sum(v1 * b.get((c1, r1), 0) for (r1, c1), v1 in a.items())


def _wedge(p: int, q: int, qmap: Dict[int, int]) -> IntMatrix:
    """v(Qw)^t - w(Qv)^t for standard vectors e_p, e_q."""
    out: IntMatrix = {}
    for key, val in (((p, qmap[q]), 1), ((q, qmap[p]), -1)):
        s = out.get(key, 0) + val
        if s:
            out[key] = s
        elif key in out:
            del out[key]
    return out


# --------------------------------------------------------------------------
# the algebra pair
# --------------------------------------------------------------------------

class GradedAlgebra:
    """Basis matrices, bracket tables, pairings, and grade data for one l."""

    def __init__(self, l: int):
        if l < 2:
            raise ValueError("rank must be at least 2")
        self.l = l
        self.odd_size = 2 * l + 1
        self.even_size = 2 * l + 2

        # odd algebra: vectors a_i <-> i-1 (i=1..l), center <-> l,
        # b_i <-> l+i; the form pairs a_i with b_i and the center with itself
        qmap = {l: l}
        for i in range(1, l + 1):
            qmap[i - 1] = l + i
            qmap[l + i] = i - 1
        self._odd_qmap = qmap

        # even algebra: a_r <-> r (r=0..l), b_r <-> l+1+r
        tqmap = {}
        for r in range(0, l + 1):
            tqmap[r] = l + 1 + r
            tqmap[l + 1 + r] = r
        self._even_qmap = tqmap

        pairs = [(i, j) for i in range(1, l + 1) for j in range(i + 1, l + 1)]
        tpairs = [(r, s) for r in range(0, l + 1) for s in range(r + 1, l + 1)]
        self.pair_indices = pairs
        self.ext_pair_indices = tpairs

        self.odd_keys: List[BasisKey] = (
            [("lo2", p) for p in pairs]
            + [("lo1", i) for i in range(1, l + 1)]
            + [("zero", (i, j)) for i in range(1, l + 1)
               for j in range(1, l + 1)]
            + [("up1", i) for i in range(1, l + 1)]
            + [("up2", p) for p in pairs])
        self.even_keys: List[BasisKey] = (
            [("tlo", p) for p in tpairs]
            + [("tzero", (r, s)) for r in range(0, l + 1)
               for s in range(0, l + 1)]
            + [("tup", p) for p in tpairs])

        self.odd_mat: Dict[BasisKey, IntMatrix] = {}
        self.odd_readoff: Dict[BasisKey, Tuple[int, int]] = {}
        for key in self.odd_keys:
            kind, idx = key
            if kind == "lo2":
                i, j = idx
                m = _wedge(j - 1, i - 1, qmap)
                pos = (j - 1, l + i)
            elif kind == "lo1":
                m = _wedge(idx - 1, l, qmap)
                pos = (idx - 1, l)
            elif kind == "zero":
                i, j = idx
                m = _wedge(i - 1, l + j, qmap)
                pos = (i - 1, j - 1)
            elif kind == "up1":
                m = _wedge(l + idx, l, qmap)
                pos = (l + idx, l)
            else:  # up2
                i, j = idx
                m = _wedge(l + j, l + i, qmap)
                pos = (l + j, i - 1)
            self.odd_mat[key] = m
            self.odd_readoff[key] = pos
            assert m.get(pos) == 1

        self.even_mat: Dict[BasisKey, IntMatrix] = {}
        self.even_readoff: Dict[BasisKey, Tuple[int, int]] = {}
        for key in self.even_keys:
            kind, idx = key
            if kind == "tlo":
                r, s = idx
                m = _wedge(s, r, tqmap)
                pos = (s, l + 1 + r)
            elif kind == "tzero":
                r, s = idx
                m = _wedge(r, l + 1 + s, tqmap)
                pos = (r, s)
            else:  # tup
                r, s = idx
                m = _wedge(l + 1 + s, l + 1 + r, tqmap)
                pos = (l + 1 + s, r)
            self.even_mat[key] = m
            self.even_readoff[key] = pos
            assert m.get(pos) == 1

        self._tables: Dict[str, Dict[Tuple[BasisKey, BasisKey],
                                     Tuple[Tuple[BasisKey, int], ...]]] = {
            ODD: {}, EVEN: {}}
        self._pairings: Dict[str, Dict[Tuple[BasisKey, BasisKey], int]] = {
            ODD: {}, EVEN: {}}
        self._build_tables(ODD)
        self._build_tables(EVEN)

        # construction sanity: dual normalization and the lowering bracket
        one = 1
        for i in range(1, l + 1):
            assert self.pairing_int(ODD, ("lo1", i), ("up1", i)) == one
        for p in pairs:
            assert self.pairing_int(ODD, ("lo2", p), ("up2", p)) == one
        for tp in tpairs:
            assert self.pairing_int(EVEN, ("tlo", tp), ("tup", tp)) == one
        for i in range(1, l + 1):
            for j in range(i + 1, l + 1):
                got = dict(self.bracket_table(ODD, ("lo1", i), ("lo1", j)))
                assert got == {("lo2", (i, j)): 1}

        self.positive_keys: List[BasisKey] = (
            [("up1", i) for i in range(1, l + 1)]
            + [("up2", p) for p in pairs])
        self.negative_keys: List[BasisKey] = (
            [("lo1", i) for i in range(1, l + 1)]
            + [("lo2", p) for p in pairs])
        self._slot_rank = {k: n for n, k in enumerate(self.positive_keys)}
        self.ext_positive_keys: List[BasisKey] = [("tup", p) for p in tpairs]
        self._ext_slot_rank = {k: n for n, k in
                               enumerate(self.ext_positive_keys)}

    # --- structure data ---------------------------------------------------

    def keys(self, side: str) -> List[BasisKey]:
        return self.odd_keys if side == ODD else self.even_keys

    def mat(self, side: str, key: BasisKey) -> IntMatrix:
        return (self.odd_mat if side == ODD else self.even_mat)[key]

    def size(self, side: str) -> int:
        return self.odd_size if side == ODD else self.even_size

    def form_pairing_map(self, side: str) -> Dict[int, int]:
        return self._odd_qmap if side == ODD else self._even_qmap

    @staticmethod
    def grade(key: BasisKey) -> int:
        return {"lo2": -2, "lo1": -1, "zero": 0, "up1": 1, "up2": 2,
                "tlo": -1, "tzero": 0, "tup": 1}[key[0]]

    def slot_rank(self, side: str, key: BasisKey) -> int:
        table = self._slot_rank if side == ODD else self._ext_slot_rank
        if key not in table:
            raise ValueError(f"{key} is not a positive-part basis key")
        return table[key]

    def dual_slot(self, key: BasisKey) -> BasisKey:
        """Positive-part key dual to a negative-part key (and back)."""
        kind, idx = key
        swap = {"lo1": "up1", "lo2": "up2", "up1": "lo1", "up2": "lo2"}
        return (swap[kind], idx)

    def _build_tables(self, side: str) -> None:
        keys = self.keys(side)
        table = self._tables[side]
        pair_table = self._pairings[side]
        for k1 in keys:
            m1 = self.mat(side, k1)
            for k2 in keys:
                m2 = self.mat(side, k2)
                comm = _mat_commutator(m1, m2)
                coeffs = self.expand_int(side, comm)
                if coeffs:
                    table[(k1, k2)] = tuple(coeffs.items())
                tr = _mat_trace_product(m1, m2)
                if tr:
                    assert tr % 2 == 0
                    pair_table[(k1, k2)] = -tr // 2

    def expand_int(self, side: str, m: IntMatrix) -> Dict[BasisKey, int]:
        """Expand an integer matrix over the basis, verifying exactly."""
        readoff = self.odd_readoff if side == ODD else self.even_readoff
        mats = self.odd_mat if side == ODD else self.even_mat
        coeffs: Dict[BasisKey, int] = {}
        for key, pos in readoff.items():
            v = m.get(pos, 0)
            if v:
                coeffs[key] = v
        recon: IntMatrix = {}
        for key, c in coeffs.items():
            for pos, v in mats[key].items():
                s = recon.get(pos, 0) + c * v
                if s:
                    recon[pos] = s
                elif pos in recon:
                    del recon[pos]
        if recon != m:
            raise AssertionError(
                "matrix does not lie in the algebra spanned by the basis")
        return coeffs

    def bracket_table(self, side: str, k1: BasisKey, k2: BasisKey
                      ) -> Tuple[Tuple[BasisKey, int], ...]:
        return self._tables[side].get((k1, k2), ())

    def pairing_int(self, side: str, k1: BasisKey, k2: BasisKey) -> int:
        return self._pairings[side].get((k1, k2), 0)

    # --- element-level operations (coefficient dicts) ----------------------

    def bracket_coeffs(self, side: str, e1: Coefficients, e2: Coefficients
                       ) -> Coefficients:
        out: Dict[BasisKey, ExactScalar] = {}
        for k1, c1 in e1.items():
            for k2, c2 in e2.items():
                prod = c1 * c2
                if not prod:
                    continue
                for key, n in self.bracket_table(side, k1, k2):
                    s = out.get(key)
                    s = prod * n if s is None else s + prod * n
                    if s:
                        out[key] = s
                    elif key in out:
                        del out[key]
        return out

    def pairing_coeffs(self, side: str, e1: Coefficients, e2: Coefficients
                       ) -> ExactScalar:
        out = ExactScalar.zero()
        for k1, c1 in e1.items():
            for k2, c2 in e2.items():
                n = self.pairing_int(side, k1, k2)
                if n:
                    out = out + c1 * c2 * n
        return out

    # --- the embedding and the positive-part transfer ---------------------

    def embed_key(self, key: BasisKey) -> Coefficients:
        """Image of an odd basis element under the canonical embedding."""
        kind, idx = key
        if kind == "lo2":
            return {("tlo", idx): ExactScalar.one()}
        if kind == "zero":
            return {("tzero", idx): ExactScalar.one()}
        if kind == "up2":
            return {("tup", idx): ExactScalar.one()}
        if kind == "lo1":
            return {("tzero", (idx, 0)): _HALF_ROOT2,
                    ("tlo", (0, idx)): _HALF_ROOT2}
        if kind == "up1":
            return {("tup", (0, idx)): _HALF_ROOT2,
                    ("tzero", (0, idx)): -_HALF_ROOT2}
        raise ValueError(f"not an odd-algebra basis key: {key}")

    def embed_coeffs(self, e: Coefficients) -> Coefficients:
        out: Dict[BasisKey, ExactScalar] = {}
        for key, c in e.items():
            for tkey, tc in self.embed_key(key).items():
                s = out.get(tkey)
                s = c * tc if s is None else s + c * tc
                if s:
                    out[tkey] = s
                elif tkey in out:
                    del out[tkey]
        return out

    def transfer_key(self, key: BasisKey) -> Tuple[BasisKey, ExactScalar]:
        """Positive-part transfer of an odd positive basis element."""
        kind, idx = key
        if kind == "up2":
            return ("tup", idx), ExactScalar.one()
        if kind == "up1":
            return ("tup", (0, idx)), _ROOT2
        raise ValueError(
            "positive-part transfer is defined only on the positive part")

    def transfer_coeffs(self, e: Coefficients) -> Coefficients:
        out: Dict[BasisKey, ExactScalar] = {}
        for key, c in e.items():
            tkey, tc = self.transfer_key(key)
            s = out.get(tkey)
            s = c * tc if s is None else s + c * tc
            if s:
                out[tkey] = s
            elif tkey in out:
                del out[tkey]
        return out

    # --- transfer-defect elements ------------------------------------------

    def defect_up(self, i: int) -> Coefficients:
        return {("tup", (0, i)): ExactScalar.one(),
                ("tzero", (0, i)): ExactScalar.one()}

    def defect_lo(self, r: int) -> Coefficients:
        return {("tlo", (0, r)): ExactScalar.one(),
                ("tzero", (r, 0)): -ExactScalar.one()}

    def defect_diag(self) -> Coefficients:
        return {("tzero", (0, 0)): -_ROOT2}


@lru_cache(maxsize=None)
def algebra(l: int) -> GradedAlgebra:
    return GradedAlgebra(l)


# --------------------------------------------------------------------------
# public element API
# --------------------------------------------------------------------------

class AlgebraElement:
    """An element of one of the two algebras, stored as a sparse matrix."""

    __slots__ = ("algebra", "l", "entries")

    def __init__(self, which: str, l: int,
                 entries: Dict[Tuple[int, int], ExactScalar]):
        if which not in (ODD, EVEN):
            raise ValueError("algebra must be 'odd' or 'even'")
        object.__setattr__(self, "algebra", which)
        object.__setattr__(self, "l", l)
        object.__setattr__(self, "entries",
                           {k: v for k, v in entries.items() if v})

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("AlgebraElement is immutable")

    @staticmethod
    def from_key(which: str, l: int, key: BasisKey) -> "AlgebraElement":
        m = algebra(l).mat(which, key)
        return AlgebraElement(which, l,
                              {pos: ExactScalar.of(v) for pos, v in m.items()})

    @staticmethod
    def from_coefficients(which: str, l: int, coeffs: Coefficients
                          ) -> "AlgebraElement":
        ga = algebra(l)
        entries: Dict[Tuple[int, int], ExactScalar] = {}
        for key, c in coeffs.items():
            for pos, v in ga.mat(which, key).items():
                s = entries.get(pos)
                s = c * v if s is None else s + c * v
                if s:
                    entries[pos] = s
                elif pos in entries:
                    del entries[pos]
        return AlgebraElement(which, l, entries)

    def coefficients(self) -> Coefficients:
        """Expand over the basis, verifying membership exactly."""
        ga = algebra(self.l)
        readoff = (ga.odd_readoff if self.algebra == ODD
                   else ga.even_readoff)
        coeffs: Coefficients = {}
        for key, pos in readoff.items():
            v = self.entries.get(pos)
            if v:
                coeffs[key] = v
        recon = AlgebraElement.from_coefficients(self.algebra, self.l, coeffs)
        if recon.entries != self.entries:
            raise ValueError(
                "matrix does not lie in the algebra spanned by the basis")
        return coeffs

    def is_zero(self) -> bool:
        return not self.entries

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        entries = dict(self.entries)
        for k, v in other.entries.items():
            s = entries.get(k)
            entries[k] = v if s is None else s + v
        return AlgebraElement(self.algebra, self.l, entries)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.algebra, self.l,
                              {k: -v for k, v in self.entries.items()})

    def scale(self, c) -> "AlgebraElement":
        return AlgebraElement(self.algebra, self.l,
                              {k: v * c for k, v in self.entries.items()})

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, AlgebraElement)
                and self.algebra == other.algebra and self.l == other.l
                and self.entries == other.entries)

    __hash__ = None  # type: ignore[assignment]

    def _check(self, other: "AlgebraElement") -> None:
        if self.algebra != other.algebra or self.l != other.l:
            raise ValueError("algebra mismatch")


def basis(which: str, l: int) -> List[Tuple[BasisKey, AlgebraElement]]:
    """All basis elements of one algebra, in canonical grade order."""
    ga = algebra(l)
    return [(key, AlgebraElement.from_key(which, l, key))
            for key in ga.keys(which)]


def bracket(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    x._check(y)
    entries: Dict[Tuple[int, int], ExactScalar] = {}
    for (r1, c1), v1 in x.entries.items():
        for (r2, c2), v2 in y.entries.items():
            if c1 == r2:
                key = (r1, c2)
                s = entries.get(key)
                p = v1 * v2
                entries[key] = p if s is None else s + p
            if c2 == r1:
                key = (r2, c1)
                s = entries.get(key)
                p = v2 * v1
                entries[key] = -p if s is None else s - p
    return AlgebraElement(x.algebra, x.l, entries)


def pairing(x: AlgebraElement, y: AlgebraElement) -> ExactScalar:
    x._check(y)
    tr = ExactScalar.zero()
    for (r1, c1), v1 in x.entries.items():
        v2 = y.entries.get((c1, r1))
        if v2:
            tr = tr + v1 * v2
    return tr * _NEG_HALF


def embed_alpha(x: AlgebraElement) -> AlgebraElement:
    """The canonical embedding of the odd algebra into the even one."""
    if x.algebra != ODD:
        raise ValueError("embedding applies to odd-algebra elements")
    ga = algebra(x.l)
    return AlgebraElement.from_coefficients(
        EVEN, x.l, ga.embed_coeffs(x.coefficients()))


def phi(xi: AlgebraElement) -> AlgebraElement:
    """Positive-part transfer; errors unless xi lies in the positive part."""
    if xi.algebra != ODD:
        raise ValueError("transfer applies to odd-algebra elements")
    ga = algebra(xi.l)
    coeffs = xi.coefficients()
    for key in coeffs:
        if key[0] not in ("up1", "up2"):
            raise ValueError(
                "argument does not lie in the positive part")
    return AlgebraElement.from_coefficients(
        EVEN, xi.l, ga.transfer_coeffs(coeffs))


def delta_elements(l: int) -> Dict[Tuple[str, int], AlgebraElement]:
    """The transfer-defect elements, keyed ('up', i) and ('lo', i)."""
    ga = algebra(l)
    out: Dict[Tuple[str, int], AlgebraElement] = {}
    for i in range(1, l + 1):
        out[("up", i)] = AlgebraElement.from_coefficients(
            EVEN, l, ga.defect_up(i))
        out[("lo", i)] = AlgebraElement.from_coefficients(
            EVEN, l, ga.defect_lo(i))
    return out


# --------------------------------------------------------------------------
# chains
# --------------------------------------------------------------------------

Coefficient = Union[ExactScalar, Polynomial]
TermKey = Tuple[Tuple[BasisKey, ...], BasisKey]


def _coeff_is_zero(c: Coefficient) -> bool:
    return not bool(c)


def _coeff_scale_int(c: Coefficient, n: int) -> Coefficient:
    if n == 1:
        return c
    if isinstance(c, Polynomial):
        return c.scale(n)
    return c * n


class Chain:
    """A sparse alternating k-chain with positive-part slots.

    Terms map (slots, target) to a coefficient; slots are strictly
    increasing in the canonical positive-part order of the named side.
    """

    __slots__ = ("side", "l", "k", "terms")

    def __init__(self, side: str, l: int, k: int,
                 terms: Dict[TermKey, Coefficient]):
        if side not in (ODD, EVEN):
            raise ValueError("side must be 'odd' or 'even'")
        if not 0 <= k <= 3:
            raise ValueError("chain degree must be 0..3")
        object.__setattr__(self, "side", side)
        object.__setattr__(self, "l", l)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "terms",
                           {key: c for key, c in terms.items()
                            if not _coeff_is_zero(c)})

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("Chain is immutable")

    @staticmethod
    def zero(side: str, l: int, k: int) -> "Chain":
        return Chain(side, l, k, {})

    @staticmethod
    def make(side: str, l: int, k: int,
             items: Iterable[Tuple[Sequence[BasisKey], BasisKey, Coefficient]]
             ) -> "Chain":
        """Build a chain, canonicalizing slot order with signs."""
        ga = algebra(l)
        valid_kinds = ("up1", "up2") if side == ODD else ("tup",)
        terms: Dict[TermKey, Coefficient] = {}
        for slots, target, coeff in items:
            if len(slots) != k:
                raise ValueError("slot count does not match chain degree")
            for s in slots:
                if s[0] not in valid_kinds:
                    raise ValueError(f"invalid slot key for {side} side: {s}")
            canon = _canonical_slots(ga, side, tuple(slots))
            if canon is None:
                continue
            slots_sorted, sign = canon
            key = (slots_sorted, target)
            c = _coeff_scale_int(coeff, sign)
            old = terms.get(key)
            c = c if old is None else old + c
            if _coeff_is_zero(c):
                terms.pop(key, None)
            else:
                terms[key] = c
        return Chain(side, l, k, terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "Chain") -> "Chain":
        self._check(other)
        terms = dict(self.terms)
        for key, c in other.terms.items():
            old = terms.get(key)
            s = c if old is None else old + c
            if _coeff_is_zero(s):
                terms.pop(key, None)
            else:
                terms[key] = s
        return Chain(self.side, self.l, self.k, terms)

    def __sub__(self, other: "Chain") -> "Chain":
        return self + other.scale(-1)

    def scale(self, c) -> "Chain":
        if isinstance(c, int):
            return Chain(self.side, self.l, self.k,
                         {key: _coeff_scale_int(v, c)
                          for key, v in self.terms.items()})
        return Chain(self.side, self.l, self.k,
                     {key: v.scale(c) if isinstance(v, Polynomial) else v * c
                      for key, v in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Chain) and self.side == other.side
                and self.l == other.l and self.k == other.k
                and self.terms == other.terms)

    __hash__ = None  # type: ignore[assignment]

    def homogeneity(self, key: TermKey) -> int:
        slots, target = key
        return sum(GradedAlgebra.grade(s) for s in slots) \
            + GradedAlgebra.grade(target)

    def homogeneous_part(self, h: int) -> "Chain":
        return Chain(self.side, self.l, self.k,
                     {key: c for key, c in self.terms.items()
                      if self.homogeneity(key) == h})

    def slot_kind_part(self, kinds: Tuple[str, ...]) -> "Chain":
        """Terms whose slot kinds (in canonical order) equal `kinds`."""
        return Chain(self.side, self.l, self.k,
                     {key: c for key, c in self.terms.items()
                      if tuple(s[0] for s in key[0]) == kinds})

    def has_polynomial_coefficients(self) -> bool:
        return any(isinstance(c, Polynomial) for c in self.terms.values())

    def _check(self, other: "Chain") -> None:
        if (self.side != other.side or self.l != other.l
                or self.k != other.k):
            raise ValueError("chain shape mismatch")


def _canonical_slots(ga: GradedAlgebra, side: str,
                     slots: Tuple[BasisKey, ...]
                     ) -> Optional[Tuple[Tuple[BasisKey, ...], int]]:
    ranks = [ga.slot_rank(side, s) for s in slots]
    if len(set(ranks)) != len(ranks):
        return None
    order = sorted(range(len(slots)), key=lambda n: ranks[n])
    sign = 1
    seen = []
    for n in order:
        sign *= (-1) ** sum(1 for m in seen if m > n)
        seen.append(n)
    return tuple(slots[n] for n in order), sign


# --------------------------------------------------------------------------
# the two differentials
# --------------------------------------------------------------------------

def codifferential(c: Chain) -> Chain:
    """The homology-side boundary operator on positive-part chains.

    For a term Z_1^..^Z_k (x) X the image collects (-1)^i times the slot
    removal with target bracket [Z_i, X], plus (-1)^(i+j) times the pair
    bracket [Z_i, Z_j] prepended to the remaining slots.
    """
    if c.k == 0:
        raise ValueError("codifferential of a degree-0 chain is not defined")
    ga = algebra(c.l)
    items: List[Tuple[Sequence[BasisKey], BasisKey, Coefficient]] = []
    for (slots, target), coeff in c.terms.items():
        for i0, z in enumerate(slots):
            sign = -1 if (i0 + 1) % 2 else 1
            rest = slots[:i0] + slots[i0 + 1:]
            for tkey, n in ga.bracket_table(c.side, z, target):
                items.append((rest, tkey, _coeff_scale_int(coeff, sign * n)))
        for i0 in range(len(slots)):
            for j0 in range(i0 + 1, len(slots)):
                sign = (-1) ** ((i0 + 1) + (j0 + 1))
                rest = tuple(s for n0, s in enumerate(slots)
                             if n0 not in (i0, j0))
                for bkey, n in ga.bracket_table(c.side, slots[i0],
                                                slots[j0]):
                    items.append(((bkey,) + rest, target,
                                  _coeff_scale_int(coeff, sign * n)))
    return Chain.make(c.side, c.l, c.k - 1, items)


def differential(c: Chain) -> Chain:
    """The Lie algebra cohomology differential, via the duality pairing.

    Chains are read as alternating maps on the negative part; the result is
    re-encoded through the exact dual normalization of the trace pairing.
    Constant coefficients only; degrees 1 and 2.
    """
    if c.side != ODD:
        raise ValueError("differential is defined on odd-side chains")
    if c.k not in (1, 2):
        raise ValueError("differential implemented for degrees 1 and 2")
    if c.has_polynomial_coefficients():
        raise ValueError("differential requires constant coefficients")
    ga = algebra(c.l)
    neg = ga.negative_keys

    if c.k == 1:
        omega: Dict[BasisKey, Dict[BasisKey, ExactScalar]] = {}
        for (slots, target), coeff in c.terms.items():
            var = ga.dual_slot(slots[0])
            bucket = omega.setdefault(var, {})
            old = bucket.get(target)
            s = coeff if old is None else old + coeff
            if s:
                bucket[target] = s
            elif target in bucket:
                del bucket[target]

        def omega1(u: BasisKey) -> Dict[BasisKey, ExactScalar]:
            return omega.get(u, {})

        items = []
        for ui in range(len(neg)):
            for vi in range(ui + 1, len(neg)):
                x, y = neg[ui], neg[vi]
                val: Dict[BasisKey, ExactScalar] = {}
                _acc_bracket(ga, val, x, omega1(y), 1)
                _acc_bracket(ga, val, y, omega1(x), -1)
                for w, n in ga.bracket_table(ODD, x, y):
                    _acc_scaled(val, omega1(w), -n)
                slots = (ga.dual_slot(x), ga.dual_slot(y))
                for tkey, s in val.items():
                    if s:
                        items.append((slots, tkey, s))
        return Chain.make(ODD, c.l, 2, items)

    # k == 2
    omega2_table: Dict[Tuple[BasisKey, BasisKey],
                       Dict[BasisKey, ExactScalar]] = {}
    for (slots, target), coeff in c.terms.items():
        key = (ga.dual_slot(slots[0]), ga.dual_slot(slots[1]))
        bucket = omega2_table.setdefault(key, {})
        old = bucket.get(target)
        s = coeff if old is None else old + coeff
        if s:
            bucket[target] = s
        elif target in bucket:
            del bucket[target]

    rank = {k: n for n, k in enumerate(neg)}

    def omega2(u: BasisKey, v: BasisKey) -> Tuple[Dict[BasisKey,
                                                       ExactScalar], int]:
        if u == v:
            return {}, 1
        if rank[u] < rank[v]:
            return omega2_table.get((u, v), {}), 1
        return omega2_table.get((v, u), {}), -1

    items = []
    for xi in range(len(neg)):
        for yi in range(xi + 1, len(neg)):
            for zi in range(yi + 1, len(neg)):
                x, y, z = neg[xi], neg[yi], neg[zi]
                val: Dict[BasisKey, ExactScalar] = {}
                for (arg, rest1, rest2, sgn) in ((x, y, z, 1), (y, x, z, -1),
                                                 (z, x, y, 1)):
                    w, flip = omega2(rest1, rest2)
                    _acc_bracket(ga, val, arg, w, sgn * flip)
                for (a, b, other, sgn) in ((x, y, z, -1), (x, z, y, 1),
                                           (y, z, x, -1)):
                    for w, n in ga.bracket_table(ODD, a, b):
                        ww, flip = omega2(w, other)
                        _acc_scaled(val, ww, sgn * n * flip)
                slots = (ga.dual_slot(x), ga.dual_slot(y), ga.dual_slot(z))
                for tkey, s in val.items():
                    if s:
                        items.append((slots, tkey, s))
    return Chain.make(ODD, c.l, 3, items)


def _acc_bracket(ga: GradedAlgebra, acc: Dict[BasisKey, ExactScalar],
                 xkey: BasisKey, elem: Dict[BasisKey, ExactScalar],
                 sign: int) -> None:
    for tkey, coeff in elem.items():
        for rkey, n in ga.bracket_table(ODD, xkey, tkey):
            old = acc.get(rkey)
            add = coeff * (sign * n)
            s = add if old is None else old + add
            if s:
                acc[rkey] = s
            elif rkey in acc:
                del acc[rkey]


def _acc_scaled(acc: Dict[BasisKey, ExactScalar],
                elem: Dict[BasisKey, ExactScalar], n: int) -> None:
    if not n:
        return
    for key, coeff in elem.items():
        old = acc.get(key)
        add = coeff * n
        s = add if old is None else old + add
        if s:
            acc[key] = s
        elif key in acc:
            del acc[key]


# --------------------------------------------------------------------------
# chain-level transfer and the commutator operator
# --------------------------------------------------------------------------

def phi_extension(c: Chain) -> Chain:
    """Transfer an odd-side chain to the even side: the positive-part
    transfer on every slot and the canonical embedding on the target."""
    if c.side != ODD:
        raise ValueError("transfer applies to odd-side chains")
    ga = algebra(c.l)
    items = []
    for (slots, target), coeff in c.terms.items():
        factor = ExactScalar.one()
        new_slots = []
        for s in slots:
            tkey, tc = ga.transfer_key(s)
            new_slots.append(tkey)
            factor = factor * tc
        base = (coeff.scale(factor) if isinstance(coeff, Polynomial)
                else coeff * factor)
        for tkey, tc in ga.embed_key(target).items():
            c2 = base.scale(tc) if isinstance(base, Polynomial) else base * tc
            items.append((tuple(new_slots), tkey, c2))
    return Chain.make(EVEN, c.l, c.k, items)


def commutator_operator(c: Chain) -> Chain:
    """The defect of the chain transfer against the two boundary operators:
    codifferential(transfer(c)) - transfer(codifferential(c))."""
    if c.side != ODD or c.k != 2:
        raise ValueError("operator is defined on odd-side degree-2 chains")
    if c.has_polynomial_coefficients():
        raise ValueError("operator requires constant coefficients; "
                         "decompose polynomial chains term-wise")
    return codifferential(phi_extension(c)) - phi_extension(codifferential(c))


def commutator_operator_closed_form(c: Chain) -> Chain:
    """Independent evaluation of the same operator from its closed forms
    on the three slot-type blocks (used as a cross-check oracle)."""
    if c.side != ODD or c.k != 2:
        raise ValueError("operator is defined on odd-side degree-2 chains")
    if c.has_polynomial_coefficients():
        raise ValueError("operator requires constant coefficients")
    ga = algebra(c.l)
    items = []
    for (slots, target), coeff in c.terms.items():
        kinds = (slots[0][0], slots[1][0])
        alpha_target = ga.embed_coeffs({target: ExactScalar.one()})
        if kinds == ("up2", "up2"):
            continue
        if kinds == ("up1", "up2"):
            i = slots[0][1]
            jk = slots[1][1]
            br = ga.bracket_coeffs(EVEN, ga.defect_up(i), alpha_target)
            for tkey, v in br.items():
                items.append(((("tup", jk),), tkey,
                              coeff * v * (-_HALF_ROOT2)))
        else:  # ("up1", "up1")
            i, j = slots[0][1], slots[1][1]
            for tkey, v in alpha_target.items():
                items.append(((("tup", (i, j)),), tkey, coeff * v))
            br_j = ga.bracket_coeffs(EVEN, ga.defect_up(j), alpha_target)
            for tkey, v in br_j.items():
                items.append(((("tup", (0, i)),), tkey, coeff * v))
            br_i = ga.bracket_coeffs(EVEN, ga.defect_up(i), alpha_target)
            for tkey, v in br_i.items():
                items.append(((("tup", (0, j)),), tkey, -(coeff * v)))
    return Chain.make(EVEN, c.l, 1, items)


def kappa11_normality_test(c: Chain) -> bool:
    """True iff the commutator operator annihilates the chain; polynomial
    coefficients are handled monomial slice by monomial slice."""
    if c.side != ODD or c.k != 2:
        raise ValueError("test applies to odd-side degree-2 chains")
    if not c.has_polynomial_coefficients():
        return commutator_operator(c).is_zero()
    slices: Dict[object, List[Tuple[Tuple[BasisKey, ...], BasisKey,
                                    ExactScalar]]] = {}
    for (slots, target), coeff in c.terms.items():
        if isinstance(coeff, Polynomial):
            for mono, s in coeff.terms.items():
                slices.setdefault(mono, []).append((slots, target, s))
        else:
            slices.setdefault((), []).append((slots, target, coeff))
    for items in slices.values():
        piece = Chain.make(ODD, c.l, 2, items)
        if not commutator_operator(piece).is_zero():
            return False
    return True


def annihilator_subspace(l: int, i: int) -> List[Coefficients]:
    """Exact basis of {X : [defect_up(i), embed(X)] = 0} in the odd algebra,
    as coefficient dicts over the odd basis."""
    ga = algebra(l)
    columns = []
    for key in ga.odd_keys:
        img = ga.bracket_coeffs(EVEN, ga.defect_up(i),
                                ga.embed_coeffs({key: ExactScalar.one()}))
        columns.append(img)
    from .linalg import kernel_of_columns
    kernel = kernel_of_columns(columns)
    out = []
    for vec in kernel:
        out.append({key: v for key, v in zip(ga.odd_keys, vec) if v})
    return out


# --------------------------------------------------------------------------
# invariant battery (used by the CLI self-check and the test suite)
# --------------------------------------------------------------------------

def _check_form_annihilation(ga: GradedAlgebra) -> bool:
    for side in (ODD, EVEN):
        qmap = ga.form_pairing_map(side)
        for key in ga.keys(side):
            m = ga.mat(side, key)
            # With Q the 0/1 involution permutation, entry (r,c,v) of m
            # contributes v to (Q m) at (qmap[r], c) and, via the
            # transpose, v to (m^t Q) at (c, qmap[r]).
            acc: Dict[Tuple[int, int], int] = {}
            for (r, c), v in m.items():
                for key2, val in (((qmap[r], c), v), ((c, qmap[r]), v)):
                    s = acc.get(key2, 0) + val
                    if s:
                        acc[key2] = s
                    elif key2 in acc:
                        del acc[key2]
            if acc:
                return False
    return True


def _check_bracket_grading(ga: GradedAlgebra) -> bool:
    for side in (ODD, EVEN):
        for k1 in ga.keys(side):
            g1 = GradedAlgebra.grade(k1)
            for k2 in ga.keys(side):
                g2 = GradedAlgebra.grade(k2)
                for key, _ in ga.bracket_table(side, k1, k2):
                    if GradedAlgebra.grade(key) != g1 + g2:
                        return False
    return True


def _check_pairing_values(ga: GradedAlgebra) -> bool:
    l = ga.l
    for i in range(1, l + 1):
        m1, m2 = ga.mat(ODD, ("lo1", i)), ga.mat(ODD, ("up1", i))
        if _mat_trace_product(m1, m2) != -2:
            return False
    for p in ga.pair_indices:
        m1, m2 = ga.mat(ODD, ("lo2", p)), ga.mat(ODD, ("up2", p))
        if _mat_trace_product(m1, m2) != -2:
            return False
    for i in range(1, l + 1):
        for j in range(1, l + 1):
            if i == j:
                continue
            m1 = ga.mat(ODD, ("zero", (i, j)))
            m2 = ga.mat(ODD, ("zero", (j, i)))
            if _mat_trace_product(m1, m2) != 2:
                return False
    # cross-grade orthogonality
    for k1 in ga.odd_keys:
        for k2 in ga.odd_keys:
            if (GradedAlgebra.grade(k1) + GradedAlgebra.grade(k2) != 0
                    and ga.pairing_int(ODD, k1, k2) != 0):
                return False
    return True


def _check_embedding_homomorphism(ga: GradedAlgebra) -> bool:
    one = ExactScalar.one()
    for k1 in ga.odd_keys:
        e1 = ga.embed_coeffs({k1: one})
        for k2 in ga.odd_keys:
            e2 = ga.embed_coeffs({k2: one})
            lhs = ga.embed_coeffs(
                {key: ExactScalar.of(n)
                 for key, n in ga.bracket_table(ODD, k1, k2)})
            rhs = ga.bracket_coeffs(EVEN, e1, e2)
            if lhs != rhs:
                return False
    return True


def _check_embedding_eigenspace(ga: GradedAlgebra) -> bool:
    l = ga.l

    def swap(n: int) -> int:
        if n == 0:
            return l + 1
        if n == l + 1:
            return 0
        return n

    one = ExactScalar.one()
    for key in ga.odd_keys:
        elem = AlgebraElement.from_coefficients(
            EVEN, l, ga.embed_coeffs({key: one}))
        swapped = {(swap(r), swap(c)): v
                   for (r, c), v in elem.entries.items()}
        if swapped != elem.entries:
            return False
    return True


def _check_transfer_duality(ga: GradedAlgebra) -> bool:
    one = ExactScalar.one()
    for xi in ga.positive_keys:
        txi = ga.transfer_coeffs({xi: one})
        for xkey in ga.odd_keys:
            lhs = ga.pairing_coeffs(EVEN, txi,
                                    ga.embed_coeffs({xkey: one}))
            rhs = ExactScalar.of(ga.pairing_int(ODD, xi, xkey))
            if lhs != rhs:
                return False
    return True


def _check_defect_relations(ga: GradedAlgebra) -> bool:
    l = ga.l
    one = ExactScalar.one()
    for i in range(1, l + 1):
        d = ga.defect_up(i)
        for r in range(1, l + 1):
            for s in range(1, l + 1):
                got = ga.bracket_coeffs(
                    EVEN, d, ga.embed_coeffs({("zero", (r, s)): one}))
                want = ga.defect_up(s) if r == i else {}
                if got != want:
                    return False
        for s in range(1, l + 1):
            got = ga.bracket_coeffs(
                EVEN, d, ga.embed_coeffs({("lo1", s): one}))
            want = {k: -v for k, v in ga.defect_diag().items()} \
                if s == i else {}
            if got != want:
                return False
        for p in ga.pair_indices:
            r, s = p
            got = ga.bracket_coeffs(
                EVEN, d, ga.embed_coeffs({("lo2", p): one}))
            want: Coefficients = {}
            if i == r:
                want = dict(ga.defect_lo(s))
            elif i == s:
                want = {k: -v for k, v in ga.defect_lo(r).items()}
            if got != want:
                return False
        for s in range(1, l + 1):
            if ga.bracket_coeffs(EVEN, d,
                                 ga.embed_coeffs({("up1", s): one})):
                return False
        for p in ga.pair_indices:
            if ga.bracket_coeffs(EVEN, d,
                                 ga.embed_coeffs({("up2", p): one})):
                return False
    return True


def _check_codifferential_squares(ga: GradedAlgebra) -> bool:
    l = ga.l
    one = ExactScalar.one()
    for side, slot_keys, target_keys in (
            (ODD, algebra(l).positive_keys, ga.odd_keys),
            (EVEN, algebra(l).ext_positive_keys, ga.even_keys)):
        n = len(slot_keys)
        for a in range(n):
            for b in range(a + 1, n):
                for c0 in range(b + 1, n):
                    slots = (slot_keys[a], slot_keys[b], slot_keys[c0])
                    for t in target_keys:
                        ch = Chain(side, l, 3, {(slots, t): one})
                        if not codifferential(codifferential(ch)).is_zero():
                            return False
    return True


def _check_differential_squares(ga: GradedAlgebra) -> bool:
    one = ExactScalar.one()
    for s in ga.positive_keys:
        for t in ga.odd_keys:
            ch = Chain(ODD, ga.l, 1, {((s,), t): one})
            if not differential(differential(ch)).is_zero():
                return False
    return True


def _check_operator_closed_forms(ga: GradedAlgebra) -> bool:
    l = ga.l
    one = ExactScalar.one()
    pos = ga.positive_keys
    for a in range(len(pos)):
        for b in range(a + 1, len(pos)):
            slots = (pos[a], pos[b])
            for t in ga.odd_keys:
                ch = Chain(ODD, l, 2, {(slots, t): one})
                direct = commutator_operator(ch)
                closed = commutator_operator_closed_form(ch)
                if direct != closed:
                    return False
                if (slots[0][0] == "up2" and slots[1][0] == "up2"
                        and not direct.is_zero()):
                    return False
    return True


ALGEBRA_CHECKS = (
    ("basis-form-annihilation", _check_form_annihilation),
    ("bracket-grading", _check_bracket_grading),
    ("killing-pairing-values", _check_pairing_values),
    ("alpha-homomorphism", _check_embedding_homomorphism),
    ("alpha-eigenspace", _check_embedding_eigenspace),
    ("phi-duality", _check_transfer_duality),
    ("delta-relations", _check_defect_relations),
    ("codifferential-squares-to-zero", _check_codifferential_squares),
    ("differential-squares-to-zero", _check_differential_squares),
    ("operator-closed-forms", _check_operator_closed_forms),
)


def algebra_battery(l: int) -> List[Tuple[str, bool]]:
    """Run every named invariant check; returns (name, passed) pairs."""
    ga = algebra(l)
    return [(name, fn(ga)) for name, fn in ALGEBRA_CHECKS]
