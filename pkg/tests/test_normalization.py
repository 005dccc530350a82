"""End-to-end normalization pipeline: goldens, invariants, serialization."""

from fractions import Fraction

import pytest

from conftest import (armstrong_fields, data_path, flat_fields,
                      random_sparse_fields)
from freedist.algebra import codifferential, kappa11_normality_test
from freedist.errors import (DegenerateFrameError, UnsupportedError,
                             UnsupportedFrameError)
from freedist.normalization import (VERDICT_NORMAL, VERDICT_OBSTRUCTED,
                                    analyze, curvature_chain,
                                    extension_normality_report,
                                    flatness_test, fundamental_invariant,
                                    report_from_json, report_to_json)
from freedist.parsing import parse_frame_file
from freedist.polynomials import Polynomial, chart
from freedist.scalars import ExactScalar

JSON_KEY_ORDER = ["l", "nondegenerate", "structure_functions", "A", "C", "E",
                  "F", "P", "R", "S", "T", "flat", "kappa11_deg2_zero",
                  "extension_verdict"]


def load_fields(name):
    with open(data_path(name), encoding="utf-8") as fh:
        _, fields = parse_frame_file(fh.read())
    return fields


def analyze_fixture(name):
    return analyze(load_fields(name))


# --- exact trace helpers -------------------------------------------------

def p_lookup(P, ch, tgt_a, tgt_b, r, arg):
    zero = Polynomial.zero(ch)
    if tgt_a == tgt_b:
        return zero
    a, b, sign = (tgt_a, tgt_b, 1) if tgt_a < tgt_b else (tgt_b, tgt_a, -1)
    v = P.get(((a, b), r, arg))
    if v is None:
        return zero
    return v if sign == 1 else -v


def assert_p_totally_trace_free(P, l):
    ch = chart(l)
    zero = Polynomial.zero(ch)
    pairs = [(j, k) for j in range(1, l + 1) for k in range(j + 1, l + 1)]
    for p in pairs:
        for m in range(1, l + 1):
            acc = zero
            for r in range(1, l + 1):
                acc = acc + p_lookup(P, ch, r, m, r, p)
            assert acc.is_zero()
    for r in range(1, l + 1):
        for u in range(1, l + 1):
            for m in range(1, l + 1):
                acc = zero
                for s in range(1, l + 1):
                    if s == u:
                        continue
                    a, b, sgn = (s, u, 1) if s < u else (u, s, -1)
                    v = p_lookup(P, ch, s, m, r, (a, b))
                    acc = acc + (v if sgn == 1 else -v)
                assert acc.is_zero()


def assert_a_trace_free(A, l):
    ch = chart(l)
    for k in range(1, l + 1):
        acc = Polynomial.zero(ch)
        for i in range(1, l + 1):
            v = A.get((i, i, k))
            if v is not None:
                acc = acc + v
        assert acc.is_zero()


def assert_self_consistent(rep):
    l = rep.l
    assert_a_trace_free(rep.connection.A, l)
    assert_p_totally_trace_free(rep.curvature.P, l)
    for (i, j), v in rep.connection.F.items():
        assert rep.connection.F.get((j, i)) == v
    assert not rep.curvature.Q
    kc = curvature_chain(rep.curvature)
    assert codifferential(kc.homogeneous_part(1)).is_zero()
    assert codifferential(kc.homogeneous_part(2)).is_zero()


# --- golden fixtures ------------------------------------------------------

def test_flat_golden():
    rep = analyze_fixture("flat_l4.frame")
    assert rep.l == 4 and rep.nondegenerate
    assert rep.f.is_zero()
    assert not rep.connection.A and not rep.connection.C
    assert not rep.connection.E and not rep.connection.F
    k = rep.curvature
    assert not k.P and not k.R and not k.S and not k.T
    assert k.flat is True
    assert k.kappa11_deg2_zero is True
    assert rep.extension_verdict == VERDICT_NORMAL


def test_armstrong_golden():
    rep = analyze_fixture("armstrong_l4.frame")
    ch = chart(4)
    one = Polynomial.const(ch, ExactScalar.one())
    assert dict(rep.f.pp_sp) == {((3, 4), 1, (1, 2)): one}
    assert rep.f.ss_sp == {} and rep.f.ss_pp == {} and rep.f.pp_pp == {}
    assert not rep.connection.A and not rep.connection.C
    assert not rep.connection.E and not rep.connection.F
    k = rep.curvature
    assert dict(k.P) == {((3, 4), 1, (1, 2)): one}
    assert not k.R and not k.S and not k.T
    assert k.flat is False
    assert k.kappa11_deg2_zero is True
    assert rep.extension_verdict == VERDICT_NORMAL
    assert kappa11_normality_test(curvature_chain(k))


def test_armstrong_fields_builder_matches_fixture():
    rep_a = report_to_json(analyze_fixture("armstrong_l4.frame"))
    rep_b = report_to_json(analyze(armstrong_fields(4)))
    assert rep_a == rep_b


def test_obstructed_golden():
    rep = analyze_fixture("obstructed_l4.frame")
    c, k = rep.connection, rep.curvature
    assert k.kappa11_deg2_zero is False
    assert rep.extension_verdict == VERDICT_OBSTRUCTED
    assert k.flat is False
    # frozen shape of the solution (regression values)
    data = report_to_json(rep)
    assert len(data["A"]) == 7 and len(data["C"]) == 3
    assert len(data["E"]) == 8 and len(data["F"]) == 1
    assert len(data["P"]) == 17 and len(data["R"]) == 8
    assert len(data["S"]) == 8 and len(data["T"]) == 4
    assert data["F"] == {"1,1": "5/96*x1*x3 - 5/96*y[1,3]"}
    assert not kappa11_normality_test(curvature_chain(k))
    assert_self_consistent(rep)


def test_random_frames_self_consistent():
    import random
    rng = random.Random(811)
    done = 0
    while done < 4:
        fields = random_sparse_fields(4, rng)
        try:
            rep = analyze(fields)
        except (DegenerateFrameError, UnsupportedFrameError):
            continue
        assert_self_consistent(rep)
        done += 1


# --- verdict helpers ------------------------------------------------------

def test_flatness_and_invariant_helpers():
    rep = analyze_fixture("armstrong_l4.frame")
    P = rep.curvature.P
    assert fundamental_invariant(P) == dict(P)
    assert flatness_test(P) is False
    assert flatness_test({}) is True
    info = extension_normality_report(rep.curvature)
    assert info == {"kappa11_deg2_zero": True, "verdict": VERDICT_NORMAL}
    obstructed = analyze_fixture("obstructed_l4.frame")
    info = extension_normality_report(obstructed.curvature)
    assert info == {"kappa11_deg2_zero": False,
                    "verdict": VERDICT_OBSTRUCTED}


# --- guards and errors ----------------------------------------------------

def test_rank_three_is_unsupported():
    with pytest.raises(UnsupportedError):
        analyze(flat_fields(3))


def test_degenerate_frame_propagates():
    with pytest.raises(DegenerateFrameError):
        analyze_fixture("integrable_l4.frame")


def test_nonunimodular_frame_propagates():
    with pytest.raises(UnsupportedFrameError):
        analyze_fixture("nonunimodular_l4.frame")


# --- determinism and serialization ----------------------------------------

def test_reruns_are_bit_identical():
    import json
    a = json.dumps(report_to_json(analyze_fixture("obstructed_l4.frame")),
                   sort_keys=False)
    b = json.dumps(report_to_json(analyze_fixture("obstructed_l4.frame")),
                   sort_keys=False)
    assert a == b


def test_json_key_order():
    data = report_to_json(analyze_fixture("flat_l4.frame"))
    assert list(data.keys()) == JSON_KEY_ORDER


def test_json_microformat_keys():
    armstrong = report_to_json(analyze_fixture("armstrong_l4.frame"))
    assert armstrong["structure_functions"] == {"[3,4],1,[1,2]": "1"}
    assert armstrong["P"] == {"[3,4],1,[1,2]": "1"}
    data = report_to_json(analyze_fixture("obstructed_l4.frame"))
    for key in data["A"]:
        assert len(key.split(",")) == 3 and "[" not in key
    for key in data["E"]:
        assert key.count("[") == 1
    for key in data["P"]:
        assert key.count("[") == 2


def test_json_round_trip():
    rep = analyze_fixture("obstructed_l4.frame")
    data = report_to_json(rep)
    back = report_from_json(data)
    assert back.l == rep.l
    assert back.nondegenerate == rep.nondegenerate
    assert back.extension_verdict == rep.extension_verdict
    assert back.curvature.flat == rep.curvature.flat
    assert back.curvature.kappa11_deg2_zero == rep.curvature.kappa11_deg2_zero
    for name in ("A", "C", "E", "F"):
        assert getattr(back.connection, name) == getattr(
            rep.connection, name)
    for name in ("P", "R", "S", "T"):
        assert getattr(back.curvature, name) == getattr(rep.curvature, name)
    for (_, block_a), (_, block_b) in zip(back.f.blocks(),
                                          rep.f.blocks()):
        assert block_a == block_b
    assert report_to_json(back) == data


def test_json_values_are_expression_strings():
    from freedist.parsing import parse_expression
    data = report_to_json(analyze_fixture("obstructed_l4.frame"))
    ch = chart(4)
    for name in ("structure_functions", "A", "C", "E", "F", "P", "R", "S",
                 "T"):
        for expr in data[name].values():
            assert not parse_expression(expr, ch).is_zero()


# --- structural invariants ------------------------------------------------

def test_rho_block_trace_scales_with_rank():
    """The grade-0 response of a symmetric-coefficient unit scales with
    (1 - l) across ranks: the diagnostic row entries at ranks 4 and 5 sit
    in the exact ratio (1-5)/(1-4) = 4/3."""
    from freedist.normalization import _degree2_probes

    def diag_entry(l):
        unknowns, probes = _degree2_probes(l)
        table = dict(zip(unknowns, probes))
        d = codifferential(table[("F", (1, 2))])
        rows = {key: v for key, v in d.terms.items()
                if key[0][0][0] == "up1" and key[1][0] == "up1"}
        assert set(rows) == {((("up1", 2),), ("up1", 1)),
                             ((("up1", 1),), ("up1", 2))}
        vals = set(rows.values())
        assert len(vals) == 1
        return vals.pop()

    v4 = diag_entry(4)
    v5 = diag_entry(5)
    assert v5 == v4 * ExactScalar.of(Fraction(1 - 5, 1 - 4))


def test_curvature_chain_homogeneity_split():
    rep = analyze_fixture("obstructed_l4.frame")
    kc = curvature_chain(rep.curvature)
    h1 = kc.homogeneous_part(1)
    h2 = kc.homogeneous_part(2)
    assert (h1 + h2) == kc
    assert not h1.is_zero() and not h2.is_zero()
    # homogeneity-1 terms are exactly the P block
    assert len(h1.terms) == len(rep.curvature.P)
