"""Decision procedures: the Z[sqrt(-14)] criterion, the rational baseline,
and the generic semi-decision."""

import random

import pytest

from oracles import brute_two_squares, is_representation
from twosquares import numth
from twosquares.criterion import (
    DecisionStatus,
    decide_generic,
    decide_qsqrt_m14,
    decide_rational,
    parity_exponent,
    verify_classical,
)
from twosquares.errors import ParameterError, UnsupportedInputError
from twosquares.ring import QuadInt, norm_factorization
from twosquares.search import find_representation

R = DecisionStatus.REPRESENTABLE
L = DecisionStatus.LOCAL_OBSTRUCTION
G = DecisionStatus.GLOBAL_OBSTRUCTION
U = DecisionStatus.UNKNOWN


def test_parity_exponent_fixed():
    cases = {
        (1, 1): 1,
        (2, 0): 2,
        (-1, 0): 0,
        (-7, 0): 3,
        (7, 0): 3,
        (-14, 0): 5,
        (3, 1): 0,
        (25, 24): 1,
        (5, 0): 2,
        (17, 17): 2,
    }
    for (a, b), expected in cases.items():
        assert parity_exponent(norm_factorization(QuadInt(a, b))) == expected, (a, b)


def test_decide_fixed_statuses():
    cases = {
        (2, 0): (R, "parity"),
        (-1, 0): (G, "parity"),
        (1, 1): (L, "d1_nonempty"),
        (-7, 0): (R, "parity"),
        (7, 0): (G, "parity"),
        (-14, 0): (R, "parity"),
        (14, 0): (G, "parity"),
        (5, 0): (R, "d1_nonempty"),
        (-13, 2): (R, "d1_nonempty"),
        (3, 1): (L, "parity"),
        (1, 2): (L, "parity"),
        (5, 1): (L, "d1_nonempty"),
    }
    for (a, b), (status, branch) in cases.items():
        dec = decide_qsqrt_m14(QuadInt(a, b))
        assert (dec.status, dec.evidence.branch) == (status, branch), (a, b)
        if status is R:
            assert dec.witness is not None and dec.witness_verified
            assert is_representation(QuadInt(a, b), *dec.witness)
        else:
            assert dec.witness is None and not dec.witness_verified
        if status is L:
            assert dec.failing_places
        else:
            assert not dec.failing_places


def test_decide_fixed_witnesses():
    dec = decide_qsqrt_m14(QuadInt(-7, 0))
    assert dec.witness == (QuadInt(-7, 0), QuadInt(0, -2))
    dec = decide_qsqrt_m14(QuadInt(-13, 2))
    assert dec.witness == (QuadInt(-1, -1), QuadInt(0, 0))
    dec = decide_qsqrt_m14(QuadInt(1, 1))
    assert [p.label() for p in dec.failing_places] == ["2", "3"]


def test_seven_part_of_a_respected():
    # -7 and -14 are sums of two squares while 7 and 14 are not, so the
    # parity exponent must count the 7-adic valuation of the a-coordinate
    for a, status in ((-7, R), (7, G), (-14, R), (14, G)):
        dec = decide_qsqrt_m14(QuadInt(a, 0), witness_bound=60)
        assert dec.status is status, a
        if status is R:
            assert dec.witness_verified


def test_witness_bound_none_skips_search():
    dec = decide_qsqrt_m14(QuadInt(2, 0), witness_bound=None)
    assert dec.status is R and dec.witness is None and not dec.witness_verified


def test_generated_representables_accepted():
    rng = random.Random(501)
    for _ in range(400):
        x = QuadInt(rng.randrange(-40, 41), rng.randrange(-40, 41))
        y = QuadInt(rng.randrange(-40, 41), rng.randrange(-40, 41))
        delta = x * x + y * y
        if delta.is_zero() or delta.a == 0:
            continue
        dec = decide_qsqrt_m14(delta, witness_bound=None)
        assert dec.status is R, delta


def test_negative_decisions_have_no_small_witness():
    rng = random.Random(502)
    for _ in range(150):
        delta = QuadInt(rng.choice([n for n in range(-12, 13) if n]), rng.randrange(-12, 13))
        dec = decide_qsqrt_m14(delta, witness_bound=None)
        if dec.status in (L, G):
            assert find_representation(delta, 40).witness is None, delta


def test_evidence_integrity():
    rng = random.Random(503)
    for _ in range(200):
        delta = QuadInt(rng.choice([n for n in range(-30, 31) if n]), rng.randrange(-30, 31))
        dec = decide_qsqrt_m14(delta, witness_bound=None)
        nf = dec.evidence.factorization
        assert dec.evidence.parity_exponent == parity_exponent(nf)
        assert dec.evidence.a1_symbol == numth.legendre(nf.a1, 7)
        assert dec.evidence.branch == ("d1_nonempty" if nf.d1 else "parity")
        if dec.status is R and dec.evidence.branch == "parity":
            assert nf.d1 == ()
        assert dec.evidence.condition_local == (dec.status is not L)


def test_criterion_domain():
    with pytest.raises(ParameterError):
        decide_qsqrt_m14(QuadInt(1, 1, -2))
    with pytest.raises(ParameterError):
        decide_qsqrt_m14(QuadInt(0, 0))
    with pytest.raises(UnsupportedInputError):
        decide_qsqrt_m14(QuadInt(0, 4))


def test_decide_rational_fixed():
    cases = {
        1: (R, (1, 0)),
        2: (R, (1, 1)),
        3: (L, None),
        4: (R, (2, 0)),
        5: (R, (2, 1)),
        9: (R, (3, 0)),
        10: (R, (3, 1)),
        45: (R, (6, 3)),
        325: (R, (18, 1)),
        10007: (L, None),
    }
    for n, (status, witness) in cases.items():
        dec = decide_rational(n)
        assert dec.status is status, n
        if witness is None:
            assert dec.witness is None
        else:
            x, y = dec.witness
            assert (x.a, y.a) == witness and x.b == y.b == 0
            assert dec.witness_verified


def test_decide_rational_large_composite():
    dec = decide_rational(999966000979)  # 11 * 226631 * 401119, all 3 mod 4
    assert dec.status is L
    assert [p.prime for p in dec.failing_places] == [11, 226631, 401119]


def test_decide_rational_vs_brute():
    for n in range(1, 2000):
        dec = decide_rational(n)
        expected = brute_two_squares(n)
        assert (dec.status is R) == (expected is not None), n
        if dec.status is R:
            x, y = dec.witness
            assert x.a * x.a + y.a * y.a == n and x.a >= y.a >= 0
        else:
            odd = [p for p, e in numth.factorize(n) if p % 4 == 3 and e % 2]
            assert [p.prime for p in dec.failing_places] == odd


def test_decide_rational_rejects():
    for n in (0, -5):
        with pytest.raises(ParameterError):
            decide_rational(n)


def test_verify_classical_small():
    assert verify_classical(1)
    assert verify_classical(500)


def test_decide_generic_fixed():
    dec = decide_generic(QuadInt(3, 0, -2))
    assert dec.status is L and [p.label() for p in dec.failing_places] == ["3"]
    dec = decide_generic(QuadInt(2, 0, -2))
    assert dec.status is R and dec.witness_verified
    dec = decide_generic(QuadInt(-1, 0, 2))
    assert dec.status is L and [p.label() for p in dec.failing_places] == ["oo"]
    dec = decide_generic(QuadInt(-1, 0, -1))
    assert dec.status is R and dec.witness == (QuadInt(0, -1, -1), QuadInt(0, 0, -1))
    dec = decide_generic(QuadInt(-1, 0))
    assert dec.status is U and dec.witness is None


def test_decide_generic_witnesses_verify():
    rng = random.Random(504)
    for _ in range(80):
        d = rng.choice([-1, -2, -5, -6])
        delta = QuadInt(rng.randrange(-10, 11), rng.randrange(-10, 11), d)
        if delta.is_zero():
            continue
        dec = decide_generic(delta, search_bound=12)
        if dec.status is R:
            assert is_representation(delta, *dec.witness)
        elif dec.status is U:
            assert find_representation(delta, 12).witness is None


def test_generic_never_contradicts_search():
    rng = random.Random(505)
    for _ in range(80):
        d = rng.choice([-1, -2, -5, -6, -10])
        x = QuadInt(rng.randrange(-6, 7), rng.randrange(-6, 7), d)
        y = QuadInt(rng.randrange(-6, 7), rng.randrange(-6, 7), d)
        delta = x * x + y * y
        if delta.is_zero():
            continue
        dec = decide_generic(delta, search_bound=15)
        assert dec.status is R, (d, delta)
