import math
import pytest
from fractions import Fraction

import pmod.distance as distance_mod
from pmod import (INF, BudgetExceeded, DimensionMismatch, FieldSpec,
                  InterleavingProblem, barcode, box_interval, candidate_set,
                  check_closure, diagram_bottleneck, interleaving_distance,
                  is_isomorphic, minimize, parse)

from conftest import F2, F5, random_presentation, rng_for

M_TEXT = "module M\nfield F5\nparams 1\ngen a @ 0\nrel r1 @ 3 = 1*a\n"
N_TEXT = "module N\nfield F5\nparams 1\ngen b @ 1\nrel s1 @ 3 = 1*b\n"


def test_candidate_set_offset_intervals():
    M, N = parse(M_TEXT), parse(N_TEXT)
    cans = candidate_set(M, N)
    assert list(cans) == [0, 1, Fraction(3, 2), 2, 3, INF]
    assert cans.finite() == [0, 1, Fraction(3, 2), 2, 3]
    assert Fraction(3, 2) in cans
    assert Fraction(5, 4) not in cans
    assert INF in cans


def test_candidate_set_self_and_zero():
    M = parse(M_TEXT)
    cans = candidate_set(M, M)
    assert 0 in cans and INF in cans
    assert Fraction(3, 2) in cans  # half of the 0..3 gap
    Z = parse("module Z\nfield F5\nparams 1\n")
    assert list(candidate_set(Z, Z)) == [0, INF]
    with pytest.raises(DimensionMismatch):
        candidate_set(M, box_interval(F5, [0, 0], []))


def test_distance_offset_intervals():
    d, w = interleaving_distance(parse(M_TEXT), parse(N_TEXT))
    assert d == 1
    assert w is not None
    assert [[c.value for c in row] for row in w.A.entries] == [[1]]


def test_distance_self_is_zero():
    M = parse(M_TEXT)
    d, w = interleaving_distance(M, M)
    assert d == 0
    assert w is not None


def test_distance_box_against_zero():
    box2 = box_interval(F2, [0, 0], [[2, 0], [0, 2]])
    Z2 = parse("module Z\nfield F2\nparams 2\n")
    d, _ = interleaving_distance(box2, Z2)
    assert d == 1
    # in one parameter the distance to zero is the halfwidth
    rng = rng_for(801)
    for _ in range(12):
        b = Fraction(rng.randint(0, 8), rng.randint(1, 4))
        width = Fraction(rng.randint(1, 8), rng.randint(1, 4))
        box1 = box_interval(F2, [b], [[b + width]])
        Z1 = parse("module Z\nfield F2\nparams 1\n")
        d, _ = interleaving_distance(box1, Z1)
        assert d == width / 2


def test_distance_infinite_when_no_candidate_works():
    free = parse("module M\nfield F2\nparams 1\ngen a @ 0\n")
    Z = parse("module Z\nfield F2\nparams 1\n")
    d, w = interleaving_distance(free, Z)
    assert d == INF
    assert w is None


def test_distance_is_a_candidate_and_closure_holds():
    rng = rng_for(802)
    for _ in range(12):
        P = random_presentation(rng, F2, 1)
        Q = random_presentation(rng, F2, 1, name="N")
        d, w = interleaving_distance(P, Q)
        assert d in candidate_set(P, Q)
        if d != INF:
            assert w is not None
            Pm, Qm = minimize(P), minimize(Q)
            assert check_closure(w.A, w.B, InterleavingProblem(Pm, Qm, d))
            if d > 0:
                below = [c for c in candidate_set(P, Q).finite() if c < d]
                if below:
                    probe = InterleavingProblem(Pm, Qm, below[-1])
                    from pmod import is_interleaved
                    assert is_interleaved(probe) is None


def test_distance_probe_count_is_logarithmic():
    calls = {"n": 0}
    real = distance_mod.is_interleaved

    def counting(prob, budget, threads):
        calls["n"] += 1
        return real(prob, budget, threads)

    rng = rng_for(803)
    try:
        distance_mod.is_interleaved = counting
        for _ in range(10):
            P = random_presentation(rng, F2, 1)
            Q = random_presentation(rng, F2, 1, name="N")
            cans = candidate_set(P, Q)
            calls["n"] = 0
            interleaving_distance(P, Q)
            bound = math.ceil(math.log2(max(1, len(cans.finite())))) + 1
            assert calls["n"] <= bound, (calls["n"], bound)
    finally:
        distance_mod.is_interleaved = real


def test_distance_budget_propagates_with_bracket():
    with pytest.raises(BudgetExceeded) as err:
        interleaving_distance(parse(M_TEXT), parse(N_TEXT), budget=1)
    assert err.value.budget == 1
    assert err.value.bracket is not None
    lo, hi = err.value.bracket
    assert 0 <= lo < hi
    assert "bracketed" in str(err.value)


def test_distance_agrees_with_bottleneck_on_barcodes():
    rng = rng_for(804)
    for _ in range(8):
        P = random_presentation(rng, F5, 1)
        Q = random_presentation(rng, F5, 1, name="N")
        d, _ = interleaving_distance(P, Q)
        assert d == diagram_bottleneck(barcode(P), barcode(Q))


def test_is_isomorphic():
    M = parse(M_TEXT)
    assert is_isomorphic(M, M)
    assert not is_isomorphic(M, parse(N_TEXT))
    # a presentation and its padded form present the same module
    padded = parse("module M\nfield F5\nparams 1\n"
                   "gen a @ 0\ngen b @ 1\n"
                   "rel r0 @ 1 = 1*b + 3*a\nrel r1 @ 3 = 1*a\n")
    assert is_isomorphic(M, padded)
    Z = parse("module Z\nfield F5\nparams 1\n")
    assert is_isomorphic(Z, Z)
    assert not is_isomorphic(M, Z)


def test_distance_symmetry_small():
    rng = rng_for(805)
    for _ in range(8):
        P = random_presentation(rng, F5, 1)
        Q = random_presentation(rng, F5, 1, name="N")
        d1, _ = interleaving_distance(P, Q)
        d2, _ = interleaving_distance(Q, P)
        assert d1 == d2
