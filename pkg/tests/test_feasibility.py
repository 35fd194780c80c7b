import random
import warnings
from fractions import Fraction

import pytest

from orbifold.ansatz import AnsatzSpec, build_generic
from orbifold.equations import EquationSystem, append_nonvanishing, extract
from orbifold.feasibility import (CONSISTENT, INCONSISTENT, RESOURCE_LIMIT, CentralChargeWarning, check, export,
                                  find_witness, quadratic_monomials, search, verify_witness)
from orbifold.groebner import Limits
from orbifold.mf import TensorRingPair
from orbifold.ring import GradedRing, Polynomial, make_potential


def system(ring, eqs):
    eqs = [ring.parse(e) if isinstance(e, str) else e for e in eqs]
    return EquationSystem(ring, ring.names, eqs, [None] * len(eqs))


@pytest.fixture(scope="module")
def x3_system(x3_pair):
    gmf = build_generic(AnsatzSpec(x3_pair, [0], ["-1/3"]))
    return gmf, extract(gmf, half=True), append_nonvanishing(extract(gmf, half=True), gmf)


def test_check_examples(x3_system):
    _, _, full = x3_system
    assert check(full).outcome == CONSISTENT
    ring = GradedRing.from_weights({}, parameters=["c1", "cl"])
    assert check(system(ring, ["c1^2", "c1*cl - 1"])).outcome == INCONSISTENT
    assert check(system(ring, [])).outcome == CONSISTENT
    assert check(system(ring, ["3"])).outcome == INCONSISTENT


def test_check_resource_limit():
    ring = GradedRing.from_weights({}, parameters=["a", "b", "c"])
    v = check(system(ring, ["a^2 + b*c - 1", "a*b + c^2 - 2", "b^2 + a*c - 3"]), Limits(steps=1))
    assert v.outcome == RESOURCE_LIMIT and v.reason


def _random_system(rng, ring, n):
    out = []
    for _ in range(n):
        terms = {}
        for _ in range(3):
            m = [0] * len(ring)
            for _ in range(rng.randint(0, 2)):
                m[rng.randrange(len(ring))] += 1
            terms[tuple(m)] = rng.randint(-3, 3)
        p = Polynomial(ring, terms)
        if p:
            out.append(p)
    return out


def test_unit_combinations_are_inconsistent():
    rng = random.Random(41)
    ring = GradedRing.from_weights({}, parameters=["a", "b", "c"])
    for _ in range(40):
        eqs = _random_system(rng, ring, 3)
        if not eqs:
            continue
        p = eqs[0]
        extra = [p * q - 1 for q in _random_system(rng, ring, 1)] or [p - p + 1]
        # p and p*q - 1 together force 0 = 1
        assert check(system(ring, eqs + extra)).outcome == INCONSISTENT


def test_check_invariances():
    rng = random.Random(42)
    ring = GradedRing.from_weights({}, parameters=["a", "b", "c"])
    renamed = GradedRing.from_weights({}, parameters=["z", "a", "q"])
    for _ in range(40):
        eqs = _random_system(rng, ring, 3)
        if not eqs:
            continue
        base = check(system(ring, eqs)).outcome
        scaled = [e.scale(Fraction(rng.choice([1, -2, 3]), rng.choice([1, 5]))) for e in eqs]
        assert check(system(ring, scaled)).outcome == base
        moved = [Polynomial(renamed, e.terms) for e in eqs]
        assert check(system(renamed, moved)).outcome == base


# -- export -----------------------------------------------------------------------------------

def test_mq_export_x3(x3_system):
    _, pre, full = x3_system
    text = export(pre, "mq_style")
    lines = text.splitlines()
    assert "5 variables" in lines and "4 equations" in lines
    rows = [ln for ln in lines if ln.endswith(";")]
    assert len(rows) == 4 and all(len(r.split()) == 22 for r in rows)  # 21 coefficients and ';'
    assert len(quadratic_monomials(5)) == 21
    with pytest.raises(ValueError):
        export(full, "mq_style")


def test_mq_export_values():
    ring = GradedRing.from_weights({}, parameters=["a", "b"])
    text = export(system(ring, ["2*a*b - 1/3*b + 5"]), "mq_style")
    # columns: a*a a*b b*b a b 1
    assert text.splitlines()[-1] == "0 2 0 0 -1/3 5 ;"


def test_export_empty_and_native(x3_system):
    ring = GradedRing.from_weights({}, parameters=[])
    assert "0 equations" in export(system(ring, []), "mq_style").splitlines()
    _, pre, _ = x3_system
    assert export(pre, "native").startswith("system vars 5 eqs 4\n")
    with pytest.raises(ValueError):
        export(pre, "json")


def test_mq_export_q10(problems):
    gmf = build_generic(problems["q10_e14"].spec())
    text = export(extract(gmf, half=True), "mq_style")
    rows = [ln for ln in text.splitlines() if ln.endswith(";")]
    assert len(rows) == 235
    assert len(rows[0].split()) == len(quadratic_monomials(106)) + 1


# -- witnesses and search -----------------------------------------------------------------------

def test_witness_round_trip(x3_system):
    gmf, _, full = x3_system
    point = find_witness(full)
    assert point is not None and verify_witness(gmf, full, point)


def test_search_x3(x3_pair):
    reports = list(search(x3_pair, max_rank=1, shift_bound=1))
    last = reports[-1]
    assert last.verdict.outcome == CONSISTENT
    assert last.spec.gradings() == ([[Fraction(2, 3)]], [[Fraction(4, 3)]])
    assert last.witness is not None
    assert all(r.verdict.outcome == INCONSISTENT for r in reports[:-1])


@pytest.mark.parametrize("k", [2, 3, 4])
def test_search_reflexive(k):
    w = Fraction(2, k)
    pair = TensorRingPair(make_potential(f"x^{k}", {"x": w}), make_potential(f"y^{k}", {"y": w}))
    reports = list(search(pair, max_rank=1, shift_bound=1))
    assert reports[-1].verdict.outcome == CONSISTENT
    assert reports[-1].witness is not None


def test_search_central_charge_mismatch():
    pair = TensorRingPair(make_potential("x^3", {"x": "2/3"}), make_potential("y^4", {"y": "1/2"}))
    with pytest.warns(CentralChargeWarning):
        reports = list(search(pair, max_rank=1, shift_bound=1))
    assert reports and all(r.verdict.outcome != CONSISTENT for r in reports)
