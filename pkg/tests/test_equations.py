import random
from fractions import Fraction

import pytest

from orbifold.ansatz import AnsatzSpec, build_generic
from orbifold.equations import (EquationSystem, append_nonvanishing, dump_system, extract, linear_eliminate,
                                parse_system, quantum_dimensions, stats)
from orbifold.feasibility import find_witness
from orbifold.groebner import buchberger, normal_form
from orbifold.mf import verify_factorization
from orbifold.ring import GradedRing, Polynomial


@pytest.fixture(scope="module")
def x3_gmf(x3_pair):
    return build_generic(AnsatzSpec(x3_pair, [0], ["-1/3"]))


def test_x3_extract(x3_gmf):
    sys = extract(x3_gmf, half=True)
    assert len(sys.equations) == 4 and len(sys.parameters) == 5
    assert all(e.total_degree() == 2 for e in sys.equations)
    assert sorted(str(e) for e in sys.equations) == sorted(
        ["c1*c3 - 1", "c2*c3 + c1*c4", "c2*c4 + c1*c5", "c2*c5 + 1"])
    # one equation per cubic monomial
    assert sorted(p[3] for p in sys.provenance) == sorted([(3, 0), (2, 1), (1, 2), (0, 3)])


def test_x3_full_extract_per_block(x3_gmf):
    sys = extract(x3_gmf, half=False)
    assert len(sys.equations) == 8
    assert len(set(sys.equations)) == 4


def test_x3_helpers(x3_gmf):
    sys = append_nonvanishing(extract(x3_gmf, half=True), x3_gmf)
    st = stats(sys)
    assert (st.parameter_count, st.equation_count) == (7, 6)
    assert st.row("x3~y3") == "x3~y3 | 7 | 6"
    assert st.degree_histogram == {2: 4, 3: 2}
    assert sys.helpers == ("cl", "cr")


def test_zero_qdim_is_inconsistent(x3_gmf):
    sys = extract(x3_gmf, half=True)
    zero = x3_gmf.ring.zero()
    out = append_nonvanishing(sys, x3_gmf, qdims=(zero, zero))
    assert out.is_trivially_inconsistent()


def test_linear_eliminate_example():
    ring = GradedRing.from_weights({}, parameters=["c1", "c2"])
    sys = EquationSystem(ring, ("c1", "c2"), [ring.parse("c1 - c2"), ring.parse("c2^2 - 1")], [None, None])
    out = linear_eliminate(sys)
    assert [str(e) for e in out.equations] == ["c2^2 - 1"]
    assert out.eliminated == {"c1": ring.var("c2")}
    assert out.parameters == ("c2",)


def test_linear_eliminate_never_divides_by_parameters():
    ring = GradedRing.from_weights({}, parameters=["a", "b"])
    sys = EquationSystem(ring, ("a", "b"), [ring.parse("a*b - 1")], [None])
    assert linear_eliminate(sys).equations == sys.equations


def test_linear_eliminate_max_passes():
    ring = GradedRing.from_weights({}, parameters=["a", "b", "c"])
    eqs = [ring.parse("a - b"), ring.parse("b - c + 1"), ring.parse("c^2 - 4")]
    sys = EquationSystem(ring, ("a", "b", "c"), eqs, [None] * 3)
    assert len(linear_eliminate(sys, max_passes=1).eliminated) == 1
    assert len(linear_eliminate(sys).eliminated) == 2


def test_elimination_map_reproduces_system():
    rng = random.Random(31)
    ring = GradedRing.from_weights({}, parameters=[f"c{i}" for i in range(1, 6)])
    names = ring.names
    steps = 0
    for _ in range(50):
        eqs = []
        for _ in range(4):
            terms = {}
            for _ in range(3):
                m = [0] * 5
                for _ in range(rng.randint(1, 2)):
                    m[rng.randrange(5)] += 1
                terms[tuple(m)] = rng.randint(-3, 3)
            eqs.append(Polynomial(ring, terms))
        eqs = [e for e in eqs if e]
        if not eqs:
            continue
        sys = EquationSystem(ring, names, eqs, [None] * len(eqs))
        out = linear_eliminate(sys)
        steps += len(out.eliminated)
        # substituting the eliminated map into the original system lands in the reduced ideal
        subs = {k: v for k, v in out.eliminated.items()}
        remaining = [e for e in out.equations if e]
        gb = buchberger(remaining) if remaining else None
        for e in eqs:
            r = e.substitute(subs)
            assert (not r) if gb is None else not normal_form(r, gb)
    assert steps > 20


def test_halved_system_generates_full_ideal(x3_gmf, problems):
    for gmf in (x3_gmf, build_generic(AnsatzSpec(x3_gmf.pair, [0, "-1/3"], ["-1/3", "-2/3"]))):
        half = extract(gmf, half=True)
        full = extract(gmf, half=False)
        gb = buchberger(half.equations)
        assert all(not normal_form(e, gb) for e in full.equations)


def test_round_trip_at_witness(x3_gmf):
    sys = linear_eliminate(append_nonvanishing(extract(x3_gmf, half=True), x3_gmf))
    point = find_witness(sys)
    assert point is not None
    full = sys.substitute_solution(point)
    mf = x3_gmf.mf.substitute({p: full[p] for p in x3_gmf.parameters}).change_ring(x3_gmf.pair.ring)
    assert verify_factorization(mf).verified
    for e in append_nonvanishing(extract(x3_gmf, half=False), x3_gmf).equations:
        assert e.evaluate(full) == 0


def test_table_sizes(problems):
    expected = {"q10_e14": (108, 237), "q12_e18": (116, 263), "q18_e30": (140, 341)}
    for name, size in expected.items():
        gmf = build_generic(problems[name].spec())
        sys = append_nonvanishing(extract(gmf, half=True), gmf)
        st = stats(sys)
        assert (st.parameter_count, st.equation_count) == size
        core = [e for e, p in zip(sys.equations, sys.provenance) if p[0] != "helper"]
        assert all(e.total_degree() == 2 for e in core)
        rp, rm = gmf.spec.rank
        helpers = [e for e, p in zip(sys.equations, sys.provenance) if p[0] == "helper"]
        n_vars = len(gmf.pair.ring.names)
        assert all(e.total_degree() == n_vars + 1 for e in helpers)
    gmf = build_generic(problems["q10_e14"].spec())
    assert len(extract(gmf, half=False).equations) == 470


def test_dump_round_trip(x3_gmf):
    sys = append_nonvanishing(extract(x3_gmf, half=True), x3_gmf)
    text = dump_system(sys)
    assert text.splitlines()[0] == "system vars 7 eqs 6"
    back = parse_system(text)
    assert [str(e) for e in back.equations] == [str(e) for e in sys.equations]
    assert back.parameters == sys.parameters
    with pytest.raises(ValueError):
        parse_system("system vars 1 eqs 1\nv a\n")


def test_qdims_after_elimination(x3_gmf):
    sys = linear_eliminate(extract(x3_gmf, half=True))
    ql, qr = quantum_dimensions(x3_gmf, sys.eliminated)
    assert not (ql.variable_names_used() & set(sys.eliminated))
