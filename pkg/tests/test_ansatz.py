import itertools
from fractions import Fraction
from pathlib import Path

import pytest

from orbifold.ansatz import (AnsatzSpec, build_generic, entry_grading_matrix, enumerate_specs, parameter_count,
                             parse_grading_matrix, shifts_from_grading_matrix)
from orbifold.mf import FREE, ZERO, grading_matrix_check
from orbifold.ring import Polynomial

from oracles import weighted_monomials

GOLDEN = Path(__file__).parent / "golden"


def test_entry_grading_examples():
    s = [0, "1/4", "1/3", "7/12"]
    table = [[12, 15, 16, 19], [9, 12, 13, 16], [8, 11, 12, 15], [5, 8, 9, 12]]
    assert entry_grading_matrix(s, s) == [[Fraction(v, 12) for v in row] for row in table]
    assert entry_grading_matrix([0], [0]) == [[1]]
    assert entry_grading_matrix([0], ["-1/3"]) == [[Fraction(2, 3)]]
    assert entry_grading_matrix(["-1/3"], [0]) == [[Fraction(4, 3)]]


def test_shifts_from_grading_matrices(problems):
    assert problems["q12_e18"].shifts() == (
        tuple(Fraction(x) for x in ("0", "-8/15", "-1/3", "-1/5")),) * 2
    even, odd = problems["q18_e30"].shifts()
    assert even == tuple(Fraction(x) for x in ("0", "5/24", "-1/8", "1/3"))
    assert odd == tuple(Fraction(x) for x in ("-1/8", "1/3", "0", "5/24"))
    sharp, flat = parse_grading_matrix(problems["q18_e30"].grading_matrix.read_text())
    assert entry_grading_matrix(even, odd) == sharp and entry_grading_matrix(odd, even) == flat


def test_unrealizable_grading_matrix():
    with pytest.raises(ValueError):
        shifts_from_grading_matrix([[1, 1], [1, 2]], [[1, 1], [1, 1]])
    with pytest.raises(ValueError):
        parse_grading_matrix(". 1\n1 1\n")


def test_x3_generic(x3_pair):
    gmf = build_generic(AnsatzSpec(x3_pair, [0], ["-1/3"]))
    assert gmf.parameters == ("c1", "c2", "c3", "c4", "c5")
    assert str(gmf.mf.sharp[0][0]) == "x*c1 + y*c2"
    assert str(gmf.mf.flat[0][0]) == "x^2*c3 + x*y*c4 + y^2*c5"


@pytest.mark.parametrize("name,count", [("q10_e14", 106), ("q12_e18", 114), ("q18_e30", 138),
                                        ("q12_e18_seeded", 68), ("q18_e30_seeded", 84)])
def test_parameter_counts(problems, name, count):
    spec = problems[name].spec()
    gmf = build_generic(spec)
    assert len(gmf.parameters) == parameter_count(spec) == count
    assert grading_matrix_check(gmf.mf)


@pytest.mark.parametrize("name", ["q10_e14", "q12_e18", "q18_e30"])
def test_count_against_brute_force(problems, name):
    spec = problems[name].spec()
    weights = spec.pair.ring.weights
    expected = sum(len(weighted_monomials(weights, q)) for block in spec.gradings() for row in block for q in row)
    assert parameter_count(spec) == expected


def test_each_parameter_multiplies_one_monomial(problems):
    gmf = build_generic(problems["q12_e18_seeded"].spec())
    ring = gmf.ring
    seen = {}
    for block, mat in (("sharp", gmf.mf.sharp), ("flat", gmf.mf.flat)):
        for i, row in enumerate(mat):
            for j, entry in enumerate(row):
                for m in entry.terms:
                    used = [ring.names[k] for k in ring.parameter_indices if m[k]]
                    assert len(used) <= 1
                    if used:
                        assert m[ring.index(used[0])] == 1 and used[0] not in seen
                        seen[used[0]] = (block, i, j, m[:len(ring.geometric_indices)])
    assert seen == gmf.provenance


def test_seed_entries_are_kept_and_perturbed(problems):
    spec = problems["q12_e18_seeded"].spec()
    gmf = build_generic(spec)
    geo = gmf.ring.geometric_indices
    seed_sharp = spec.seed[0]
    for i, row in enumerate(gmf.mf.sharp):
        for j, entry in enumerate(row):
            seed = seed_sharp[i][j]
            if seed == ZERO:
                assert not entry
                continue
            fixed = Polynomial(entry.ring, {m: c for m, c in entry.terms.items()
                                            if not any(m[k] for k in entry.ring.parameter_indices)})
            assert fixed == seed.change_ring(entry.ring)


def test_section_gradings_without_monomials(problems):
    spec = problems["q12_e18"].spec()
    ring = spec.pair.ring
    sharp, _ = spec.gradings()
    empty = {Fraction(7, 15), Fraction(17, 15)}
    for row in sharp:
        for q in row:
            if q in empty:
                assert not weighted_monomials(ring.weights, q)
    # 13/15 and 23/15 are reachable through x (weight 1/5) together with v or y
    for q in (Fraction(13, 15), Fraction(23, 15)):
        monos = weighted_monomials(ring.weights, q)
        assert monos and all(m[ring.index("x")] == 1 for m in monos)


def test_seed_grading_mismatch(x3_pair):
    bad = ([[x3_pair.ring.parse("x^2")]], [[FREE]])
    with pytest.raises(ValueError):
        build_generic(AnsatzSpec(x3_pair, [0], ["-1/3"], seed=bad))


def test_unperturbed_seed_has_no_parameters(x3_pair):
    ring = x3_pair.ring
    spec = AnsatzSpec(x3_pair, [0], ["-1/3"], seed=([[ring.parse("x - y")]], [[ring.parse("x^2 + x*y + y^2")]]),
                      perturb=False)
    assert build_generic(spec).parameters == ()


# -- enumeration -----------------------------------------------------------------------

def brute_force_specs(pair, max_rank, bound, den):
    grid = [Fraction(k, den) for k in range(-int(bound * den), int(bound * den) + 1)]
    out = []
    for m in range(1, max_rank + 1):
        found = set()
        for even in itertools.product(grid, repeat=m):
            if even[0] != 0 or any(a < b for a, b in zip(even, even[1:])):
                continue
            for odd in itertools.product(grid, repeat=m):
                if any(a < b for a, b in zip(odd, odd[1:])):
                    continue
                found.add((even, odd))
        out += sorted(found)
    return out


def test_enumeration_matches_brute_force(x3_pair):
    got = [(s.shifts_even, s.shifts_odd) for s in enumerate_specs(x3_pair, 2, 1)]
    assert got == brute_force_specs(x3_pair, 2, 1, 3)
    assert len(set(got)) == len(got)


def test_enumeration_examples(x3_pair):
    assert list(enumerate_specs(x3_pair, 0, 2)) == []
    rank1 = [s for s in enumerate_specs(x3_pair, 1, 2)]
    assert all(s.rank == (1, 1) for s in rank1)
    assert any(s.gradings() == ([[Fraction(2, 3)]], [[Fraction(4, 3)]]) for s in rank1)


def test_enumeration_golden(x3_pair):
    lines = [str(s) for s in itertools.islice(enumerate_specs(x3_pair, 2, 2), 50)]
    assert lines == (GOLDEN / "enumerate_x3.txt").read_text().splitlines()
    assert lines == [str(s) for s in itertools.islice(enumerate_specs(x3_pair, 2, 2), 50)]
