"""Generic ("most general") matrix factorization ansatze.

An entry of the odd differential between summands R(n_i) and R(n_j) has grading
n_j - n_i + |d|; the generic entry is a sum of one fresh parameter per monomial
of that grading.  Seeds fix some entries by hand (optionally perturbed by the
remaining monomials) or force them to zero.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional

from .mf import FREE, ZERO, MatrixFactorization, SuperModule, TensorRingPair
from .ring import GradedRing, Polynomial, as_fraction, monomials_of_grading


def entry_grading_matrix(shifts_row, shifts_col, degree=1) -> list:
    """Matrix with entries shifts_col[j] - shifts_row[i] + degree."""
    degree = as_fraction(degree)
    rows = [as_fraction(s) for s in shifts_row]
    cols = [as_fraction(s) for s in shifts_col]
    return [[c - r + degree for c in cols] for r in rows]


def shifts_from_grading_matrix(sharp_grades, flat_grades, degree=1) -> tuple:
    """Recover (even, odd) shifts, first even shift pinned to 0, from the two blocks.

    Raises ValueError when no shift lists realize the given gradings.
    """
    degree = as_fraction(degree)
    sharp_grades = [[as_fraction(x) for x in r] for r in sharp_grades]
    flat_grades = [[as_fraction(x) for x in r] for r in flat_grades]
    rp = len(sharp_grades)
    rm = len(flat_grades)
    odd = [sharp_grades[0][j] - degree for j in range(rm)]
    even = [odd[0] - sharp_grades[i][0] + degree for i in range(rp)]
    if (entry_grading_matrix(even, odd, degree) != sharp_grades
            or entry_grading_matrix(odd, even, degree) != flat_grades):
        raise ValueError("grading matrix is not realized by any choice of shifts")
    return tuple(even), tuple(odd)


def parse_grading_matrix(text: str) -> tuple:
    """Read the displayed 2r x 2r odd grading matrix.

    Format: optional ``scale p/q`` line, then 2r rows of whitespace-separated
    rationals, with ``.`` in the two zero diagonal blocks.
    Returns (sharp block, flat block).
    """
    scale = Fraction(1)
    rows = []
    for ln in text.splitlines():
        ln = ln.split("#", 1)[0].strip()
        if not ln:
            continue
        if ln.startswith("scale"):
            scale = as_fraction(ln.split()[1])
            continue
        rows.append(ln.split())
    n = len(rows)
    if n % 2 or any(len(r) != n for r in rows):
        raise ValueError("grading matrix must be square of even size")
    r = n // 2
    for i, row in enumerate(rows):
        blank = row[:r] if i < r else row[r:]
        if any(c != "." for c in blank):
            raise ValueError("diagonal blocks of an odd grading matrix must be '.'")
    sharp = [[as_fraction(c) * scale for c in row[r:]] for row in rows[:r]]
    flat = [[as_fraction(c) * scale for c in row[:r]] for row in rows[r:]]
    return sharp, flat


@dataclass(frozen=True)
class AnsatzSpec:
    pair: TensorRingPair
    shifts_even: tuple
    shifts_odd: tuple
    seed: Optional[tuple] = None  # (sharp, flat) of Polynomial / FREE / ZERO entries
    perturb: bool = True
    prefix: str = "c"

    def __post_init__(self):
        object.__setattr__(self, "shifts_even", tuple(as_fraction(s) for s in self.shifts_even))
        object.__setattr__(self, "shifts_odd", tuple(as_fraction(s) for s in self.shifts_odd))
        if not self.shifts_even or not self.shifts_odd:
            raise ValueError("shift lists must be nonempty")

    @property
    def module(self) -> SuperModule:
        return SuperModule.from_shifts(self.shifts_even, self.shifts_odd)

    @property
    def rank(self) -> tuple:
        return (len(self.shifts_even), len(self.shifts_odd))

    def gradings(self) -> tuple:
        deg = self.pair.differential_degree
        return (entry_grading_matrix(self.shifts_even, self.shifts_odd, deg),
                entry_grading_matrix(self.shifts_odd, self.shifts_even, deg))

    def __str__(self):
        ev = ",".join(str(s) for s in self.shifts_even)
        od = ",".join(str(s) for s in self.shifts_odd)
        return f"rank ({len(self.shifts_even)}|{len(self.shifts_odd)}) shifts {ev}|{od}"


@dataclass(frozen=True)
class GenericMF:
    spec: AnsatzSpec
    mf: MatrixFactorization
    parameters: tuple
    provenance: dict = field(hash=False, compare=False)

    @property
    def ring(self) -> GradedRing:
        return self.mf.ring

    @property
    def pair(self) -> TensorRingPair:
        return self.spec.pair


def build_generic(spec: AnsatzSpec) -> GenericMF:
    """Most general odd matrix with the gradings fixed by ``spec``."""
    pair = spec.pair
    base = pair.ring
    grade_sharp, grade_flat = spec.gradings()
    seed_sharp, seed_flat = spec.seed if spec.seed is not None else (None, None)

    plan = []  # (block, i, j, fixed polynomial in base ring or None, monomials to parametrize)
    for block, grades, seed in (("sharp", grade_sharp, seed_sharp), ("flat", grade_flat, seed_flat)):
        for i, row in enumerate(grades):
            for j, q in enumerate(row):
                entry = seed[i][j] if seed is not None else FREE
                monos = monomials_of_grading(base, q)
                if isinstance(entry, str):
                    plan.append((block, i, j, None, monos if entry == FREE else []))
                else:
                    fixed = entry.change_ring(base)
                    if fixed and fixed.gradings() != {q}:
                        raise ValueError(f"seeded {block}[{i}][{j}] = {fixed} does not have grading {q}")
                    free = [m for m in monos if m not in fixed.terms] if spec.perturb else []
                    plan.append((block, i, j, fixed, free))

    names = []
    provenance = {}
    for block, i, j, _, monos in plan:
        for m in monos:
            name = f"{spec.prefix}{len(names) + 1}"
            names.append(name)
            provenance[name] = (block, i, j, m)
    ring = base.with_parameters(names)
    n_base = len(base)
    n_par = len(names)

    entries = {"sharp": [[None] * len(grade_sharp[0]) for _ in grade_sharp],
               "flat": [[None] * len(grade_flat[0]) for _ in grade_flat]}
    k = 0
    for block, i, j, fixed, monos in plan:
        terms = {}
        if fixed is not None:
            for m, c in fixed.terms.items():
                terms[m + (0,) * n_par] = c
        for m in monos:
            par = [0] * n_par
            par[k] = 1
            terms[m + tuple(par)] = 1
            k += 1
        entries[block][i][j] = Polynomial(ring, terms, _trusted=True)
    target = pair.target.change_ring(ring)
    mf = MatrixFactorization(spec.module, entries["sharp"], entries["flat"], target)
    return GenericMF(spec, mf, tuple(names), provenance)


def parameter_count(spec: AnsatzSpec) -> int:
    """Independent count of the parameters ``build_generic`` will introduce."""
    total = 0
    grade_sharp, grade_flat = spec.gradings()
    seeds = spec.seed if spec.seed is not None else (None, None)
    for grades, seed in zip((grade_sharp, grade_flat), seeds):
        for i, row in enumerate(grades):
            for j, q in enumerate(row):
                n = len(monomials_of_grading(spec.pair.ring, q))
                entry = seed[i][j] if seed is not None else FREE
                if isinstance(entry, str):
                    total += n if entry == FREE else 0
                elif spec.perturb:
                    total += n - len(entry.terms)
    return total


def weight_denominator(ring: GradedRing) -> int:
    den = 1
    for v in ring.variables:
        if not v.is_parameter:
            den = den * v.weight.denominator // math.gcd(den, v.weight.denominator)
    return den


def enumerate_specs(pair: TensorRingPair, max_rank: int, shift_bound) -> Iterator[AnsatzSpec]:
    """Rank (m|m) ansatze for m <= max_rank with bounded shifts, rank first then lexicographic.

    Shifts are multiples of 1/L (L the lcm of the weight denominators) with
    absolute value <= shift_bound; each part is a multiset listed in descending
    order and the first even shift is pinned to 0.
    """
    bound = as_fraction(shift_bound)
    den = weight_denominator(pair.ring)
    top = math.floor(bound * den)
    grid = [Fraction(k, den) for k in range(-top, top + 1)]
    nonpos = [g for g in grid if g <= 0]
    for m in range(1, max_rank + 1):
        evens = [(Fraction(0),) + tuple(reversed(c))
                 for c in itertools.combinations_with_replacement(nonpos, m - 1)]
        odds = [tuple(reversed(c)) for c in itertools.combinations_with_replacement(grid, m)]
        for even, odd in sorted(itertools.product(evens, odds)):
            yield AnsatzSpec(pair, even, odd)
