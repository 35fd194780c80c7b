"""Consistency of parameter systems, system export and the bounded search loop."""

from __future__ import annotations

import itertools
import logging
import time
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Optional

import sympy

from .ansatz import AnsatzSpec, GenericMF, build_generic, enumerate_specs
from .equations import (EquationSystem, SystemStats, append_nonvanishing, dump_system, extract,
                        linear_eliminate, quantum_dimensions, stats)
from .groebner import GroebnerBasis, Limits, ResourceLimitExceeded, buchberger, degrevlex
from .mf import TensorRingPair, quantum_dimension, verify_factorization
from .ring import Polynomial, central_charge, format_rational

log = logging.getLogger(__name__)

CONSISTENT = "consistent"
INCONSISTENT = "inconsistent"
RESOURCE_LIMIT = "resource_limit"

DEFAULT_LIMITS = Limits(steps=10**6, polys=10**4, seconds=60.0)


class CentralChargeWarning(UserWarning):
    pass


@dataclass
class Verdict:
    outcome: str
    basis: Optional[GroebnerBasis] = None
    stats: dict = field(default_factory=dict)
    seconds: float = 0.0
    reason: str = ""

    @property
    def consistent(self) -> bool:
        return self.outcome == CONSISTENT

    def __str__(self):
        extra = f" ({self.reason})" if self.reason else ""
        return f"{self.outcome}{extra} in {self.seconds:.2f}s"


def check(sys: EquationSystem, limits: Optional[Limits] = None) -> Verdict:
    """Weak Nullstellensatz test: inconsistent iff the reduced degrevlex basis is {1}."""
    limits = DEFAULT_LIMITS if limits is None else limits
    t0 = time.perf_counter()
    if sys.is_trivially_inconsistent():
        return Verdict(INCONSISTENT, reason="constant equation", seconds=time.perf_counter() - t0)
    eqs = [e for e in sys.equations if e]
    if not eqs:
        return Verdict(CONSISTENT, reason="no equations", seconds=time.perf_counter() - t0)
    try:
        gb = buchberger(eqs, order=degrevlex(len(sys.ring)), limits=limits)
    except ResourceLimitExceeded as exc:
        return Verdict(RESOURCE_LIMIT, stats=exc.stats, reason=exc.reason,
                       seconds=time.perf_counter() - t0)
    outcome = INCONSISTENT if gb.is_unit() else CONSISTENT
    return Verdict(outcome, gb, dict(gb.stats), time.perf_counter() - t0)


# --------------------------------------------------------------------------
# export

def quadratic_monomials(n: int) -> list:
    """Monomials of degree <= 2 in n variables, as index tuples: x_i*x_j (i <= j, lex), x_i, 1."""
    quad = list(itertools.combinations_with_replacement(range(n), 2))
    return quad + [(i,) for i in range(n)] + [()]


def export(sys: EquationSystem, fmt: str = "native") -> str:
    """Text form of ``sys``.

    ``native`` is the system dump.  ``mq_style`` writes a header, the monomial
    order, then one dense row of rational coefficients per equation over
    x1*x1, x1*x2, ..., xn*xn, x1, ..., xn, 1.
    """
    if fmt == "native":
        return dump_system(sys)
    if fmt != "mq_style":
        raise ValueError(f"unknown export format {fmt!r}")
    names = list(sys.parameters)
    pos = {sys.ring.index(p): k for k, p in enumerate(names)}
    cols = quadratic_monomials(len(names))
    col_of = {c: k for k, c in enumerate(cols)}
    rows = []
    for e in sys.equations:
        if e.total_degree() > 2:
            raise ValueError(f"mq_style export needs quadratic equations, got degree {e.total_degree()}")
        row = ["0"] * len(cols)
        for m, c in e.terms.items():
            idx = []
            for i, a in enumerate(m):
                if a:
                    if i not in pos:
                        raise ValueError(f"equation uses eliminated variable {sys.ring.names[i]}")
                    idx += [pos[i]] * a
            row[col_of[tuple(sorted(idx))]] = format_rational(c)
        rows.append(" ".join(row) + " ;")
    lines = [f"# variables: {' '.join(names)}" if names else "# variables:",
             f"{len(names)} variables",
             f"{len(rows)} equations",
             "# columns: x_i*x_j (i<=j, lexicographic), x_i, 1"]
    return "\n".join(lines + rows) + "\n"


# --------------------------------------------------------------------------
# witnesses

def _rational_roots(p: Polynomial, name: str) -> list:
    x = sympy.Symbol(name)
    expr = sum(sympy.Rational(c.numerator, c.denominator) * x ** m[p.ring.index(name)]
               for m, c in ((m, Fraction(c)) for m, c in p.terms.items()))
    return [Fraction(int(r.p), int(r.q)) for r in sorted(sympy.Poly(expr, x).ground_roots())]


_TRIALS = [Fraction(k) for k in (1, -1, 2, -2, 0, 3, -3)]


def find_witness(sys: EquationSystem, limits: Optional[Limits] = None) -> Optional[dict]:
    """Best-effort rational point of ``sys`` (a dict over all remaining parameters).

    Parameters are fixed one at a time; a parameter is taken from the rational
    roots of a univariate basis element when there is one, otherwise from a
    few small integers, keeping the first value that leaves the system
    consistent.  Returns None when this greedy walk gets stuck.
    """
    limits = limits or Limits(steps=10**5, polys=2000, seconds=30.0)
    deadline = time.perf_counter() + (limits.seconds or float("inf"))
    ring = sys.ring
    eqs = [e for e in sys.equations if e]
    values = {}
    order = degrevlex(len(ring))

    def basis(es):
        es = [e for e in es if e]
        if not es:
            return None
        left = deadline - time.perf_counter()
        if left <= 0:
            raise ResourceLimitExceeded("seconds", {})
        return buchberger(es, order=order, limits=Limits(limits.steps, limits.polys, left))

    try:
        gb = basis(eqs)
        if gb is not None and gb.is_unit():
            return None
        for name in sys.parameters:
            trials = _TRIALS
            if gb is not None:
                v = ring.index(name)
                uni = [g for g in gb if g.variables_used() == {v}]
                if uni:
                    trials = _rational_roots(uni[0], name)
            for val in trials:
                trial = [e.substitute({name: val}) for e in eqs]
                if any(e.is_constant() and e for e in trial):
                    continue
                tgb = basis(trial)
                if tgb is None or not tgb.is_unit():
                    eqs, gb, values[name] = trial, tgb, val
                    break
            else:
                return None
    except ResourceLimitExceeded:
        return None
    if any(e for e in eqs):
        return None
    return values


def verify_witness(gmf: GenericMF, sys: EquationSystem, point: dict) -> bool:
    """Round trip: the point gives an honest factorization with nonzero quantum dimensions."""
    full = sys.substitute_solution(point)
    values = {p: full.get(p, 0) for p in gmf.parameters}
    mf = gmf.mf.substitute(values).change_ring(gmf.pair.ring)
    if not verify_factorization(mf).verified:
        return False
    for side in ("left", "right"):
        q = quantum_dimension(mf, gmf.pair, side)
        if not q.is_constant() or not q:
            return False
    return True


# --------------------------------------------------------------------------
# search

@dataclass
class SearchReport:
    spec: AnsatzSpec
    stats: Optional[SystemStats]
    verdict: Verdict
    witness: Optional[dict] = None
    system: Optional[EquationSystem] = field(default=None, repr=False)
    gmf: Optional[GenericMF] = field(default=None, repr=False)

    def summary(self) -> str:
        size = f"{self.stats.parameter_count} vars {self.stats.equation_count} eqs" if self.stats else "-"
        line = f"{self.spec}: {size}: {self.verdict.outcome}"
        if self.witness is not None:
            line += " witness " + ", ".join(f"{k}={format_rational(v)}" for k, v in self.witness.items())
        return line


def reduce_system(gmf: GenericMF, half: bool = True) -> EquationSystem:
    """extract, eliminate linear equations, add the helper equations, eliminate again."""
    sys = linear_eliminate(extract(gmf, half))
    if sys.is_trivially_inconsistent():
        return sys
    sys = append_nonvanishing(sys, gmf, quantum_dimensions(gmf, sys.eliminated))
    return linear_eliminate(sys)


def evaluate_spec(spec: AnsatzSpec, limits: Optional[Limits] = None, half: bool = True,
                  witness: bool = True) -> SearchReport:
    gmf = build_generic(spec)
    sys = reduce_system(gmf, half)
    verdict = check(sys, limits)
    point = None
    if verdict.consistent and witness:
        point = find_witness(sys)
        if point is not None and not verify_witness(gmf, sys, point):
            log.warning("discarding witness that does not verify for %s", spec)
            point = None
    return SearchReport(spec, stats(sys), verdict, point, sys, gmf)


def search(pair: TensorRingPair, max_rank: int = 1, shift_bound=1, limits: Optional[Limits] = None,
           half: bool = True, specs: Optional[Iterable[AnsatzSpec]] = None,
           witness: bool = True) -> Iterator[SearchReport]:
    """Try ansatze in enumeration order until one gives a consistent system.

    ``specs`` overrides the enumeration (e.g. a single seeded ansatz).
    Reports are yielded for every candidate; the stream stops after the first
    consistent verdict.
    """
    cl, cr = central_charge(pair.left), central_charge(pair.right)
    if cl != cr:
        warnings.warn(f"central charges differ ({cl} vs {cr}); the potentials cannot be orbifold equivalent",
                      CentralChargeWarning, stacklevel=2)
    if specs is None:
        specs = enumerate_specs(pair, max_rank, shift_bound)
    for spec in specs:
        report = evaluate_spec(spec, limits, half, witness)
        yield report
        if report.verdict.consistent:
            return
