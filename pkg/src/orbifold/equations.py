"""Constraint systems on ansatz parameters.

``extract`` turns d_Q^2 = (f - g) Id into coefficient equations, ``append_nonvanishing``
adds c_l q_l - 1 and c_r q_r - 1 for the quantum dimensions, and
``linear_eliminate`` repeatedly solves equations of the form c*v + r (c a nonzero
rational, r free of v) before a Groebner basis is attempted.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Optional

from . import matrix
from .ansatz import GenericMF
from .mf import quantum_dimension
from .ring import GradedRing, Polynomial, parse_polynomial

HELPER_NAMES = ("cl", "cr")


@dataclass
class EquationSystem:
    ring: GradedRing                 # parameter-only ring
    parameters: tuple                # parameters not yet eliminated
    equations: list
    provenance: list                 # per equation: (block, row, col, geometric exponents) or a tag
    eliminated: dict = field(default_factory=dict)
    helpers: tuple = ()

    def __len__(self):
        return len(self.equations)

    def is_trivially_inconsistent(self) -> bool:
        return any(e.is_constant() and e for e in self.equations)

    def occurring_parameters(self) -> list:
        used = set()
        for e in self.equations:
            used |= e.variable_names_used()
        return [p for p in self.parameters if p in used]

    def core(self) -> "EquationSystem":
        """The system without the quantum-dimension helper equations."""
        keep = [(e, p) for e, p in zip(self.equations, self.provenance) if p[0] != "helper"]
        return replace(self, parameters=tuple(p for p in self.parameters if p not in self.helpers),
                       equations=[e for e, _ in keep], provenance=[p for _, p in keep], helpers=())

    def substitute_solution(self, values: dict) -> dict:
        """Extend values of the remaining parameters to all eliminated ones."""
        full = dict(values)
        for name, expr in self.eliminated.items():
            full[name] = expr.evaluate({k: full.get(k, 0) for k in expr.variable_names_used()})
        return full


def _normalize(p: Polynomial) -> Polynomial:
    return p.primitive()


def extract(gmf: GenericMF, half: bool = False) -> EquationSystem:
    """Coefficient equations of sharp*flat = target*Id (and flat*sharp unless ``half``).

    Duplicates up to rational scaling are removed within each block.
    """
    mf = gmf.mf
    ring = mf.ring
    pring = ring.subring(gmf.parameters)
    geo = ring.geometric_indices
    blocks = [("sharp*flat", mf.sharp, mf.flat)]
    if not half:
        blocks.append(("flat*sharp", mf.flat, mf.sharp))
    equations, provenance = [], []
    for name, a, b in blocks:
        seen = set()
        prod = matrix.sub(matrix.matmul(a, b), matrix.identity(ring, len(a), mf.target))
        for i, row in enumerate(prod):
            for j, entry in enumerate(row):
                for mono, coeff in sorted(entry.coefficients_in(geo).items(), reverse=True):
                    eq = _normalize(coeff.change_ring(pring))
                    if eq in seen:
                        continue
                    seen.add(eq)
                    equations.append(eq)
                    provenance.append((name, i, j, mono))
    return EquationSystem(pring, tuple(gmf.parameters), equations, provenance)


def constant_part(q: Polynomial) -> Polynomial:
    """Component of grading zero in the geometric variables."""
    geo = q.ring.geometric_indices
    return Polynomial(q.ring, {m: c for m, c in q.terms.items() if not any(m[i] for i in geo)})


def quantum_dimensions(gmf: GenericMF, eliminated: Optional[dict] = None) -> tuple:
    """Left and right quantum dimensions of ``gmf`` as polynomials in its parameters."""
    mf = gmf.mf
    if eliminated:
        subs = {k: v.change_ring(mf.ring) for k, v in eliminated.items()}
        mf = mf.substitute(subs)
    return tuple(constant_part(quantum_dimension(mf, gmf.pair, side)) for side in ("left", "right"))


def append_nonvanishing(sys: EquationSystem, gmf: GenericMF, qdims: Optional[tuple] = None) -> EquationSystem:
    """Add c_l q_l - 1 = 0 and c_r q_r - 1 = 0.

    The quantum dimensions are computed on ``gmf`` after applying the
    substitutions already recorded in ``sys.eliminated``.
    """
    if qdims is None:
        qdims = quantum_dimensions(gmf, sys.eliminated)
    ring = sys.ring.with_parameters(HELPER_NAMES)
    equations = [e.change_ring(ring) for e in sys.equations]
    provenance = list(sys.provenance)
    for name, q, side in zip(HELPER_NAMES, qdims, ("left", "right")):
        q = q.change_ring(ring)
        eq = _normalize(ring.var(name) * q - 1)
        equations.append(eq)
        provenance.append(("helper", side, name, None))
    eliminated = {k: v.change_ring(ring) for k, v in sys.eliminated.items()}
    return EquationSystem(ring, tuple(sys.parameters) + HELPER_NAMES, equations, provenance,
                          eliminated, tuple(sys.helpers) + HELPER_NAMES)


def _linear_pivot(e: Polynomial, v: int):
    """Coefficient c if ``e`` = c*x_v + (terms free of x_v), else None."""
    found = None
    for m, c in e.terms.items():
        if m[v]:
            if found is not None or m[v] != 1 or sum(m) != 1:
                return None
            found = c
    return found


def linear_eliminate(sys: EquationSystem, max_passes: Optional[int] = None) -> EquationSystem:
    """Solve linear equations c*v + r = 0 (c a nonzero constant) and substitute, to a fixpoint.

    Pivot: the variable occurring in the fewest equations, ties broken by
    parameter index then equation index.  Each substitution counts as one pass.
    """
    ring = sys.ring
    names = ring.names
    order = {n: k for k, n in enumerate(names)}
    equations = list(sys.equations)
    provenance = list(sys.provenance)
    eliminated = dict(sys.eliminated)
    params = list(sys.parameters)
    passes = 0
    while max_passes is None or passes < max_passes:
        occ = Counter()
        for e in equations:
            occ.update(e.variables_used())
        best = None
        for k, e in enumerate(equations):
            for v in e.variables_used():
                if names[v] not in params:
                    continue
                c = _linear_pivot(e, v)
                if c is None:
                    continue
                cand = (occ[v], order[names[v]], k)
                if best is None or cand < best[0]:
                    best = (cand, v, k, c)
        if best is None:
            break
        _, v, k, c = best
        name = names[v]
        e = equations[k]
        rest = e - ring.var(name).scale(c)
        value = rest.scale(-1) / c
        sub = {name: value}
        new_eqs, new_prov, seen = [], [], set()
        for kk, (ee, pp) in enumerate(zip(equations, provenance)):
            if kk == k:
                continue
            if v in ee.variables_used():
                ee = _normalize(ee.substitute(sub))
            if not ee or ee in seen:
                continue
            seen.add(ee)
            new_eqs.append(ee)
            new_prov.append(pp)
        equations, provenance = new_eqs, new_prov
        eliminated = {kk: (vv.substitute(sub) if v in vv.variables_used() else vv)
                      for kk, vv in eliminated.items()}
        eliminated[name] = value
        params.remove(name)
        passes += 1
    return EquationSystem(ring, tuple(params), equations, provenance, eliminated, sys.helpers)


@dataclass(frozen=True)
class SystemStats:
    parameter_count: int
    equation_count: int
    degree_histogram: dict
    density: float
    occurring_count: int

    def row(self, name: str) -> str:
        return f"{name} | {self.parameter_count} | {self.equation_count}"


def stats(sys: EquationSystem) -> SystemStats:
    hist = Counter(e.total_degree() for e in sys.equations)
    n = len(sys.parameters)
    dens = []
    for e in sys.equations:
        d = max(e.total_degree(), 0)
        dens.append(len(e) / math.comb(n + d, d) if n else 1.0)
    density = sum(dens) / len(dens) if dens else 0.0
    return SystemStats(n, len(sys.equations), dict(sorted(hist.items())), density,
                       len(sys.occurring_parameters()))


# --------------------------------------------------------------------------
# dump format:  "system vars <n> eqs <m>", then "v <name>" lines, then "e <poly>" lines

def dump_system(sys: EquationSystem) -> str:
    lines = [f"system vars {len(sys.parameters)} eqs {len(sys.equations)}"]
    lines += [f"v {p}" for p in sys.parameters]
    lines += [f"e {e}" for e in sys.equations]
    return "\n".join(lines) + "\n"


def parse_system(text: str) -> EquationSystem:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    head = lines[0].split()
    if len(head) != 5 or head[:2] != ["system", "vars"] or head[3] != "eqs":
        raise ValueError(f"bad system header {lines[0]!r}")
    n, m = int(head[2]), int(head[4])
    names = [ln[2:].strip() for ln in lines[1:] if ln.startswith("v ")]
    exprs = [ln[2:].strip() for ln in lines[1:] if ln.startswith("e ")]
    if len(names) != n or len(exprs) != m:
        raise ValueError("system body does not match its header")
    ring = GradedRing.from_weights({}, parameters=names)
    eqs = [parse_polynomial(x, ring) for x in exprs]
    return EquationSystem(ring, tuple(names), eqs, [("parsed", k, None, None) for k in range(m)])
