"""Multivariate residue symbols res(g dx_1..dx_q / f_1..f_q).

The residue is pinned down by three facts: it vanishes on the ideal (f_1..f_q);
for pure-power denominators x_i^{d_i} it is the x^{d-1} coefficient of g; and it
is invariant under g -> g det(M), f -> M f.  Given pure-power certificates
M f = (x_1^{d_1}, ..., x_q^{d_q}) this gives an algorithm.

Quasi-homogeneous denominators always admit pure-power certificates.  For
other zero-dimensional denominators the eliminants p_i(x_i) are not monomials;
then g det(M) is reduced modulo each p_i and the residue is the coefficient of
prod x_i^{deg p_i - 1} over prod lc(p_i).

Variables that are not residue variables (parameters, or the other half of a
tensor ring) ride along as coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from . import matrix
from .groebner import buchberger, normal_form, standard_monomials, univariate_certificate
from .ring import Polynomial, _norm


@dataclass(frozen=True)
class ResidueProblem:
    numerator: Polynomial
    denominators: tuple
    variables: Optional[tuple] = None

    def __post_init__(self):
        object.__setattr__(self, "denominators", tuple(self.denominators))
        ring = self.numerator.ring
        if self.variables is None:
            object.__setattr__(self, "variables", ring.geometric_names)
        else:
            object.__setattr__(self, "variables", tuple(self.variables))
        if len(self.denominators) != len(self.variables):
            raise ValueError(f"{len(self.denominators)} denominators for {len(self.variables)} variables")
        allowed = set(self.variables)
        for f in self.denominators:
            extra = f.variable_names_used() - allowed
            if extra:
                raise ValueError(f"denominator involves non-residue variables {sorted(extra)}")


class ResidueFunctional:
    """The linear map g -> res(g dx / f) for fixed denominators f."""

    def __init__(self, denominators: Sequence[Polynomial], variables: Sequence[str]):
        ring = denominators[0].ring
        self.variables = tuple(variables)
        self.small_ring = ring.subring(self.variables)
        fs = [f.change_ring(self.small_ring) for f in denominators]
        self.denominators = fs
        self.basis = buchberger(fs)
        if self.basis.is_unit() or standard_monomials(self.basis) is None:
            raise ValueError("quotient by the denominators is not finite-dimensional and nonzero")
        certs = [univariate_certificate(fs, i) for i in range(len(fs))]
        self.certificates = certs
        self.eliminants = tuple(c.polynomial for c in certs)
        self.exponents = tuple(c.polynomial.degree_in([c.variable]) for c in certs)
        self.pure_powers = all(len(p.terms) == 1 for p in self.eliminants)
        self.matrix = [list(c.cofactors) for c in certs]
        self.det = matrix.det(self.matrix)
        self._det_terms = dict(self.det.terms)
        self._top = tuple(d - 1 for d in self.exponents)
        self._scale = 1
        for p in self.eliminants:
            self._scale *= p.leading_coefficient()

    def in_ideal(self, g_small: Polynomial) -> bool:
        return not normal_form(g_small, self.basis)

    def __call__(self, g: Polynomial) -> Polynomial:
        """Coefficient of x^{d-1} in g det(M), keeping non-residue variables symbolic."""
        if not self.pure_powers:
            return self._general(g)
        ring = g.ring
        idx = [ring.index(v) for v in self.variables]
        idx_set = set(idx)
        top = self._top
        det_terms = self._det_terms
        out = {}
        for m, c in g.terms.items():
            a = tuple(top[k] - m[i] for k, i in enumerate(idx))
            if min(a) < 0:
                continue
            dc = det_terms.get(a)
            if not dc:
                continue
            rest = tuple(0 if i in idx_set else e for i, e in enumerate(m))
            out[rest] = out.get(rest, 0) + c * dc
        return Polynomial(ring, {m: _norm(v) for m, v in out.items() if v}, _trusted=True)

    def _general(self, g: Polynomial) -> Polynomial:
        ring = g.ring
        idx = [ring.index(v) for v in self.variables]
        h = g * self.det.change_ring(ring)
        for k, i in enumerate(idx):
            h = _reduce_univariate(h, i, self.eliminants[k].change_ring(ring))
        out = {}
        for m, c in h.terms.items():
            if all(m[i] == self._top[k] for k, i in enumerate(idx)):
                rest = tuple(0 if i in idx else e for i, e in enumerate(m))
                out[rest] = c / self._scale
        return Polynomial(ring, out)


def _reduce_univariate(h: Polynomial, i: int, p: Polynomial) -> Polynomial:
    """Remainder of h on division by p(x_i), other variables treated as coefficients."""
    n = p.degree_in([i])
    lead = tuple(n if k == i else 0 for k in range(len(p.ring.names)))
    lc = p.terms[lead]
    tail = Polynomial(p.ring, {m: -c / lc for m, c in p.terms.items() if m != lead})
    while True:
        big = {m: c for m, c in h.terms.items() if m[i] >= n}
        if not big:
            return h
        top = max(m[i] for m in big)
        hi = {m: c for m, c in big.items() if m[i] == top}
        shifted = Polynomial(h.ring, {tuple(e - n if k == i else e for k, e in enumerate(m)): c
                                      for m, c in hi.items()})
        h = h - Polynomial(h.ring, hi) + shifted * tail


@lru_cache(maxsize=64)
def residue_functional(denominators: tuple, variables: tuple) -> ResidueFunctional:
    return ResidueFunctional(denominators, variables)


def residue_symbol(prob: ResidueProblem) -> Polynomial:
    """Residue of ``prob``, a polynomial in the non-residue variables."""
    g = prob.numerator
    ring = g.ring
    dens = tuple(f.change_ring(ring) for f in prob.denominators)
    fn = residue_functional(dens, prob.variables)
    idx = [ring.index(v) for v in prob.variables]
    idx_set = set(idx)
    groups = {}
    for m, c in g.terms.items():
        key = tuple(e for i, e in enumerate(m) if i not in idx_set)
        groups.setdefault(key, {})[m] = c
    # vanish on the ideal, coefficient by coefficient
    survivors = {}
    for terms in groups.values():
        coeff = {tuple(m[i] for i in idx): c for m, c in terms.items()}
        if not fn.in_ideal(Polynomial(fn.small_ring, coeff, _trusted=True)):
            survivors.update(terms)
    if not survivors:
        return ring.zero()
    return fn(Polynomial(ring, survivors, _trusted=True))


def check_transformation_rule(prob: ResidueProblem, m) -> bool:
    """res(g det(M) / M f) == res(g / f)."""
    q = len(prob.denominators)
    if len(m) != q or any(len(row) != q for row in m):
        raise ValueError("transformation matrix has the wrong size")
    ring = prob.numerator.ring
    m = [[x.change_ring(ring) for x in row] for row in m]
    dens = [f.change_ring(ring) for f in prob.denominators]
    new_dens = []
    for row in m:
        acc = ring.zero()
        for x, f in zip(row, dens):
            acc = acc + x * f
        new_dens.append(acc)
    lhs = residue_symbol(ResidueProblem(prob.numerator * matrix.det(m), tuple(new_dens), prob.variables))
    return lhs == residue_symbol(prob)
