"""Monomial orders, Buchberger's algorithm and the ideal operations built on it."""

from __future__ import annotations

import heapq
import operator
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .ring import Polynomial, _norm


# --------------------------------------------------------------------------
# monomial orders
#
# An order exposes ``key(mono)``; larger keys are larger monomials.

@dataclass(frozen=True)
class Lex:
    """Lexicographic order; ``perm[0]`` is the largest variable."""

    perm: tuple

    def key(self, m):
        return tuple(m[i] for i in self.perm)


@dataclass(frozen=True)
class DegRevLex:
    perm: tuple

    def key(self, m):
        p = self.perm
        return (sum(m), tuple(-m[i] for i in reversed(p)))


@dataclass(frozen=True)
class Weighted:
    """Compare by a weighted degree first, then by ``tiebreak``."""

    weights: tuple
    tiebreak: object

    def key(self, m):
        return (sum(w * e for w, e in zip(self.weights, m)), self.tiebreak.key(m))


@dataclass(frozen=True)
class Elimination:
    """Block order: compare block by block, each block under its own order.

    Inner orders index into the block's variables (positions 0..len(block)-1).
    """

    blocks: tuple
    inner: tuple

    def key(self, m):
        return tuple(o.key(tuple(m[i] for i in b)) for b, o in zip(self.blocks, self.inner))


def lex(n: int, perm: Sequence[int] | None = None) -> Lex:
    return Lex(tuple(perm) if perm is not None else tuple(range(n)))


def degrevlex(n: int, perm: Sequence[int] | None = None) -> DegRevLex:
    return DegRevLex(tuple(perm) if perm is not None else tuple(range(n)))


def lex_with_last(n: int, i: int) -> Lex:
    """Lex order in which variable ``i`` is smaller than every other variable."""
    return Lex(tuple(k for k in range(n) if k != i) + (i,))


# --------------------------------------------------------------------------

@dataclass
class Limits:
    steps: int = 10**6
    polys: int = 10**4
    seconds: Optional[float] = None


class ResourceLimitExceeded(RuntimeError):
    def __init__(self, reason: str, stats: dict):
        super().__init__(f"resource limit reached: {reason}")
        self.reason = reason
        self.stats = stats


@dataclass
class GroebnerBasis:
    """Reduced Groebner basis; ``cofactors[k][j]`` expresses basis element k in ``originals``."""

    order: object
    generators: list
    originals: list
    cofactors: Optional[list] = None
    stats: dict = field(default_factory=dict)

    @property
    def ring(self):
        return self.originals[0].ring if self.originals else None

    def leading_monomial(self, g: Polynomial):
        return max(g.terms, key=self.order.key)

    def leading_monomials(self) -> list:
        return [self.leading_monomial(g) for g in self.generators]

    def is_unit(self) -> bool:
        return len(self.generators) == 1 and self.generators[0].is_constant() and bool(self.generators[0])

    def is_zero_ideal(self) -> bool:
        return not self.generators

    def reduce(self, p: Polynomial) -> Polynomial:
        return normal_form(p, self)

    def __contains__(self, p: Polynomial) -> bool:
        return not normal_form(p, self)

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(map(max, a, b))


class _Run:
    """State of one Buchberger run (single-threaded, owns everything it touches)."""

    def __init__(self, order, n_orig, track, limits):
        self.key = order.key
        self._kc = {}
        self.basis = []  # list of (lm, poly dict, cofactor dict or None)
        self.track = track
        self.n_orig = n_orig
        self.limits = limits or Limits()
        self.t0 = time.monotonic()
        self.steps = 0
        self.ops = 0
        self.pairs_skipped = 0

    def k(self, m):
        v = self._kc.get(m)
        if v is None:
            if len(self._kc) > 200_000:
                self._kc.clear()
            v = self._kc[m] = self.key(m)
        return v

    def lm(self, p):
        return max(p, key=self.k)

    def stats(self):
        return {"steps": self.steps, "basis": len(self.basis), "reductions": self.ops,
                "pairs_skipped": self.pairs_skipped, "seconds": time.monotonic() - self.t0}

    def check(self):
        lim = self.limits
        if self.steps > lim.steps:
            raise ResourceLimitExceeded("steps", self.stats())
        if len(self.basis) > lim.polys:
            raise ResourceLimitExceeded("polys", self.stats())
        if lim.seconds is not None and time.monotonic() - self.t0 > lim.seconds:
            raise ResourceLimitExceeded("seconds", self.stats())

    def reduce(self, p, cof, full, skip=None):
        """Reduce dict ``p`` (with cofactor ``cof``) by the current basis, in place."""
        rem = {}
        add = operator.add
        sub = operator.sub
        basis = self.basis
        track = self.track
        while p:
            m = self.lm(p)
            red = None
            for idx, (glm, g, gc) in enumerate(basis):
                if idx != skip and _divides(glm, m):
                    red = (glm, g, gc)
                    break
            if red is None:
                if not full:
                    break
                rem[m] = p.pop(m)
                continue
            glm, g, gc = red
            c = p[m]
            q = tuple(map(sub, m, glm))
            for gm, gv in g.items():
                mm = tuple(map(add, gm, q))
                nv = p.get(mm, 0) - c * gv
                if nv:
                    p[mm] = nv
                else:
                    del p[mm]
            if track:
                _axpy(cof, gc, -c, q)
            self.ops += 1
            if self.ops & 255 == 0:
                self.check()
        if full:
            p.update(rem)
        return p, cof

    def monic(self, p, cof):
        lc = p[self.lm(p)]
        if lc != 1:
            inv = Fraction(1) / lc
            for m in p:
                p[m] = _norm(p[m] * inv)
            if cof is not None:
                for j in cof:
                    cof[j] = {m: _norm(v * inv) for m, v in cof[j].items()}
        return p, cof


def _axpy(target, source, c, shift):
    """target += c * x^shift * source, for cofactor dicts {j: poly dict}."""
    add = operator.add
    for j, poly in source.items():
        t = target.setdefault(j, {})
        for m, v in poly.items():
            mm = tuple(map(add, m, shift))
            nv = t.get(mm, 0) + c * v
            if nv:
                t[mm] = nv
            else:
                t.pop(mm, None)
        if not t:
            del target[j]


def buchberger(gens: Sequence[Polynomial], order=None, track_cofactors: bool = False,
               limits: Limits | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Uses the normal selection strategy; pairs are pruned with the
    Gebauer-Moeller installation of Buchberger's coprime and chain criteria.  Raises :class:`ResourceLimitExceeded` when ``limits`` trip.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator (possibly zero) to fix the ring")
    ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise ValueError("generators live in different rings")
    n = len(ring)
    if order is None:
        order = degrevlex(n)
    run = _Run(order, len(gens), track_cofactors, limits)
    zero = (0,) * n

    pairs = []      # heap of (key of lcm, seq, i, j)
    active = []     # basis indices whose leading monomial is not divisible by a later one
    seq = 0

    def update(new, lm):
        """Gebauer-Moeller update of the pair set and the active set for basis element ``new``."""
        nonlocal pairs, seq
        lms = run.basis
        cand = [(i, _lcm(lms[i][0], lm)) for i in active]
        keep = []
        for k, (i, lcm) in enumerate(cand):
            coprime = not any(a and b for a, b in zip(lms[i][0], lm))
            if not coprime:
                # drop (i, new) if another candidate's lcm properly divides this one, or an equal
                # one was kept already
                if any(_divides(l2, lcm) and l2 != lcm for _, l2 in cand) or \
                        any(l2 == lcm for _, l2, _ in keep):
                    run.pairs_skipped += 1
                    continue
            keep.append((i, lcm, coprime))
        # coprime pairs are needed only to shadow others; they reduce to zero
        fresh = []
        for i, lcm, coprime in keep:
            if coprime:
                run.pairs_skipped += 1
            else:
                fresh.append((i, lcm))
        # old pairs whose lcm is divisible by lm, strictly, on both sides
        survivors = []
        for entry in pairs:
            _, _, i, j = entry
            lcm_ij = _lcm(lms[i][0], lms[j][0])
            if _divides(lm, lcm_ij) and _lcm(lms[i][0], lm) != lcm_ij and _lcm(lms[j][0], lm) != lcm_ij:
                run.pairs_skipped += 1
                continue
            survivors.append(entry)
        if len(survivors) != len(pairs):
            heapq.heapify(survivors)
            pairs = survivors
        for i, lcm in fresh:
            heapq.heappush(pairs, (run.k(lcm), seq, i, new))
            seq += 1
        active[:] = [i for i in active if not _divides(lm, lms[i][0])] + [new]

    def add_to_basis(p, cof):
        p, cof = run.monic(p, cof)
        lm = run.lm(p)
        new = len(run.basis)
        run.basis.append((lm, p, cof))
        update(new, lm)
        run.check()

    def unit_basis(cof):
        gens_out = [Polynomial.constant(ring, 1)]
        cofs = None
        if track_cofactors:
            cofs = [_cof_to_polys(cof, ring, len(gens))]
        return GroebnerBasis(order, gens_out, gens, cofs, run.stats())

    for j, g in enumerate(gens):
        if not g:
            continue
        p = dict(g.terms)
        cof = {j: {zero: 1}} if track_cofactors else None
        p, cof = run.reduce(p, cof, full=False)
        if not p:
            continue
        if run.lm(p) == zero:
            run.monic(p, cof)
            return unit_basis(cof)
        add_to_basis(p, cof)

    while pairs:
        _, _, i, j = heapq.heappop(pairs)
        lm_i, gi, ci = run.basis[i]
        lm_j, gj, cj = run.basis[j]
        lcm = _lcm(lm_i, lm_j)
        run.steps += 1
        run.check()
        si = tuple(a - b for a, b in zip(lcm, lm_i))
        sj = tuple(a - b for a, b in zip(lcm, lm_j))
        p = {}
        for m, v in gi.items():
            p[tuple(map(operator.add, m, si))] = v
        for m, v in gj.items():
            mm = tuple(map(operator.add, m, sj))
            nv = p.get(mm, 0) - v
            if nv:
                p[mm] = nv
            else:
                p.pop(mm, None)
        cof = None
        if track_cofactors:
            cof = {}
            _axpy(cof, ci, 1, si)
            _axpy(cof, cj, -1, sj)
        p, cof = run.reduce(p, cof, full=False)
        if not p:
            continue
        if run.lm(p) == zero:
            run.monic(p, cof)
            return unit_basis(cof)
        add_to_basis(p, cof)

    return _finalize(run, order, gens, ring, track_cofactors)


def _cof_to_polys(cof, ring, m):
    return [Polynomial(ring, {mm: _norm(v) for mm, v in cof.get(j, {}).items() if v}) for j in range(m)]


def _finalize(run, order, gens, ring, track):
    # minimal basis: drop elements whose leading monomial is divisible by another's
    basis = run.basis
    keep = []
    for idx, (lm, p, c) in enumerate(basis):
        redundant = False
        for jdx, (lm2, _, _) in enumerate(basis):
            if jdx == idx:
                continue
            if _divides(lm2, lm) and (lm2 != lm or jdx < idx):
                redundant = True
                break
        if not redundant:
            keep.append((lm, p, c))
    run.basis = keep
    # tail reduction
    final = []
    for idx in range(len(keep)):
        lm, p, c = run.basis[idx]
        p = dict(p)
        c = {j: dict(v) for j, v in c.items()} if c is not None else None
        p, c = run.reduce(p, c, full=True, skip=idx)
        p, c = run.monic(p, c)
        run.basis[idx] = (lm, p, c)
        final.append((lm, p, c))
    final.sort(key=lambda t: run.k(t[0]))
    generators = [Polynomial(ring, {m: _norm(v) for m, v in p.items()}) for _, p, _ in final]
    cofs = None
    if track:
        cofs = [_cof_to_polys(c, ring, len(gens)) for _, _, c in final]
    return GroebnerBasis(order, generators, list(gens), cofs, run.stats())


# --------------------------------------------------------------------------
# operations on bases

def divide(p: Polynomial, gb: GroebnerBasis):
    """Multivariate division: returns (quotients, remainder) with p = sum q_k g_k + r."""
    key = gb.order.key
    lms = [max(g.terms, key=key) for g in gb.generators]
    ring = p.ring
    rem = {}
    work = dict(p.terms)
    quots = [{} for _ in gb.generators]
    sub = operator.sub
    add = operator.add
    while work:
        m = max(work, key=key)
        for k, glm in enumerate(lms):
            if _divides(glm, m):
                g = gb.generators[k]
                c = Fraction(work[m]) / g.terms[glm]
                q = tuple(map(sub, m, glm))
                quots[k][q] = quots[k].get(q, 0) + c
                for gm, gv in g.terms.items():
                    mm = tuple(map(add, gm, q))
                    nv = work.get(mm, 0) - c * gv
                    if nv:
                        work[mm] = nv
                    else:
                        work.pop(mm, None)
                break
        else:
            rem[m] = work.pop(m)
    return ([Polynomial(ring, q) for q in quots], Polynomial(ring, rem))


def normal_form(p: Polynomial, gb: GroebnerBasis) -> Polynomial:
    if gb.is_zero_ideal():
        return p
    return divide(p, gb)[1]


def s_polynomial(f: Polynomial, g: Polynomial, order) -> Polynomial:
    lf = max(f.terms, key=order.key)
    lg = max(g.terms, key=order.key)
    lcm = _lcm(lf, lg)
    a = f.mul_term(tuple(x - y for x, y in zip(lcm, lf)), Fraction(1) / Fraction(f.terms[lf]))
    b = g.mul_term(tuple(x - y for x, y in zip(lcm, lg)), Fraction(1) / Fraction(g.terms[lg]))
    return a - b


def membership_with_cofactors(p: Polynomial, gens: Sequence[Polynomial], order=None,
                              limits: Limits | None = None):
    """Coefficients beta with sum beta_j gens_j == p, or None when p is not in the ideal."""
    gb = buchberger(gens, order, track_cofactors=True, limits=limits)
    if gb.is_zero_ideal():
        return [p.ring.zero() for _ in gens] if not p else None
    quots, rem = divide(p, gb)
    if rem:
        return None
    beta = [p.ring.zero() for _ in gens]
    for q, row in zip(quots, gb.cofactors):
        if not q:
            continue
        for j, c in enumerate(row):
            if c:
                beta[j] = beta[j] + q * c
    check = p.ring.zero()
    for b, g in zip(beta, gens):
        check = check + b * g
    if check != p:
        raise AssertionError("cofactor identity failed")
    return beta


def is_unit_ideal(gens: Sequence[Polynomial], order=None, limits: Limits | None = None) -> bool:
    return buchberger(gens, order, limits=limits).is_unit()


def standard_monomials(gb: GroebnerBasis, cap: int = 10**6):
    """Monomials not divisible by any leading monomial, or None when infinitely many."""
    ring = gb.ring
    n = len(ring)
    if gb.is_unit():
        return []
    lms = gb.leading_monomials()
    for i in range(n):
        if not any(lm[i] and sum(lm) == lm[i] for lm in lms):
            return None
    out = []
    stack = [(0,) * n]
    while stack:
        m = stack.pop()
        out.append(m)
        if len(out) > cap:
            raise ResourceLimitExceeded("standard monomial count", {"count": len(out)})
        last = max((i for i, e in enumerate(m) if e), default=0)
        for i in range(last, n):
            mm = m[:i] + (m[i] + 1,) + m[i + 1:]
            if not any(_divides(lm, mm) for lm in lms):
                stack.append(mm)
    return out


def is_quotient_finite_dimensional(gens: Sequence[Polynomial], limits: Limits | None = None):
    """Dimension of k[x]/(gens) as an int, or None when it is infinite."""
    gb = buchberger(gens, limits=limits)
    if gb.is_zero_ideal():
        return None if len(gens[0].ring) else 1
    std = standard_monomials(gb)
    return None if std is None else len(std)


@dataclass(frozen=True)
class PurePowerCertificate:
    variable: int
    exponent: int
    cofactors: tuple

    def check(self, gens: Sequence[Polynomial]) -> bool:
        ring = gens[0].ring
        total = ring.zero()
        for c, g in zip(self.cofactors, gens):
            total = total + c * g
        mono = tuple(self.exponent if k == self.variable else 0 for k in range(len(ring)))
        return total == Polynomial.monomial(ring, mono)


@dataclass(frozen=True)
class UnivariateCertificate:
    """sum_j cofactors[j] * gens[j] = polynomial, a polynomial in x_{variable} alone."""

    variable: int
    polynomial: Polynomial
    cofactors: tuple

    def check(self, gens: Sequence[Polynomial]) -> bool:
        total = gens[0].ring.zero()
        for c, g in zip(self.cofactors, gens):
            total = total + c * g
        return total == self.polynomial


def univariate_certificate(gens: Sequence[Polynomial], i: int,
                           limits: Limits | None = None) -> UnivariateCertificate:
    """Monic generator of (gens) intersected with k[x_i], with cofactors, via lex with x_i last."""
    ring = gens[0].ring
    order = lex_with_last(len(ring), i)
    gb = buchberger(gens, order, track_cofactors=True, limits=limits)
    for g, row in zip(gb.generators, gb.cofactors):
        if g.variables_used() == {i}:
            cert = UnivariateCertificate(i, g, tuple(row))
            if not cert.check(gens):
                raise AssertionError("univariate certificate identity failed")
            return cert
    raise ValueError(f"no polynomial in {ring.names[i]} alone lies in the ideal: quotient is infinite-dimensional")


def pure_power_certificate(gens: Sequence[Polynomial], i: int,
                           limits: Limits | None = None) -> PurePowerCertificate:
    """Find x_i^d in (gens) with explicit cofactors, via lex order with x_i last.

    For quasi-homogeneous gens the univariate basis element is a monomial.
    """
    u = univariate_certificate(gens, i, limits)
    if len(u.polynomial.terms) != 1:
        raise ValueError("univariate basis element is not a monomial; gens not quasi-homogeneous?")
    (mono,) = u.polynomial.terms
    cert = PurePowerCertificate(i, mono[i], u.cofactors)
    if not cert.check(gens):
        raise AssertionError("pure power certificate identity failed")
    return cert
