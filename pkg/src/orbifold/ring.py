"""Exact sparse multivariate polynomials over the rationals with rational gradings.

A :class:`GradedRing` is an ordered list of variables, each either *geometric*
(carrying a positive rational weight) or a *parameter* (weight 0).  Parameters
hold the unknown coefficients of an ansatz; grading-aware operations ignore them.

Polynomials are immutable maps from exponent tuples to nonzero rationals.
"""

from __future__ import annotations

import itertools
import math
import operator
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

GEOMETRIC = "geometric"
PARAMETER = "parameter"

Monomial = tuple  # tuple[int, ...], one exponent per ring variable
Number = Union[int, Fraction]


class ParseError(ValueError):
    pass


class PotentialError(ValueError):
    pass


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value.strip())
    return Fraction(value)


def format_rational(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _norm(c):
    # keep integral coefficients as int; it is much faster than Fraction
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


@dataclass(frozen=True)
class VariableSpec:
    name: str
    weight: Fraction
    kind: str = GEOMETRIC

    def __post_init__(self):
        object.__setattr__(self, "weight", as_fraction(self.weight))
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", self.name):
            raise ValueError(f"invalid variable name {self.name!r}")
        if self.kind == GEOMETRIC:
            if self.weight <= 0:
                raise ValueError(f"geometric variable {self.name} needs a positive weight")
        elif self.kind == PARAMETER:
            if self.weight != 0:
                raise ValueError(f"parameter {self.name} must have weight 0")
        else:
            raise ValueError(f"unknown variable kind {self.kind!r}")

    @property
    def is_parameter(self) -> bool:
        return self.kind == PARAMETER


@dataclass(frozen=True)
class GradedRing:
    """Polynomial ring over Q with an ordered, graded list of variables."""

    variables: tuple

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        names = [v.name for v in self.variables]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(names)})

    @classmethod
    def from_weights(cls, weights: Mapping[str, object] | Sequence[tuple], parameters: Iterable[str] = ()):
        items = weights.items() if isinstance(weights, Mapping) else weights
        specs = [VariableSpec(n, as_fraction(w)) for n, w in items]
        specs += [VariableSpec(n, Fraction(0), PARAMETER) for n in parameters]
        return cls(tuple(specs))

    def __len__(self):
        return len(self.variables)

    @property
    def names(self) -> tuple:
        return tuple(v.name for v in self.variables)

    @property
    def weights(self) -> tuple:
        return tuple(v.weight for v in self.variables)

    @property
    def geometric_indices(self) -> tuple:
        return tuple(i for i, v in enumerate(self.variables) if not v.is_parameter)

    @property
    def parameter_indices(self) -> tuple:
        return tuple(i for i, v in enumerate(self.variables) if v.is_parameter)

    @property
    def geometric_names(self) -> tuple:
        return tuple(self.variables[i].name for i in self.geometric_indices)

    @property
    def parameter_names(self) -> tuple:
        return tuple(self.variables[i].name for i in self.parameter_indices)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}") from None

    def __contains__(self, name) -> bool:
        return name in self._index

    def with_parameters(self, names: Iterable[str]) -> "GradedRing":
        extra = tuple(VariableSpec(n, Fraction(0), PARAMETER) for n in names)
        return GradedRing(self.variables + extra)

    def subring(self, names: Iterable[str]) -> "GradedRing":
        return GradedRing(tuple(self.variables[self.index(n)] for n in names))

    def rescaled(self, factor) -> "GradedRing":
        factor = as_fraction(factor)
        return GradedRing(tuple(
            v if v.is_parameter else VariableSpec(v.name, v.weight * factor, v.kind)
            for v in self.variables))

    def grading(self, mono: Monomial) -> Fraction:
        return sum((e * v.weight for e, v in zip(mono, self.variables) if e), Fraction(0))

    def one(self) -> "Polynomial":
        return Polynomial.constant(self, 1)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def var(self, name: str) -> "Polynomial":
        return Polynomial.variable(self, name)

    def parse(self, src: str) -> "Polynomial":
        return parse_polynomial(src, self)

    def __repr__(self):
        inner = ", ".join(
            f"{v.name}:{format_rational(v.weight)}" if not v.is_parameter else f"{v.name}:param"
            for v in self.variables)
        return f"GradedRing({inner})"


def degrevlex_key(mono: Monomial):
    return (sum(mono), tuple(-e for e in reversed(mono)))


class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to nonzero rationals."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: GradedRing, terms: Mapping | None = None, _trusted: bool = False):
        self.ring = ring
        if _trusted:
            self.terms = terms
        else:
            n = len(ring)
            clean = {}
            for m, c in (terms or {}).items():
                m = tuple(m)
                if len(m) != n:
                    raise ValueError(f"monomial {m} does not match ring of {n} variables")
                if c:
                    clean[m] = _norm(c if isinstance(c, (int, Fraction)) else Fraction(c))
            self.terms = clean
        self._hash = None

    # construction -----------------------------------------------------------
    @classmethod
    def constant(cls, ring: GradedRing, value) -> "Polynomial":
        value = _norm(as_fraction(value))
        if not value:
            return cls(ring, {}, _trusted=True)
        return cls(ring, {(0,) * len(ring): value}, _trusted=True)

    @classmethod
    def variable(cls, ring: GradedRing, name: str) -> "Polynomial":
        i = ring.index(name)
        mono = tuple(1 if k == i else 0 for k in range(len(ring)))
        return cls(ring, {mono: 1}, _trusted=True)

    @classmethod
    def monomial(cls, ring: GradedRing, mono: Monomial, coeff=1) -> "Polynomial":
        return cls(ring, {tuple(mono): coeff})

    # basic queries ----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_term(self):
        return self.terms.get((0,) * len(self.ring), 0)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def degree_in(self, indices: Iterable[int]) -> int:
        idx = list(indices)
        if not self.terms:
            return -1
        return max(sum(m[i] for i in idx) for m in self.terms)

    def variables_used(self) -> set:
        used = set()
        for m in self.terms:
            used.update(i for i, e in enumerate(m) if e)
        return used

    def variable_names_used(self) -> set:
        return {self.ring.variables[i].name for i in self.variables_used()}

    def coefficient(self, mono: Monomial):
        return self.terms.get(tuple(mono), 0)

    def leading_coefficient(self, key=degrevlex_key):
        if not self.terms:
            return 0
        return self.terms[max(self.terms, key=key)]

    def sorted_terms(self, key=degrevlex_key):
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def gradings(self) -> set:
        return {self.ring.grading(m) for m in self.terms}

    def is_quasi_homogeneous(self) -> bool:
        return len(self.gradings()) <= 1

    # arithmetic ---------------------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring is not self.ring and other.ring != self.ring:
                raise ValueError("polynomials live in different rings")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.ring, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(other.terms) > len(self.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        out = dict(a)
        for m, c in b.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) - c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out, _trusted=True)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Polynomial":
        c = _norm(as_fraction(c)) if not isinstance(c, int) else c
        if not c:
            return Polynomial(self.ring, {}, _trusted=True)
        return Polynomial(self.ring, {m: _norm(v * c) for m, v in self.terms.items()}, _trusted=True)

    def mul_term(self, mono: Monomial, c) -> "Polynomial":
        add = operator.add
        return Polynomial(self.ring, {tuple(map(add, m, mono)): _norm(v * c) for m, v in self.terms.items()},
                          _trusted=True)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = {}
        add = operator.add
        get = out.get
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(map(add, m1, m2))
                out[m] = get(m, 0) + c1 * c2
        return Polynomial(self.ring, {m: _norm(c) for m, c in out.items() if c}, _trusted=True)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / other)
        if isinstance(other, Polynomial) and other.is_constant() and other:
            return self.scale(Fraction(1) / other.constant_term())
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def exact_divide(self, other: "Polynomial") -> "Polynomial":
        """Quotient q with ``self == q * other``; raises ArithmeticError if not divisible."""
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        lm_o = max(other.terms, key=degrevlex_key)
        lc_o = other.terms[lm_o]
        rem = dict(self.terms)
        quot = {}
        sub = operator.sub
        while rem:
            lm = max(rem, key=degrevlex_key)
            q = tuple(map(sub, lm, lm_o))
            if min(q) < 0:
                raise ArithmeticError("polynomial is not divisible")
            c = Fraction(rem[lm]) / lc_o
            quot[q] = _norm(c)
            for m, v in other.terms.items():
                mm = tuple(a + b for a, b in zip(m, q))
                nv = rem.get(mm, 0) - c * v
                if nv:
                    rem[mm] = _norm(nv)
                else:
                    rem.pop(mm, None)
        return Polynomial(self.ring, quot, _trusted=True)

    # calculus and substitution ------------------------------------------------
    def derivative(self, var) -> "Polynomial":
        i = self.ring.index(var) if isinstance(var, str) else var
        out = {}
        for m, c in self.terms.items():
            e = m[i]
            if e:
                mm = m[:i] + (e - 1,) + m[i + 1:]
                out[mm] = c * e
        return Polynomial(self.ring, out, _trusted=True)

    def substitute(self, values: Mapping[str, object]) -> "Polynomial":
        """Replace variables by polynomials (same ring) or rationals."""
        if not values:
            return self
        ring = self.ring
        subs = {}
        for name, val in values.items():
            i = ring.index(name)
            if isinstance(val, Polynomial):
                if val.ring != ring:
                    val = val.change_ring(ring)
            else:
                val = Polynomial.constant(ring, val)
            subs[i] = val
        powers = {i: [ring.one()] for i in subs}

        def power(i, k):
            cache = powers[i]
            while len(cache) <= k:
                cache.append(cache[-1] * subs[i])
            return cache[k]

        out = Polynomial(ring, {}, _trusted=True)
        grouped = {}
        for m, c in self.terms.items():
            key = tuple((i, m[i]) for i in subs if m[i])
            rest = tuple(0 if i in subs else e for i, e in enumerate(m))
            grouped.setdefault(key, {})[rest] = c
        for key, rest_terms in grouped.items():
            part = Polynomial(ring, rest_terms, _trusted=True)
            for i, k in key:
                part = part * power(i, k)
            out = out + part
        return out

    def evaluate(self, values: Mapping[str, object]):
        """Evaluate at rational values for every variable that occurs."""
        total = Fraction(0)
        idx_vals = {self.ring.index(n): as_fraction(v) for n, v in values.items()}
        for m, c in self.terms.items():
            t = Fraction(c)
            for i, e in enumerate(m):
                if e:
                    if i not in idx_vals:
                        raise KeyError(f"no value for {self.ring.variables[i].name}")
                    t *= idx_vals[i] ** e
            total += t
        return _norm(total)

    def change_ring(self, ring: GradedRing) -> "Polynomial":
        """Re-express in another ring by matching variable names."""
        if ring == self.ring:
            return self
        src = self.ring.names
        pos = []
        for i in sorted(self.variables_used()):
            if src[i] not in ring:
                raise ValueError(f"variable {src[i]} not present in target ring")
            pos.append((i, ring.index(src[i])))
        n = len(ring)
        out = {}
        for m, c in self.terms.items():
            mm = [0] * n
            for i, j in pos:
                mm[j] = m[i]
            out[tuple(mm)] = c
        return Polynomial(ring, out, _trusted=True)

    def coefficients_in(self, indices: Sequence[int]) -> dict:
        """Split into {exponents in ``indices``: coefficient polynomial in the other variables}."""
        idx = tuple(indices)
        idx_set = set(idx)
        groups = {}
        for m, c in self.terms.items():
            key = tuple(m[i] for i in idx)
            rest = tuple(0 if i in idx_set else e for i, e in enumerate(m))
            groups.setdefault(key, {})[rest] = c
        return {k: Polynomial(self.ring, v, _trusted=True) for k, v in groups.items()}

    def primitive(self) -> "Polynomial":
        """Scale so coefficients are coprime integers with positive leading coefficient."""
        if not self.terms:
            return self
        den = 1
        for c in self.terms.values():
            d = c.denominator if isinstance(c, Fraction) else 1
            den = den * d // math.gcd(den, d)
        ints = [int(c * den) for c in self.terms.values()]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        lc = self.leading_coefficient()
        s = den if lc > 0 else -den
        return self.scale(Fraction(s, g))

    def monic(self, key=degrevlex_key) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(Fraction(1) / Fraction(self.terms[max(self.terms, key=key)]))

    # comparison and printing ------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_term() == other
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.ring.names
        parts = []
        for m, c in self.sorted_terms():
            c = Fraction(c)
            powers = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, m) if e]
            mag = abs(c)
            if not powers:
                body = format_rational(mag)
            elif mag == 1:
                body = "*".join(powers)
            else:
                body = format_rational(mag) + "*" + "*".join(powers)
            parts.append(("-" if c < 0 else "+", body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"Polynomial({self})"


# --------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^]))")


def parse_polynomial(src: str, ring: GradedRing) -> Polynomial:
    """Parse ``"x^4 + y^3 - 2/3*x*z^2"`` style text into a polynomial of ``ring``."""
    tokens = []
    pos = 0
    src = src.strip()
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at position {pos} in {src!r}")
        pos = m.end()
        kind = m.lastgroup
        tokens.append((kind, m.group(kind)))
    if not tokens:
        raise ParseError("empty polynomial expression")

    n = len(ring)
    out = {}
    i = 0

    def peek():
        return tokens[i] if i < len(tokens) else (None, None)

    first = True
    while i < len(tokens):
        sign = 1
        kind, val = peek()
        if kind == "op" and val in "+-":
            sign = -1 if val == "-" else 1
            i += 1
        elif not first:
            raise ParseError(f"expected '+' or '-' before term in {src!r}")
        first = False
        coeff = Fraction(sign)
        mono = [0] * n
        expect_factor = True
        seen_factor = False
        while expect_factor:
            kind, val = peek()
            if kind == "num":
                num, _, den = val.partition("/")
                if den and int(den) == 0:
                    raise ParseError(f"zero denominator in {val!r}")
                coeff *= Fraction(int(num), int(den) if den else 1)
                i += 1
            elif kind == "name":
                if val not in ring:
                    raise ParseError(f"unknown variable {val!r}")
                i += 1
                exp = 1
                k2, v2 = peek()
                if k2 == "op" and v2 == "^":
                    i += 1
                    k3, v3 = peek()
                    if k3 != "num" or "/" in v3:
                        raise ParseError(f"exponent must be a natural number in {src!r}")
                    exp = int(v3)
                    i += 1
                mono[ring.index(val)] += exp
            else:
                raise ParseError(f"expected a coefficient or variable in {src!r}")
            seen_factor = True
            kind, val = peek()
            if kind == "op" and val == "*":
                i += 1
            else:
                expect_factor = False
        if not seen_factor:
            raise ParseError(f"empty term in {src!r}")
        key = tuple(mono)
        out[key] = out.get(key, 0) + coeff
        kind, val = peek()
        if kind is not None and not (kind == "op" and val in "+-"):
            raise ParseError(f"unexpected token {val!r} in {src!r}")
    return Polynomial(ring, out)


# --------------------------------------------------------------------------
# potentials and gradings

def quasi_homogeneous_degree(p: Polynomial):
    """Common grading of all monomials of ``p``, or None if they differ."""
    if not p:
        raise ValueError("the zero polynomial has no degree")
    params = p.ring.parameter_indices
    if any(any(m[i] for i in params) for m in p.terms):
        raise ValueError("quasi-homogeneity is defined for parameter-free polynomials")
    gradings = p.gradings()
    if len(gradings) != 1:
        return None
    d = gradings.pop()
    if d and euler_residual(p, d):
        raise AssertionError("Euler identity failed for a quasi-homogeneous polynomial")
    return d


def euler_residual(p: Polynomial, d) -> Polynomial:
    """Sum_i (|x_i|/d) x_i d_i p - p; zero exactly when p is quasi-homogeneous of degree d."""
    ring = p.ring
    d = as_fraction(d)
    total = -p
    for i in ring.geometric_indices:
        w = ring.variables[i].weight
        total = total + (ring.var(ring.variables[i].name) * p.derivative(i)).scale(w / d)
    return total


@dataclass(frozen=True)
class Potential:
    """Quasi-homogeneous polynomial with finite-dimensional nonzero Jacobian ring."""

    ring: GradedRing
    poly: Polynomial
    degree: Fraction
    jacobian_dimension: int

    @property
    def names(self) -> tuple:
        return self.ring.names

    def __str__(self):
        return str(self.poly)


def validate_potential(p: Polynomial, normalize: bool = True) -> Potential:
    """Check that ``p`` is a potential; rescale weights so its degree is 2."""
    from .groebner import is_quotient_finite_dimensional

    if not p:
        raise PotentialError("the zero polynomial is not a potential")
    if p.ring.parameter_indices:
        if any(any(m[i] for i in p.ring.parameter_indices) for m in p.terms):
            raise PotentialError("a potential must not involve parameter variables")
        p = p.change_ring(p.ring.subring(p.ring.geometric_names))
    d = quasi_homogeneous_degree(p)
    if d is None:
        raise PotentialError("polynomial is not quasi-homogeneous")
    if d <= 0:
        raise PotentialError("potential must have positive degree")
    ring = p.ring
    if normalize and d != 2:
        ring = ring.rescaled(Fraction(2) / d)
        p = Polynomial(ring, p.terms, _trusted=True)
        d = Fraction(2)
    dim = is_quotient_finite_dimensional([p.derivative(i) for i in range(len(ring))])
    if dim is None:
        raise PotentialError("infinite-dimensional Jacobian ring")
    if dim == 0:
        raise PotentialError("Jacobian ring is zero")
    return Potential(ring, p, Fraction(d), dim)


def make_potential(src: str, weights) -> Potential:
    """Convenience: parse ``src`` in a ring with the given weights and validate."""
    ring = GradedRing.from_weights(weights)
    return validate_potential(parse_polynomial(src, ring))


def jacobian_ideal(p: Potential) -> list:
    return [p.poly.derivative(i) for i in range(len(p.ring))]


def central_charge(p: Potential) -> Fraction:
    scale = Fraction(2) / p.degree
    return sum((1 - v.weight * scale for v in p.ring.variables if not v.is_parameter), Fraction(0))


def monomials_of_grading(ring: GradedRing, q) -> list:
    """All monomials in the geometric variables of ``ring`` with grading exactly ``q``.

    Ordered by descending degrevlex in the ring's variable order.
    """
    q = as_fraction(q)
    if q < 0:
        return []
    geo = ring.geometric_indices
    weights = [ring.variables[i].weight for i in geo]
    found = []

    def rec(k, remaining, acc):
        if k == len(geo):
            if remaining == 0:
                found.append(tuple(acc))
            return
        w = weights[k]
        for e in range(int(remaining / w) + 1):
            acc.append(e)
            rec(k + 1, remaining - e * w, acc)
            acc.pop()

    rec(0, q, [])
    n = len(ring)
    out = []
    for exps in found:
        mono = [0] * n
        for i, e in zip(geo, exps):
            mono[i] = e
        out.append(tuple(mono))
    out.sort(key=degrevlex_key, reverse=True)
    return out


def solve_rational(a: Sequence[Sequence], b: Sequence) -> list:
    """Solve the square system a x = b exactly; raises ValueError when singular."""
    n = len(a)
    rows = [[Fraction(v) for v in row] + [Fraction(rhs)] for row, rhs in zip(a, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        rows[col], rows[piv] = rows[piv], rows[col]
        pv = rows[col][col]
        rows[col] = [v / pv for v in rows[col]]
        for r in range(n):
            if r != col and rows[r][col]:
                f = rows[r][col]
                rows[r] = [v - f * w for v, w in zip(rows[r], rows[col])]
    return [rows[i][n] for i in range(n)]


def exponent_matrix(p: Potential) -> list:
    """Exponent matrix of an invertible potential, rows matched to variables.

    Row i is the monomial paired with variable i; the pairing is the first
    permutation (in lexicographic order) with a nonzero diagonal.
    """
    n = len(p.ring)
    terms = p.poly.sorted_terms()
    if len(terms) != n:
        raise PotentialError(f"invertible potential needs {n} monomials, got {len(terms)}")
    if any(c != 1 for _, c in terms):
        raise PotentialError("invertible potential needs all coefficients equal to 1")
    monos = [m for m, _ in terms]
    for perm in itertools.permutations(range(n)):
        if all(monos[perm[i]][i] for i in range(n)):
            return [list(monos[perm[i]]) for i in range(n)]
    raise PotentialError("no monomial-to-variable pairing with nonzero diagonal")


def berglund_huebsch_transpose(p: Potential) -> Potential:
    """Transpose the exponent matrix of an invertible potential and re-solve the weights."""
    a = exponent_matrix(p)
    n = len(a)
    at = [[a[j][i] for j in range(n)] for i in range(n)]
    try:
        weights = solve_rational(at, [2] * n)
    except ValueError:
        raise PotentialError("exponent matrix is singular") from None
    if any(w <= 0 for w in weights):
        raise PotentialError("transposed potential has non-positive weights")
    ring = GradedRing.from_weights(list(zip(p.ring.names, weights)))
    poly = Polynomial(ring, {tuple(row): 1 for row in at})
    return validate_potential(poly)
