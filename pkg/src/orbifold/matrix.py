"""Small dense matrices of polynomials (lists of rows)."""

from __future__ import annotations

from .ring import Polynomial


def zeros(ring, rows: int, cols: int) -> list:
    z = ring.zero()
    return [[z] * cols for _ in range(rows)]


def identity(ring, n: int, scale=None) -> list:
    one = ring.one() if scale is None else scale
    z = ring.zero()
    return [[one if i == j else z for j in range(n)] for i in range(n)]


def shape(a) -> tuple:
    return (len(a), len(a[0]) if a else 0)


def matmul(a, b) -> list:
    if not a or not b:
        return []
    if len(a[0]) != len(b):
        raise ValueError(f"cannot multiply {shape(a)} by {shape(b)}")
    ring = a[0][0].ring
    out = []
    for row in a:
        new = []
        for j in range(len(b[0])):
            acc = ring.zero()
            for k, x in enumerate(row):
                if x:
                    y = b[k][j]
                    if y:
                        acc = acc + x * y
            new.append(acc)
        out.append(new)
    return out


def add(a, b) -> list:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def sub(a, b) -> list:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def transpose(a) -> list:
    return [list(col) for col in zip(*a)]


def apply(a, fn) -> list:
    return [[fn(x) for x in row] for row in a]


def is_zero(a) -> bool:
    return all(not x for row in a for x in row)


def _exact(p: Polynomial, d: Polynomial) -> Polynomial:
    if d.is_constant():
        return p / d.constant_term()
    return p.exact_divide(d)


def det(a) -> Polynomial:
    """Determinant by fraction-free (Bareiss) elimination."""
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        raise ValueError("empty matrix")
    ring = a[0][0].ring
    m = [list(r) for r in a]
    sign = 1
    prev = ring.one()
    for k in range(n - 1):
        if not m[k][k]:
            piv = next((r for r in range(k + 1, n) if m[r][k]), None)
            if piv is None:
                return ring.zero()
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = _exact(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev)
        prev = m[k][k]
    return m[n - 1][n - 1] if sign > 0 else -m[n - 1][n - 1]


def minor(a, i: int, j: int) -> list:
    return [row[:j] + row[j + 1:] for r, row in enumerate(a) if r != i]


def adjugate(a) -> list:
    n = len(a)
    ring = a[0][0].ring
    if n == 1:
        return [[ring.one()]]
    out = zeros(ring, n, n)
    for i in range(n):
        for j in range(n):
            c = det(minor(a, i, j))
            out[j][i] = c if (i + j) % 2 == 0 else -c
    return out
