"""Exact rational and integer 3x3 matrix helpers.

Matrices are immutable tuples of tuples. All induction matrices are
unimodular with nonnegative integer entries, so inverses are exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence, Tuple

Vec3 = Tuple[Fraction, Fraction, Fraction]
Mat3 = Tuple[tuple, tuple, tuple]

IDENTITY3: Mat3 = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def mat_mul(x: Mat3, y: Mat3) -> Mat3:
    return tuple(
        tuple(sum(x[i][k] * y[k][j] for k in range(3)) for j in range(3))
        for i in range(3)
    )


def mat_vec(m: Mat3, v: Sequence) -> tuple:
    return tuple(sum(m[i][k] * v[k] for k in range(3)) for i in range(3))


def mat_pow(m: Mat3, k: int) -> Mat3:
    r = IDENTITY3
    for _ in range(k):
        r = mat_mul(r, m)
    return r


def transpose(m: Mat3) -> Mat3:
    return tuple(tuple(m[j][i] for j in range(3)) for i in range(3))


def det3(m: Mat3):
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def adjugate(m: Mat3) -> Mat3:
    c = lambda i, j: m[i][j]  # noqa: E731
    return (
        (
            c(1, 1) * c(2, 2) - c(1, 2) * c(2, 1),
            c(0, 2) * c(2, 1) - c(0, 1) * c(2, 2),
            c(0, 1) * c(1, 2) - c(0, 2) * c(1, 1),
        ),
        (
            c(1, 2) * c(2, 0) - c(1, 0) * c(2, 2),
            c(0, 0) * c(2, 2) - c(0, 2) * c(2, 0),
            c(0, 2) * c(1, 0) - c(0, 0) * c(1, 2),
        ),
        (
            c(1, 0) * c(2, 1) - c(1, 1) * c(2, 0),
            c(0, 1) * c(2, 0) - c(0, 0) * c(2, 1),
            c(0, 0) * c(1, 1) - c(0, 1) * c(1, 0),
        ),
    )


def inverse_unimodular(m: Mat3) -> Mat3:
    """Exact inverse of an integer matrix with determinant +-1."""
    d = det3(m)
    if d not in (1, -1):
        raise ValueError(f"matrix is not unimodular (det={d})")
    adj = adjugate(m)
    if d == 1:
        return adj
    return tuple(tuple(-e for e in row) for row in adj)


def cross(u: Sequence, v: Sequence) -> tuple:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def normalize_simplex(v: Sequence) -> Vec3:
    """Divide by the coordinate sum, yielding an exact simplex point."""
    s = sum(v)
    if s == 0:
        raise ValueError("cannot normalize the zero vector")
    return tuple(Fraction(x) / s for x in v)


def parse_fraction(text: str) -> Fraction:
    """Parse 'p/q' or a decimal string into an exact Fraction."""
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(text)


def format_fraction(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"
