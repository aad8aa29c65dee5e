"""Double-double arithmetic on ``(hi, lo)`` float pairs.

Used for series whose terms are ~1e7 times larger than their sum. Plain
double recursion loses about 7 digits there. With error-free
transformations (Knuth two-sum, Dekker two-product) the terms and the
running sum keep roughly 32 significant digits.
"""

from __future__ import annotations

DD = tuple[float, float]

_SPLITTER = 134217729.0  # 2**27 + 1


def two_sum(a: float, b: float) -> DD:
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _quick_two_sum(a: float, b: float) -> DD:
    s = a + b
    return s, b - (s - a)


def _split(a: float) -> DD:
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def two_prod(a: float, b: float) -> DD:
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def add(x: DD, y: DD) -> DD:
    s, e = two_sum(x[0], y[0])
    t, f = two_sum(x[1], y[1])
    s, e = _quick_two_sum(s, e + t)
    return _quick_two_sum(s, e + f)


def neg(x: DD) -> DD:
    return -x[0], -x[1]


def mul(x: DD, y: DD) -> DD:
    p, e = two_prod(x[0], y[0])
    e += x[0] * y[1] + x[1] * y[0]
    return _quick_two_sum(p, e)


def mul_float(x: DD, b: float) -> DD:
    p, e = two_prod(x[0], b)
    e += x[1] * b
    return _quick_two_sum(p, e)


def div(x: DD, y: DD) -> DD:
    q1 = x[0] / y[0]
    r = add(x, neg(mul_float(y, q1)))
    q2 = r[0] / y[0]
    r = add(r, neg(mul_float(y, q2)))
    q3 = r[0] / y[0]
    q = _quick_two_sum(q1, q2)
    return add(q, (q3, 0.0))


def to_float(x: DD) -> float:
    return x[0] + x[1]
