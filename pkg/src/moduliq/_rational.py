"""Exact rational scalars with a compiled fast path.

Every hot kernel in this package (short-vector enumeration, fraction-free
determinants, q-series convolution) bottoms out in rational arithmetic, so
the scalar type is chosen once at import time: gmpy2's GMP-backed ``mpq``
when available, ``fractions.Fraction`` otherwise.  Both types normalize
eagerly and expose ``numerator``/``denominator``, which is all the rest of
the code relies on.

Set ``MODULIQ_BACKEND=fractions`` to force the pure-Python implementation
(``benchmarks/bench_backends.py`` times the two side by side).
"""

import math
import os
from fractions import Fraction

_requested = os.environ.get("MODULIQ_BACKEND", "").strip().lower()

if _requested in ("fractions", "fraction", "python"):
    QQ = Fraction
    BACKEND = "fractions"
elif _requested in ("", "gmpy2", "fast"):
    try:
        from gmpy2 import mpq as QQ
        BACKEND = "gmpy2"
    except ImportError:
        if _requested:
            raise
        QQ = Fraction
        BACKEND = "fractions"
else:
    raise RuntimeError(f"unknown MODULIQ_BACKEND={_requested!r}")


def qq(x, y=None):
    """Coerce to the backend rational type."""
    if y is not None:
        return QQ(x) / QQ(y)
    if isinstance(x, str):
        return QQ(Fraction(x))
    return QQ(x)


ZERO = qq(0)
ONE = qq(1)


def num(x) -> int:
    return int(x.numerator)


def den(x) -> int:
    return int(x.denominator)


def is_integer(x) -> bool:
    return den(x) == 1


def as_int(x) -> int:
    if den(x) != 1:
        raise ValueError(f"{x} is not an integer")
    return num(x)


def floor_q(x) -> int:
    return num(x) // den(x)


def mod_q(x, m):
    """x reduced mod m into [0, m); m a positive rational."""
    return x - m * floor_q(x / m)


def floor_sqrt(x) -> int:
    """Largest integer k >= 0 with k*k <= x, for a rational x >= 0."""
    a, b = num(x), den(x)
    if a < 0:
        raise ValueError("negative radicand")
    k = math.isqrt(a // b)
    while (k + 1) * (k + 1) * b <= a:
        k += 1
    while k * k * b > a:
        k -= 1
    return k


def fmt_q(x) -> str:
    """Render a rational as 'p' or 'p/q'."""
    if den(x) == 1:
        return str(num(x))
    return f"{num(x)}/{den(x)}"
