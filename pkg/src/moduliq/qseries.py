"""Truncated formal series in q^(1/N) with coefficients in Q(w).

Every series carries its truncation order; arithmetic propagates the
jointly-known range, so a coefficient beyond the known range raises instead
of silently reading zero.  Exponents are stored as integer keys k meaning
q^(k/N) on a fixed grid N.
"""

import math
from dataclasses import dataclass

from ._rational import as_int, den, fmt_q, num, qq
from .scalars import CYC_ONE, CYC_ZERO, CycNum, cyc

__all__ = ["QSeries", "PrecisionError", "eta_power", "delta_series", "inverse_delta"]


class PrecisionError(ValueError):
    pass


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


@dataclass(frozen=True)
class QSeries:
    n_den: int       # exponent grid q^(k / n_den)
    terms: tuple     # sorted tuple of (k, CycNum), no zero coefficients
    trunc: object    # rational; exponents >= trunc are unknown

    # -- construction -----------------------------------------------------

    @staticmethod
    def make(n_den: int, coeffs: dict, trunc) -> "QSeries":
        trunc = qq(trunc)
        items = []
        for k, c in coeffs.items():
            c = cyc(c)
            if c.is_zero():
                continue
            if qq(k, n_den) >= trunc:
                continue
            items.append((k, c))
        items.sort(key=lambda kv: kv[0])
        return QSeries(n_den, tuple(items), trunc)

    @staticmethod
    def zero(trunc, n_den: int = 1) -> "QSeries":
        return QSeries.make(n_den, {}, trunc)

    @staticmethod
    def one(trunc) -> "QSeries":
        return QSeries.make(1, {0: CYC_ONE}, trunc)

    @staticmethod
    def monomial(coeff, exponent, trunc) -> "QSeries":
        e = qq(exponent)
        n_den = den(e)
        return QSeries.make(n_den, {num(e): cyc(coeff)}, trunc)

    # -- basics ------------------------------------------------------------

    def exponents(self):
        return [qq(k, self.n_den) for k, _ in self.terms]

    def leading(self):
        """(exponent, coefficient) of the lowest-order known term, or None."""
        if not self.terms:
            return None
        k, c = self.terms[0]
        return qq(k, self.n_den), c

    def leading_exponent(self):
        lead = self.leading()
        return lead[0] if lead is not None else self.trunc

    def coeff(self, exponent) -> CycNum:
        e = qq(exponent)
        if e >= self.trunc:
            raise PrecisionError(
                f"coefficient at q^{fmt_q(e)} is beyond the truncation {fmt_q(qq(self.trunc))}"
            )
        scaled = e * self.n_den
        if den(scaled) != 1:
            return CYC_ZERO
        k = num(scaled)
        for kk, c in self.terms:
            if kk == k:
                return c
            if kk > k:
                break
        return CYC_ZERO

    def rational_coeff(self, exponent):
        return self.coeff(exponent).rational()

    def _regrid(self, n_den: int) -> dict:
        f = n_den // self.n_den
        return {k * f: c for k, c in self.terms}

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, QSeries):
            other = QSeries.monomial(other, 0, self.trunc)
        n = _lcm(self.n_den, other.n_den)
        a = self._regrid(n)
        for k, c in other._regrid(n).items():
            a[k] = a.get(k, CYC_ZERO) + c
        return QSeries.make(n, a, min(self.trunc, other.trunc))

    __radd__ = __add__

    def __neg__(self):
        return QSeries(self.n_den, tuple((k, -c) for k, c in self.terms), self.trunc)

    def __sub__(self, other):
        if not isinstance(other, QSeries):
            other = QSeries.monomial(other, 0, self.trunc)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "QSeries":
        c = cyc(c)
        if c.is_zero():
            return QSeries.zero(self.trunc, self.n_den)
        return QSeries(
            self.n_den, tuple((k, c * v) for k, v in self.terms), self.trunc
        )

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            return self.scale(other)
        n = _lcm(self.n_den, other.n_den)
        a = self._regrid(n)
        b = other._regrid(n)
        trunc = min(
            self.trunc + other.leading_exponent(),
            other.trunc + self.leading_exponent(),
        )
        bound = trunc * n
        out = {}
        for ka, ca in a.items():
            for kb, cb in b.items():
                k = ka + kb
                if qq(k) >= bound:
                    continue
                out[k] = out.get(k, CYC_ZERO) + ca * cb
        return QSeries.make(n, out, trunc)

    __rmul__ = __mul__

    def shift(self, exponent) -> "QSeries":
        """Multiply by q^exponent."""
        e = qq(exponent)
        n = _lcm(self.n_den, den(e))
        k0 = as_int(e * n)
        return QSeries(
            n,
            tuple((k * (n // self.n_den) + k0, c) for k, c in self.terms),
            self.trunc + e,
        )

    def truncate(self, trunc) -> "QSeries":
        trunc = qq(trunc)
        if trunc > self.trunc:
            raise PrecisionError("cannot extend a truncated series")
        return QSeries.make(self.n_den, dict(self.terms), trunc)

    def pow(self, k: int) -> "QSeries":
        if k < 0:
            return self.invert().pow(-k)
        result = QSeries.one(self.trunc + self.leading_exponent() * max(k - 1, 0))
        base = self
        while k:
            if k & 1:
                result = result * base
            if k > 1:
                base = base * base
            k >>= 1
        return result

    def invert(self) -> "QSeries":
        """Two-sided inverse up to truncation; leading coefficient must be a unit."""
        lead = self.leading()
        if lead is None:
            raise ZeroDivisionError("cannot invert the zero series")
        e0, c0 = lead
        rel = self.trunc - e0  # relative precision
        # u = self / (c0 q^{e0}) - 1 has positive leading exponent
        u = self.shift(-e0).scale(CYC_ONE / c0) - QSeries.one(rel)
        acc = QSeries.one(rel)
        power = QSeries.one(rel)
        while True:
            power = power * (-u)
            if power.trunc > rel:
                power = power.truncate(rel)
            if power.leading() is None:
                break
            acc = acc + power
        return acc.scale(CYC_ONE / c0).shift(-e0)

    def __truediv__(self, other):
        if isinstance(other, QSeries):
            return self * other.invert()
        return self.scale(CYC_ONE / cyc(other))

    # -- comparison on jointly-known range ----------------------------------

    def agrees_with(self, other: "QSeries") -> bool:
        bound = min(self.trunc, other.trunc)
        n = _lcm(self.n_den, other.n_den)
        a = {k: c for k, c in self._regrid(n).items() if qq(k, n) < bound}
        b = {k: c for k, c in other._regrid(n).items() if qq(k, n) < bound}
        return a == b

    # -- rendering -----------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k, c in self.terms:
            e = qq(k, self.n_den)
            if c.is_rational():
                cs = fmt_q(c.a)
            else:
                cs = f"({c})"
            if e == 0:
                parts.append(cs)
            else:
                if e == 1:
                    qs = "q"
                elif den(e) == 1 and e > 0:
                    qs = f"q^{fmt_q(e)}"
                else:
                    qs = f"q^({fmt_q(e)})"
                if cs == "1":
                    parts.append(qs)
                elif cs == "-1":
                    parts.append(f"-{qs}")
                else:
                    parts.append(f"{cs}*{qs}")
        rendered = " + ".join(parts).replace("+ -", "- ")
        return rendered

    __repr__ = __str__


def _binomial(n: int, k: int) -> int:
    return math.comb(n, k)


def eta_power(m: int, prec) -> QSeries:
    """q^(m/24) * prod_{n>0} (1 - q^n)^m, truncated at prec."""
    if m < 1:
        raise ValueError("eta_power needs m >= 1")
    prec = qq(prec)
    shift = qq(m, 24)
    rel = prec - shift
    if rel <= 0:
        return QSeries.zero(prec, 24 // math.gcd(m, 24))
    out = QSeries.one(rel)
    n = 1
    while qq(n) < rel:
        factor = {}
        j = 0
        while qq(n * j) < rel:
            factor[n * j] = cyc((-1) ** j * _binomial(m, j))
            j += 1
            if j > m:
                break
        out = out * QSeries.make(1, factor, rel)
        n += 1
    return out.shift(shift)


def delta_series(prec) -> QSeries:
    """The weight-12 cusp form q * prod (1-q^n)^24."""
    return eta_power(24, prec)


def inverse_delta(prec) -> QSeries:
    """q^-1 + 24 + 324 q + ..., known below exponent prec."""
    prec = qq(prec)
    return delta_series(prec + 2).invert()
