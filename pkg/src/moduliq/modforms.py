"""Theta series, Weil representations, dimension formulas, and the
obstruction space of weight-10 vector-valued forms.

Scope of the Weil machinery: discriminant groups of exponent dividing 3 and
square order, which keeps every matrix entry inside Q(w).  The carried
convention (T diagonal with e^(pi i q), S a scaled character sum) satisfies
S^4 = 1 and (ST)^3 = S^2 exactly; the dual representation is the entrywise
conjugate.

The obstruction space for the rank-20 lattice U+U(3)+E8+E8 is spanned by
one two-parameter Eisenstein family and two cusp forms built from eta
powers times level-3 Eisenstein series; all three live on the four
type-classes of the discriminant group and are returned as exact q-series.
"""

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

from . import _linalg
from ._rational import as_int, den, is_integer, mod_q, qq
from .lattices import (
    Lattice,
    build_standard,
    discriminant_group,
    elements_by_type,
)
from .qseries import QSeries, eta_power
from .scalars import CYC_ONE, CYC_ZERO, CycNum, cyc, omega_pow, root_of_unity_6
from .shortvec import count_coset_vectors

__all__ = [
    "DimensionReport",
    "MatrixRep",
    "VVForm",
    "WeilRep",
    "TYPE_ORDER",
    "bernoulli",
    "eisenstein_level3",
    "obstruction_cusp_basis",
    "obstruction_eisenstein",
    "theta_series",
    "vvmf_dimension",
    "vvmf_dimension_report",
    "weil_rep",
]

TYPE_ORDER = ("00", "0", "4/3", "2/3")


# ---------------------------------------------------------------------------
# theta series


def theta_series(lattice: Lattice, coset, prec) -> QSeries:
    """Sum of q^(-<x,x>/2) over dual vectors x in the given coset of A_M.

    The exponent convention makes theta of E8 the weight-4 Eisenstein series
    1 + 240q + 2160q^2 + ... and puts the coset components on the exponent
    grid -q(coset)/2 mod 1.
    """
    prec = qq(prec)
    disc = discriminant_group(lattice)
    el = disc.zero() if (coset is None or coset == 0) else tuple(coset)
    el = tuple(a % d for a, d in zip(el, disc.invariant_factors))
    qval = disc.q(el)
    # exponents run over -q/2 + Z, starting at the least non-negative one
    e0 = mod_q(-qval / 2, qq(1))
    coeffs = {}
    n_den = den(e0)
    e = e0
    while e < prec:
        cnt = count_coset_vectors(lattice, el, -2 * e)
        if cnt:
            coeffs[as_int(e * n_den)] = cyc(cnt)
        e = e + 1
    return QSeries.make(n_den, coeffs, prec)


# ---------------------------------------------------------------------------
# Weil representation


def _e3(x) -> CycNum:
    """exp(2 pi i x) for a rational x with denominator dividing 3."""
    x = mod_q(qq(x), qq(1))
    scaled = x * 3
    if den(scaled) != 1:
        raise ValueError(f"exp(2 pi i {x}) is outside Q(w)")
    return omega_pow(as_int(scaled))


@dataclass(frozen=True)
class MatrixRep:
    """A pair of exact matrices for the standard SL2(Z) generators."""

    labels: tuple
    mat_t: tuple
    mat_s: tuple

    @property
    def dim(self) -> int:
        return len(self.labels)


@dataclass(frozen=True)
class WeilRep:
    lattice: Lattice
    dual: bool
    elements: tuple
    mat_t: tuple
    mat_s: tuple

    @property
    def dim(self) -> int:
        return len(self.elements)

    def symmetrized(self) -> MatrixRep:
        """Restriction to vectors whose coefficients depend only on the type.

        Basis: the summed vectors u_t = sum of e_alpha over alpha of type t,
        ordered by TYPE_ORDER (restricted to the types that occur).
        """
        disc = discriminant_group(self.lattice)
        groups = elements_by_type(self.lattice)
        labels = tuple(t for t in TYPE_ORDER if t in groups)
        if set(groups) - set(labels):
            raise ValueError("unexpected type labels for the symmetrization")
        index = {el: i for i, el in enumerate(self.elements)}
        t_diag = []
        s_rows = []
        for s_label in labels:
            beta = groups[s_label][0]
            t_diag.append(self.mat_t[index[beta]][index[beta]])
            row = []
            for t_label in labels:
                val = CYC_ZERO
                for alpha in groups[t_label]:
                    val = val + self.mat_s[index[beta]][index[alpha]]
                row.append(val)
            s_rows.append(row)
        mat_t = tuple(
            tuple(t_diag[i] if i == j else CYC_ZERO for j in range(len(labels)))
            for i in range(len(labels))
        )
        return MatrixRep(labels, mat_t, tuple(tuple(r) for r in s_rows))


@lru_cache(maxsize=None)
def weil_rep(lattice: Lattice, dual: bool = False) -> WeilRep:
    """Exact Weil representation matrices on C[A_M].

    Supported lattices: discriminant group of exponent dividing 3 and square
    order, with (pos - neg)/2 divisible by 4 so the S-matrix scalar is
    rational; this covers the unimodular lattices and U+U(3)+E8+E8.
    """
    disc = discriminant_group(lattice)
    order = disc.order
    root = math.isqrt(order)
    if root * root != order:
        raise ValueError("S-matrix scalar lies outside Q(w) (non-square |A_M|)")
    if any(d != 3 for d in disc.invariant_factors):
        raise ValueError("only exponent-3 discriminant groups are supported")
    pos, neg = lattice.signature()
    if (pos - neg) % 8 != 0:
        raise ValueError("S-matrix scalar lies outside Q(w) for this signature")
    elements = tuple(disc.elements())
    n = len(elements)
    sign = 1  # i^((pos-neg)/2) with the exponent divisible by 4
    t_rows = []
    s_rows = []
    for i, alpha in enumerate(elements):
        qv = disc.q(alpha)
        t_val = _e3(-qv / 2) if dual else _e3(qv / 2)
        t_rows.append(
            tuple(t_val if i == j else CYC_ZERO for j in range(n))
        )
        row = []
        for beta in elements:
            bval = disc.b(alpha, beta)
            phase = _e3(bval) if dual else _e3(-bval)
            row.append(phase * qq(sign, root))
        s_rows.append(tuple(row))
    return WeilRep(lattice, dual, elements, tuple(t_rows), tuple(s_rows))


# ---------------------------------------------------------------------------
# dimension formula


def _matrix_order(m, cap=24):
    order = _linalg.mat_pow_order([list(r) for r in m], CYC_ONE, CYC_ZERO, cap=cap)
    if order is None:
        raise ValueError("matrix order exceeds the supported bound")
    return order


def _alpha_invariant(m):
    """Sum of t over eigenvalues e^(2 pi i t), 0 <= t < 1, of a finite-order matrix.

    Multiplicities come from the discrete Fourier transform of the exact
    trace sequence, evaluated in floating point and rounded with a
    consistency assertion.
    """
    n = len(m)
    order = _matrix_order(m)
    traces = []
    acc = _linalg.mat_identity(n, CYC_ONE, CYC_ZERO)
    for _ in range(order):
        traces.append(sum((acc[i][i] for i in range(n)), CYC_ZERO).to_complex())
        acc = _linalg.mat_mul(acc, [list(r) for r in m], CYC_ZERO)
    total = 0
    alpha = qq(0)
    for j in range(order):
        mult_c = sum(
            traces[k] * cmath.exp(-2j * cmath.pi * j * k / order) for k in range(order)
        ) / order
        mult = round(mult_c.real)
        assert abs(mult_c - mult) < 1e-6, "eigenvalue multiplicity is not integral"
        if mult:
            total += mult
            alpha += mult * qq(j, order)
    assert total == n, "eigenvalue multiplicities do not sum to the dimension"
    return alpha


def _scale_matrix(m, scalar):
    return tuple(tuple(scalar * x for x in row) for row in m)


@dataclass(frozen=True)
class DimensionReport:
    total: int
    eisenstein: int
    cusp: int
    alphas: tuple
    d: int


def vvmf_dimension_report(k, rep: MatrixRep) -> DimensionReport:
    """Dimension data for modular forms of weight k > 2 under the given rep.

    total = d + d k/12 - alpha(i^k S) - alpha((e^(k pi i/3) S T)^(-1)) - alpha(T)
    where d counts the (-1)^k eigenspace of S^2 (the representation of -1),
    and the Eisenstein part is cut out of that eigenspace by T x = x.
    """
    k = qq(k)
    if k <= 2:
        raise ValueError("dimension formula needs weight > 2")
    if not is_integer(k) or as_int(k) % 2:
        raise ValueError("only even integral weights stay inside Q(w)")
    kk = as_int(k)
    n = rep.dim
    zero, one = CYC_ZERO, CYC_ONE
    s = [list(r) for r in rep.mat_s]
    t = [list(r) for r in rep.mat_t]
    s2 = _linalg.mat_mul(s, s, zero)
    # d = dim of the (-1)^k eigenspace of the matrix representing -1
    want = one if kk % 2 == 0 else -one
    diff = [
        [s2[i][j] - (want if i == j else zero) for j in range(n)] for i in range(n)
    ]
    d = n - _linalg.rank_field(diff, one, zero)
    i_pow_k = cyc((-1) ** (kk // 2 % 2))  # i^k for even k
    a1 = _alpha_invariant(_scale_matrix(rep.mat_s, i_pow_k))
    st = _linalg.mat_mul(s, t, zero)
    # e^(k pi i / 3) is a sixth root of unity, exactly representable
    phase = _sixth_root(kk)
    scaled = _scale_matrix(tuple(tuple(r) for r in st), phase)
    inv = _linalg.mat_inverse([list(r) for r in scaled], one, zero)
    a2 = _alpha_invariant(tuple(tuple(r) for r in inv))
    a3 = _alpha_invariant(rep.mat_t)
    total_q = d + qq(d) * k / 12 - a1 - a2 - a3
    assert is_integer(total_q), "dimension formula did not produce an integer"
    total = as_int(total_q)
    # Eisenstein part: T-fixed vectors inside the d-eigenspace
    stacked = diff + [
        [t[i][j] - (one if i == j else zero) for j in range(n)] for i in range(n)
    ]
    eis = n - _linalg.rank_field(stacked, one, zero)
    return DimensionReport(total, eis, total - eis, (a1, a2, a3), d)


def _sixth_root(k: int) -> CycNum:
    """exp(k pi i / 3) as an element of Q(w)."""
    return root_of_unity_6(k)


def vvmf_dimension(k, rep: MatrixRep):
    report = vvmf_dimension_report(k, rep)
    return report.total, report.eisenstein


# ---------------------------------------------------------------------------
# level-3 Eisenstein series


def bernoulli(k: int):
    """Exact Bernoulli number B_k (B_1 = -1/2)."""
    b = [qq(0)] * (k + 1)
    for m in range(k + 1):
        b[m] = qq(1, m + 1)
        for j in range(m, 0, -1):
            b[j - 1] = j * (b[j - 1] - b[j])
    return b[0]


def eisenstein_level3(k: int, label, prec) -> QSeries:
    """Normalized level-3 Eisenstein series for (a1, a2) in (Z/3)^2.

    The series is the lattice sum over (m, n) = (a1, a2) mod 3 of
    (m tau + n)^(-k), divided by c_k = (-2 pi i)^k / (3^k (k-1)!); for
    k = 2 only the holomorphic part is produced.  Coefficient of q^(n/3):
       sum over d | n of d^(k-1) [ w^(a2 d) [n/d = a1]
                                   + (-1)^k w^(-a2 d) [n/d = -a1] ]
    and the constant term for a1 = 0 is -B_k (3^k - 1) / (2k).
    """
    if k not in (2, 6, 10):
        raise ValueError("supported weights: 2, 6, 10")
    a1, a2 = label
    a1 %= 3
    a2 %= 3
    if (a1, a2) == (0, 0):
        raise ValueError("label (0,0) is not supported")
    prec = qq(prec)
    coeffs = {}
    if a1 == 0:
        const = -bernoulli(k) * (3**k - 1) / (2 * k)
        coeffs[0] = cyc(const)
    n = 1
    while qq(n, 3) < prec:
        total = CYC_ZERO
        for dd in range(1, n + 1):
            if n % dd:
                continue
            quot = n // dd
            if quot % 3 == a1:
                total = total + qq(dd) ** (k - 1) * omega_pow(a2 * dd)
            if quot % 3 == (-a1) % 3:
                total = total + qq((-1) ** k) * qq(dd) ** (k - 1) * omega_pow(-a2 * dd)
        if not total.is_zero():
            coeffs[n] = total
        n += 1
    return QSeries.make(3, coeffs, prec)


# ---------------------------------------------------------------------------
# vector-valued forms on the type classes


@dataclass(frozen=True)
class VVForm:
    """Tuple of q-series indexed by type classes of the discriminant group."""

    components: dict
    weight: object
    rep: str  # "rho" (inputs to the product) or "rho*" (obstruction side)

    def component(self, label: str) -> QSeries:
        return self.components[label]

    def coeff(self, label: str, exponent):
        return self.components[label].coeff(exponent)

    def check_translation_law(self, lattice: Lattice) -> bool:
        """Exponents of each component sit on -q/2 (dual) or q/2 (plain) mod 1."""
        groups = elements_by_type(lattice)
        disc = discriminant_group(lattice)
        for label, series in self.components.items():
            qv = disc.q(groups[label][0])
            want = mod_q(-qv / 2 if self.rep == "rho*" else qv / 2, qq(1))
            for e in series.exponents():
                if mod_q(e, qq(1)) != want:
                    return False
        return True


def _ldm():
    return build_standard("L_dm")


def obstruction_eisenstein(prec) -> VVForm:
    """The weight-10 dual-type Eisenstein tuple with constant terms (-1/2, 0, 0, 0).

    Components on the type classes (00, 0, 4/3, 2/3):
      h_00  = s (E1~ + (E2~ + E3~ + E4~)/3)
      h_0   = s (4/3)(E2~ + E3~ + E4~)
      h_4/3 = s (2/3)(E2~ + w^2 E3~ + w E4~)
      h_2/3 = s (2/3)(E2~ + w E3~ + w^2 E4~)
    with Ei~ the normalized weight-10 level-3 series and s = 3/(2 * 11 * 61 * ...)
    fixed by h_00(infinity) = -1/2.
    """
    prec = qq(prec)
    e1 = eisenstein_level3(10, (0, 1), prec)
    e2 = eisenstein_level3(10, (1, 0), prec)
    e3 = eisenstein_level3(10, (1, 1), prec)
    e4 = eisenstein_level3(10, (1, 2), prec)
    const = e1.coeff(0).rational()  # -671/3
    s = qq(-1, 2) / const
    w = omega_pow(1)
    w2 = omega_pow(2)
    h00 = (e1 + (e2 + e3 + e4).scale(qq(1, 3))).scale(s)
    h0 = (e2 + e3 + e4).scale(s * qq(4, 3))
    h43 = (e2 + e3.scale(w2) + e4.scale(w)).scale(s * qq(2, 3))
    h23 = (e2 + e3.scale(w) + e4.scale(w2)).scale(s * qq(2, 3))
    return VVForm(
        {"00": h00, "0": h0, "4/3": h43, "2/3": h23}, weight=qq(10), rep="rho*"
    )


def obstruction_cusp_basis(prec):
    """The two cusp tuples spanning the cuspidal part of the obstruction space.

    Tuple A is eta^8 times weight-6 level-3 combinations, tuple B is eta^16
    times the holomorphic parts of the weight-2 series; in B the coefficient
    patterns (1, w^k, w^-k) and (3, -1, -1, -1) are exactly the combinations
    that cancel the shared non-analytic part, which is asserted.
    """
    prec = qq(prec)
    w = omega_pow(1)
    w2 = omega_pow(2)

    eta8 = eta_power(8, prec + qq(2, 3))
    f1 = eisenstein_level3(6, (0, 1), prec)
    f2 = eisenstein_level3(6, (1, 0), prec)
    f3 = eisenstein_level3(6, (1, 1), prec)
    f4 = eisenstein_level3(6, (1, 2), prec)
    combo_w = f2 + f3.scale(w) + f4.scale(w2)
    combo_w2 = f2 + f3.scale(w2) + f4.scale(w)
    combo_1 = f1.scale(3) - (f2 + f3 + f4)
    case_a = VVForm(
        {
            "00": (eta8 * combo_w).truncate(prec),
            "0": (eta8 * combo_w).scale(-2).truncate(prec),
            "4/3": (eta8 * combo_1).truncate(prec),
            "2/3": (eta8 * combo_w2).scale(2).truncate(prec),
        },
        weight=qq(10),
        rep="rho*",
    )

    eta16 = eta_power(16, prec + qq(1, 3))
    g1 = eisenstein_level3(2, (0, 1), prec)
    g2 = eisenstein_level3(2, (1, 0), prec)
    g3 = eisenstein_level3(2, (1, 1), prec)
    g4 = eisenstein_level3(2, (1, 2), prec)
    combo_g00 = g2 + g3.scale(w2) + g4.scale(w)
    combo_g43 = g2 + g3.scale(w) + g4.scale(w2)
    combo_g23 = g1.scale(3) - (g2 + g3 + g4)
    # weight-2 non-analytic parts are shared; each combination's coefficient sum
    # must vanish for the holomorphic parts alone to transform correctly
    for total in (CYC_ONE + w2 + w, CYC_ONE + w + w2, cyc(3) - cyc(3)):
        assert total.is_zero()
    case_b = VVForm(
        {
            "00": (eta16 * combo_g00).truncate(prec),
            "0": (eta16 * combo_g00).scale(-2).truncate(prec),
            "4/3": (eta16 * combo_g43).scale(2).truncate(prec),
            "2/3": (eta16 * combo_g23).truncate(prec),
        },
        weight=qq(10),
        rep="rho*",
    )
    return case_a, case_b
