"""Integral quadratic lattices, discriminant forms, isometries, and glue.

Conventions: a lattice is a free Z-module with an exact symmetric Gram
matrix; root lattices (A2, E6, E8) are negative definite.  The discriminant
group A_M = M*/M is presented through the Smith normal form of the Gram
matrix, with generator lifts stored as rational coordinate vectors in the
lattice basis, so the quadratic form q (valued in Q/2Z) and the bilinear
form b (valued in Q/Z) are evaluable on every element.
"""

import itertools
from dataclasses import dataclass
from functools import lru_cache

from . import _linalg
from ._rational import as_int, den, fmt_q, is_integer, mod_q, num, qq

__all__ = [
    "Lattice",
    "DiscGroup",
    "IsometryReport",
    "analyze_isometry",
    "build_standard",
    "classify_disc_elements",
    "direct_sum",
    "disc_forms_isomorphic",
    "discriminant_group",
    "overlattice",
    "pairing_census",
    "theta1_isometry_matrix",
]

CENSUS_LIMIT = 10_000
ISO_LIMIT = 1_000


@dataclass(frozen=True)
class Lattice:
    gram: tuple
    name: str = ""

    @property
    def rank(self) -> int:
        return len(self.gram)

    def det(self):
        if self.rank == 0:
            return qq(1)
        return _linalg.det_field(self.gram, qq(1), qq(0))

    def is_integral(self) -> bool:
        return all(is_integer(x) for row in self.gram for x in row)

    def is_even(self) -> bool:
        if not self.is_integral():
            return False
        return all(num(self.gram[i][i]) % 2 == 0 for i in range(self.rank))

    def signature(self):
        if self.rank == 0:
            return (0, 0)
        return _linalg.signature(self.gram)

    def is_negative_definite(self) -> bool:
        return self.signature() == (0, self.rank)

    def dual_gram(self):
        return _linalg.mat_freeze(_linalg.mat_inverse(self.gram, qq(1), qq(0)))

    def inner(self, u, v):
        s = qq(0)
        for i, ui in enumerate(u):
            if ui == 0:
                continue
            row = self.gram[i]
            for j, vj in enumerate(v):
                if vj != 0:
                    s += ui * row[j] * vj
        return s

    def rescale(self, n) -> "Lattice":
        n = qq(n)
        return Lattice(
            tuple(tuple(n * x for x in row) for row in self.gram),
            name=f"{self.name}({fmt_q(n)})" if self.name else "",
        )

    def __str__(self):
        return self.name or f"<lattice rank {self.rank}>"


def _freeze(rows) -> tuple:
    return tuple(tuple(qq(x) for x in row) for row in rows)


def direct_sum(*lattices: Lattice) -> Lattice:
    n = sum(l.rank for l in lattices)
    rows = [[qq(0)] * n for _ in range(n)]
    off = 0
    for lat in lattices:
        for i in range(lat.rank):
            for j in range(lat.rank):
                rows[off + i][off + j] = lat.gram[i][j]
        off += lat.rank
    name = "+".join(l.name for l in lattices if l.name)
    return Lattice(_freeze(rows), name=name)


def _cartan_negative(edges, n) -> tuple:
    rows = [[qq(0)] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = qq(-2)
    for i, j in edges:
        rows[i - 1][j - 1] = qq(1)
        rows[j - 1][i - 1] = qq(1)
    return _freeze(rows)


_E6_EDGES = [(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)]
_E8_EDGES = [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)]

_BASE = {
    "U": lambda: Lattice(_freeze([[0, 1], [1, 0]]), name="U"),
    "A1": lambda: Lattice(_freeze([[-2]]), name="A1"),
    "A2": lambda: Lattice(_freeze([[-2, 1], [1, -2]]), name="A2"),
    "E6": lambda: Lattice(_cartan_negative(_E6_EDGES, 6), name="E6"),
    "E8": lambda: Lattice(_cartan_negative(_E8_EDGES, 8), name="E8"),
    "0": lambda: Lattice((), name="0"),
}


def _parse_token(token: str) -> Lattice:
    token = token.strip()
    if token.endswith(")") and "(" in token:
        base, _, scale = token[:-1].partition("(")
        n = qq(scale)
        if base == "U":
            return Lattice(_freeze([[0, n], [n, 0]]), name=f"U({fmt_q(n)})")
        lat = _parse_token(base)
        return lat.rescale(n)
    if token in _BASE:
        return _BASE[token]()
    raise ValueError(f"unknown lattice name {token!r}")


def build_standard(name: str) -> Lattice:
    """Construct a named lattice; '+' forms direct sums, 'X(n)' rescales.

    Recognized atoms: U, U(n), A1, A2, E6, E8, 0, and the aliases
    II_2_18 = U+U+E8+E8, II_2_26 = U+U+E8+E8+E8, L_dm = U+U(3)+E8+E8.
    """
    aliases = {
        "II_2_18": "U+U+E8+E8",
        "II_2_26": "U+U+E8+E8+E8",
        "L_dm": "U+U(3)+E8+E8",
    }
    expr = aliases.get(name, name)
    parts = [p for p in expr.split("+") if p.strip()]
    if not parts:
        raise ValueError(f"unknown lattice name {name!r}")
    lat = direct_sum(*[_parse_token(p) for p in parts])
    return Lattice(lat.gram, name=name)


# ---------------------------------------------------------------------------
# discriminant groups


@dataclass(frozen=True)
class DiscGroup:
    """A_M = M*/M with generator lifts in rational lattice coordinates."""

    invariant_factors: tuple
    lifts: tuple  # one rational coordinate vector per invariant factor
    lattice: Lattice

    @property
    def order(self) -> int:
        n = 1
        for d in self.invariant_factors:
            n *= d
        return n

    def elements(self):
        ranges = [range(d) for d in self.invariant_factors]
        return itertools.product(*ranges)

    def zero(self):
        return tuple(0 for _ in self.invariant_factors)

    def neg(self, el):
        return tuple((-a) % d for a, d in zip(el, self.invariant_factors))

    def add(self, e1, e2):
        return tuple(
            (a + b) % d for a, b, d in zip(e1, e2, self.invariant_factors)
        )

    def lift(self, el):
        n = self.lattice.rank
        v = [qq(0)] * n
        for a, g in zip(el, self.lifts):
            if a:
                for i in range(n):
                    v[i] += a * g[i]
        return tuple(v)

    def q(self, el):
        """Quadratic form value in [0, 2)."""
        v = self.lift(el)
        return mod_q(self.lattice.inner(v, v), qq(2))

    def b(self, e1, e2):
        """Bilinear form value in [0, 1)."""
        return mod_q(
            self.lattice.inner(self.lift(e1), self.lift(e2)), qq(1)
        )

    def reduce_vector(self, v):
        """Class of a dual vector (rational coordinates) in A_M."""
        # solve v = sum a_i lift_i + (lattice vector) for a_i mod d_i
        # brute force over the group; groups here are small
        for el in self.elements():
            w = self.lift(el)
            if all(is_integer(x - y) for x, y in zip(v, w)):
                return el
        raise ValueError("vector does not lie in the dual lattice")

    def orbit_representatives(self):
        """One representative per {el, -el} orbit, in iteration order."""
        seen = set()
        reps = []
        for el in self.elements():
            if el in seen:
                continue
            seen.add(el)
            seen.add(self.neg(el))
            reps.append(el)
        return reps


@lru_cache(maxsize=None)
def discriminant_group(lattice: Lattice) -> DiscGroup:
    if not lattice.is_integral():
        raise ValueError("discriminant group needs an integral lattice")
    d = lattice.det()
    if d == 0:
        raise ValueError("degenerate Gram matrix")
    n = lattice.rank
    g_int = [[as_int(x) for x in row] for row in lattice.gram]
    s, u, _v = _linalg.smith_normal_form(g_int)
    u_inv = _linalg.int_mat_inverse(u)
    dual = lattice.dual_gram() if n else ()
    factors = []
    lifts = []
    for i in range(n):
        di = s[i][i]
        if di > 1:
            factors.append(di)
            # column i of U^-1 gives the generator in dual-basis coordinates;
            # convert to lattice coordinates through the dual Gram
            w = [qq(u_inv[r][i]) for r in range(n)]
            lifts.append(tuple(_linalg.mat_vec(dual, w, qq(0))))
    group = DiscGroup(tuple(factors), tuple(lifts), lattice)
    assert group.order == abs(as_int(d))
    return group


def _q_label(qval) -> str:
    return fmt_q(qval)


def classify_disc_elements(lattice: Lattice) -> dict:
    """Census of A_M by q-value: '00' for 0, '0' for nonzero isotropic, else q."""
    disc = discriminant_group(lattice)
    if disc.order > CENSUS_LIMIT:
        raise ValueError("census too large")
    census = {}
    for el in disc.elements():
        label = element_type(disc, el)
        census[label] = census.get(label, 0) + 1
    return census


def element_type(disc: DiscGroup, el) -> str:
    if all(a == 0 for a in el):
        return "00"
    qv = disc.q(el)
    return "0" if qv == 0 else _q_label(qv)


def elements_by_type(lattice: Lattice) -> dict:
    disc = discriminant_group(lattice)
    groups = {}
    for el in disc.elements():
        groups.setdefault(element_type(disc, el), []).append(el)
    return groups


def pairing_census(lattice: Lattice) -> dict:
    """For u, v ranging over type classes: counts of b(u,v) = 0, 1/3, 2/3.

    The counts must not depend on the representative u; that uniformity is
    asserted.  Only defined when all pairing values are thirds.
    """
    disc = discriminant_group(lattice)
    if disc.order > CENSUS_LIMIT:
        raise ValueError("census too large")
    groups = elements_by_type(lattice)
    thirds = (qq(0), qq(1, 3), qq(2, 3))
    table = {}
    for ulabel, us in groups.items():
        for vlabel, vs in groups.items():
            counts = None
            for u in us:
                cnt = [0, 0, 0]
                for v in vs:
                    bval = disc.b(u, v)
                    if bval not in thirds:
                        raise ValueError("pairing values are not thirds")
                    cnt[thirds.index(bval)] += 1
                cnt = tuple(cnt)
                if counts is None:
                    counts = cnt
                elif counts != cnt:
                    raise ValueError(
                        f"pairing census depends on the representative of {ulabel}"
                    )
            table[(ulabel, vlabel)] = counts
    return table


# ---------------------------------------------------------------------------
# isometries


@dataclass(frozen=True)
class IsometryReport:
    is_isometry: bool
    order: object  # int or None
    fixed_rank: int
    disc_action_trivial: bool
    min_poly_check: bool  # g^2 + g + 1 = 0


def analyze_isometry(lattice: Lattice, matrix) -> IsometryReport:
    """Analyze an integer matrix acting on the lattice basis (columns = images)."""
    n = lattice.rank
    if len(matrix) != n or any(len(row) != n for row in matrix):
        raise ValueError("dimension mismatch")
    g = [[qq(x) for x in row] for row in matrix]
    zero, one = qq(0), qq(1)
    gt = _linalg.mat_transpose(g)
    gram = [list(row) for row in lattice.gram]
    is_isometry = _linalg.mat_eq(
        _linalg.mat_mul(_linalg.mat_mul(gt, gram, zero), g, zero), gram
    )
    order = _linalg.mat_pow_order(g, one, zero, cap=120) if is_isometry else None
    g_minus_1 = [[g[i][j] - (one if i == j else zero) for j in range(n)] for i in range(n)]
    fixed_rank = n - _linalg.rank_field(g_minus_1, one, zero)
    # discriminant action: g fixes A_M iff (g - 1) maps every generator lift into M
    disc = discriminant_group(lattice)
    trivial = True
    for lift in disc.lifts:
        image = _linalg.mat_vec(g, list(lift), zero)
        if not all(is_integer(x - y) for x, y in zip(image, lift)):
            trivial = False
            break
    g2 = _linalg.mat_mul(g, g, zero)
    poly = [
        [g2[i][j] + g[i][j] + (one if i == j else zero) for j in range(n)]
        for i in range(n)
    ]
    min_poly = all(x == zero for row in poly for x in row)
    return IsometryReport(is_isometry, order, fixed_rank, trivial, min_poly)


def theta1_isometry_matrix():
    """Order-3 fixed-point-free isometry of U(3)+U (basis e, f, e', f').

    e -> -2e + 3e', f -> f + 3f', e' -> -e + e', f' -> -f - 2f'.
    """
    return (
        (-2, 0, -1, 0),
        (0, 1, 0, -1),
        (3, 0, 1, 0),
        (0, 3, 0, -2),
    )


# ---------------------------------------------------------------------------
# overlattices (glue)


def _subgroup_closure(disc: DiscGroup, gens):
    elems = {disc.zero()}
    frontier = [disc.zero()]
    while frontier:
        nxt = []
        for e in frontier:
            for g in gens:
                s = disc.add(e, g)
                if s not in elems:
                    elems.add(s)
                    nxt.append(s)
        frontier = nxt
    return elems


def overlattice(lattice: Lattice, glue_vectors) -> Lattice:
    """Even overlattice generated by M and dual vectors spanning an isotropic glue.

    glue_vectors: rational coordinate vectors (in the basis of M) lying in M*.
    Raises if the generated subgroup of A_M is not isotropic for q.
    """
    disc = discriminant_group(lattice)
    n = lattice.rank
    gens = []
    for v in glue_vectors:
        v = tuple(qq(x) for x in v)
        paired = _linalg.mat_vec([list(r) for r in lattice.gram], list(v), qq(0))
        if not all(is_integer(x) for x in paired):
            raise ValueError("glue vector is not in the dual lattice")
        gens.append(disc.reduce_vector(v))
    subgroup = _subgroup_closure(disc, gens)
    for el in subgroup:
        if disc.q(el) != 0:
            raise ValueError("glue subgroup is not isotropic")
    # basis via Hermite form of the scaled generator stack
    rows = [[qq(1) if i == j else qq(0) for j in range(n)] for i in range(n)]
    rows += [[qq(x) for x in v] for v in glue_vectors]
    lcm = 1
    for row in rows:
        for x in row:
            d = den(x)
            lcm = lcm * d // _gcd(lcm, d)
    scaled = [[as_int(x * lcm) for x in row] for row in rows]
    basis = _linalg.hermite_row_basis(scaled, n)
    if len(basis) != n:
        raise ValueError("glue vectors do not span a finite-index overlattice")
    bq = [[qq(x, lcm) for x in row] for row in basis]
    gram = [[lattice.inner(bq[i], bq[j]) for j in range(n)] for i in range(n)]
    out = Lattice(_freeze(gram), name=f"{lattice.name}^glue" if lattice.name else "")
    if not out.is_even():
        raise ValueError("overlattice is not even")
    h = len(subgroup)
    assert abs(as_int(out.det())) * h * h == abs(as_int(lattice.det()))
    return out


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


# ---------------------------------------------------------------------------
# discriminant-form isomorphism (brute force)


def disc_forms_isomorphic(m1: Lattice, m2: Lattice, flip_sign: bool = False) -> bool:
    """Search for a q-preserving isomorphism A_{M1} -> A_{M2} (or q -> -q)."""
    d1 = discriminant_group(m1)
    d2 = discriminant_group(m2)
    if d1.order != d2.order:
        return False
    if d1.order > ISO_LIMIT:
        raise ValueError("census too large")
    if sorted(d1.invariant_factors) != sorted(d2.invariant_factors):
        return False

    def target_q(el):
        qv = d1.q(el)
        return mod_q(-qv, qq(2)) if flip_sign else qv

    elems2 = list(d2.elements())
    orders2 = {el: _element_order(d2, el) for el in elems2}
    q2 = {el: d2.q(el) for el in elems2}
    gens1 = [
        tuple(1 if i == j else 0 for j in range(len(d1.invariant_factors)))
        for i in range(len(d1.invariant_factors))
    ]

    def extend(idx, images):
        if idx == len(gens1):
            return _is_isomorphism(d1, d2, gens1, images, flip_sign)
        g = gens1[idx]
        want_order = d1.invariant_factors[idx]
        want_q = target_q(g)
        for cand in elems2:
            if orders2[cand] != want_order or q2[cand] != want_q:
                continue
            if extend(idx + 1, images + [cand]):
                return True
        return False

    return extend(0, [])


def _element_order(disc: DiscGroup, el) -> int:
    order = 1
    for a, d in zip(el, disc.invariant_factors):
        if a:
            k = d // _gcd(d, a)
            order = order * k // _gcd(order, k)
    return order


def _is_isomorphism(d1, d2, gens1, images, flip_sign) -> bool:
    # the candidate map sends sum a_i g_i to sum a_i images_i
    seen = set()
    for el in d1.elements():
        im = d2.zero()
        for a, img in zip(el, images):
            for _ in range(a):
                im = d2.add(im, img)
        if im in seen:
            return False
        seen.add(im)
        q1 = d1.q(el)
        want = mod_q(-q1, qq(2)) if flip_sign else q1
        if d2.q(im) != want:
            return False
    return True
