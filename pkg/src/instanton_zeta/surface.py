"""Cohomological data of the rational elliptic surface and its ruling.

The degree-2 cohomology lattice is Z^10 with basis (H, C1..C9) and
intersection form diag(1, -1, ..., -1).  Distinguished classes: the
elliptic fiber f = 3H - sum(C_i) (anticanonical, K = -f), the ruling fiber
g = H - C1, the orthogonal complement of <f, g> spanned by e1..e8 with the
even-sum rank-8 Gram matrix, and the half-vectors p, q generating the
index-4 glue group of <f, g> + <e1..e8> inside the full lattice.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ConfigurationError
from .lattice import _D8_ROWS

DIM = 10
_SIGNS = (1,) + (-1,) * 9


def pair(x, y):
    """Intersection pairing in the (H, C1..C9) basis."""
    return sum(s * a * b for s, a, b in zip(_SIGNS, x, y))


def star(x, y):
    """Sign-flipped pairing; positive definite on <f, g>-perp."""
    return -pair(x, y)


def vec_add(*vs):
    return tuple(sum(col) for col in zip(*vs))


def vec_scale(c, v):
    return tuple(c * x for x in v)


def _basis_vec(i):
    return tuple(1 if j == i else 0 for j in range(DIM))


class SurfaceData:
    """Fixed data of the surface; all invariants are checked on build."""

    def __init__(self):
        self.H = _basis_vec(0)
        self.C = tuple(_basis_vec(i) for i in range(1, 10))  # C1..C9
        self.f = vec_add(vec_scale(3, self.H),
                         *[vec_scale(-1, c) for c in self.C])
        self.g = vec_add(self.H, vec_scale(-1, self.C[0]))
        self.K = vec_scale(-1, self.f)
        # e1..e7 = C(9-i) - C(10-i); e8 = H - C1 - C2 - C3
        es = [vec_add(self.C[8 - i], vec_scale(-1, self.C[9 - i]))
              for i in range(1, 8)]
        es.append(vec_add(self.H, vec_scale(-1, self.C[0]),
                          vec_scale(-1, self.C[1]), vec_scale(-1, self.C[2])))
        self.e = tuple(es)
        half = Fraction(1, 2)
        self.p_half = vec_scale(half, vec_add(self.e[0], self.e[2],
                                              self.e[4], self.e[7]))
        self.q_half = vec_scale(half, vec_add(self.e[6], self.e[7]))
        self.betti = (1, 10, 1)
        self.sigma1_betti = (1, 2, 1)
        self.chi = 12
        self._check()
        # Gram of the e-basis under the star pairing, and its inverse
        self.e_gram = tuple(tuple(star(a, b) for b in self.e)
                            for a in self.e)
        self._e_gram_inv = _frac_inv(self.e_gram)

    def _check(self):
        if pair(self.f, self.f) != 0 or pair(self.g, self.g) != 0:
            raise ConfigurationError("fiber classes must be isotropic")
        if pair(self.f, self.g) != 2:
            raise ConfigurationError("(f, g) must equal 2")
        for v in self.e:
            if pair(v, self.f) != 0 or pair(v, self.g) != 0:
                raise ConfigurationError("e-basis not orthogonal to <f, g>")
        gram = tuple(tuple(star(a, b) for b in self.e) for a in self.e)
        zn_gram = tuple(tuple(sum(x * y for x, y in zip(r1, r2))
                              for r2 in _D8_ROWS) for r1 in _D8_ROWS)
        if gram != zn_gram:
            raise ConfigurationError(
                "e-basis Gram does not match the even-sum rank-8 lattice")
        # glue vectors must be integral classes
        for v in (vec_add(vec_scale(Fraction(1, 2), self.f), self.p_half),
                  vec_add(vec_scale(Fraction(1, 2), self.g), self.q_half)):
            if any(Fraction(x).denominator != 1 for x in v):
                raise ConfigurationError("glue vector is not integral")
        # index-4 glue of a determinant-(-4) plane and a determinant-4
        # definite summand recovers a unimodular overlattice
        disc_fg = abs(pair(self.f, self.f) * pair(self.g, self.g)
                      - pair(self.f, self.g) ** 2)
        disc_d8 = _int_det(gram)
        if Fraction(disc_fg * disc_d8, 4 ** 2) != 1:
            raise ConfigurationError("glue index does not give determinant 1")

    # -- decomposition helpers ---------------------------------------------

    def fg_components(self, x):
        """Coefficients (a, b) with x = a f + b g + (e-part)."""
        b = Fraction(pair(x, self.f), 2)
        a = Fraction(pair(x, self.g), 2)
        return a, b

    def e_coords(self, x):
        """Coordinates of the <f,g>-orthogonal part of x in the e-basis."""
        rhs = [star(x, v) for v in self.e]
        return tuple(sum(self._e_gram_inv[i][j] * rhs[j]
                         for j in range(8)) for i in range(8))

    def from_e_coords(self, coords):
        out = (Fraction(0),) * DIM
        for c, v in zip(coords, self.e):
            out = vec_add(out, vec_scale(Fraction(c), v))
        return out


def _int_det(gram):
    n = len(gram)
    a = [[Fraction(x) for x in row] for row in gram]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            factor = a[r][col] * inv
            if factor:
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    assert det.denominator == 1
    return int(det)


def _frac_inv(gram):
    n = len(gram)
    a = [[Fraction(gram[i][j]) for j in range(n)] +
         [Fraction(1 if k == i else 0) for k in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col])
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


SURFACE = SurfaceData()


@dataclass(frozen=True)
class C1Class:
    """One of the three first-Chern-class orbit representatives."""

    tag: str               # "v0" | "vEven" | "vOdd"
    rep: tuple             # representative in the (H, C1..C9) basis
    grid_offset: Fraction  # discriminants live on Z + grid_offset
    blowup_parity: int     # number of C_i (2 <= i <= 9) pairing oddly

    @property
    def half_rep_e_coords(self):
        return tuple(Fraction(c, 2) for c in SURFACE.e_coords(self.rep))


def _build_class(tag):
    s = SURFACE
    if tag == "v0":
        rep = (0,) * DIM
    elif tag == "vEven":
        rep = vec_add(s.e[6], s.e[7])
    elif tag == "vOdd":
        rep = s.e[0]  # C8 - C9
    else:
        raise ConfigurationError(f"unknown class tag {tag!r}")
    norm_star = star(rep, rep)
    offset = Fraction(norm_star, 4) % 1  # Delta = c2 - (c1^2)/4 mod 1
    n = sum(1 for i in range(1, 9) if pair(rep, s.C[i]) % 2)
    expected_n = {"v0": 0, "vEven": 0, "vOdd": 2}[tag]
    if n != expected_n:
        raise ConfigurationError(
            f"blow-up parity count for {tag} is {n}, expected {expected_n}")
    return C1Class(tag=tag, rep=rep, grid_offset=offset, blowup_parity=n)


V0 = _build_class("v0")
V_EVEN = _build_class("vEven")
V_ODD = _build_class("vOdd")
CLASSES = {"v0": V0, "vEven": V_EVEN, "vOdd": V_ODD}
