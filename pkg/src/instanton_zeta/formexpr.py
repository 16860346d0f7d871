"""Symbolic expressions over the named forms.

A FormExpr is a small tree whose leaves are named forms with a rational
argument scaling (and an optional half-period shift tau -> k tau + 1/2),
an unresolved quasi-modular slot, and rational constants; nodes are sums,
products, integer powers and scalar multiples (Gaussian-rational scalars,
so the two sqrt(-1)-weighted eta combinations are representable).

The same tree evaluates two ways: as an exact q-series (when every leaf
has one; the slot resolves to the holomorphic series) and as an
arbitrary-precision complex number (the slot resolves to the
anomaly-corrected weight-2 form).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InstantonZetaError
from .qseries import QSeries


class FormExpr:
    """Base class; combinators build trees without manual node wrapping."""

    def __add__(self, other):
        return Add((self, _coerce(other)))

    def __radd__(self, other):
        return Add((_coerce(other), self))

    def __sub__(self, other):
        return Add((self, Scal(Fraction(-1), Fraction(0), _coerce(other))))

    def __mul__(self, other):
        other = _coerce(other)
        return Mul((self, other))

    __rmul__ = __mul__

    def __pow__(self, n):
        return Pow(self, int(n))

    def scaled(self, re, im=0):
        return Scal(Fraction(re), Fraction(im), self)


def _coerce(x):
    if isinstance(x, FormExpr):
        return x
    if isinstance(x, (int, Fraction)):
        return Const(Fraction(x))
    raise TypeError(f"cannot use {x!r} in a form expression")


@dataclass(frozen=True)
class Leaf(FormExpr):
    name: str
    scale: Fraction = Fraction(1)
    half_shift: int = 0  # evaluate at scale*tau + half_shift/2


@dataclass(frozen=True)
class E2Slot(FormExpr):
    """Weight-2 quasi-modular slot: filled with the holomorphic series in
    the exact layer and with the anomaly-corrected form numerically."""
    scale: Fraction = Fraction(1)


@dataclass(frozen=True)
class Const(FormExpr):
    value: Fraction


@dataclass(frozen=True)
class Add(FormExpr):
    children: tuple


@dataclass(frozen=True)
class Mul(FormExpr):
    children: tuple


@dataclass(frozen=True)
class Pow(FormExpr):
    base: FormExpr
    n: int


@dataclass(frozen=True)
class Scal(FormExpr):
    re: Fraction
    im: Fraction
    child: FormExpr


def leaf(name, scale=1, half_shift=0):
    return Leaf(name, Fraction(scale), half_shift)


def const(v):
    return Const(Fraction(v))


def _exact(node, trunc, e2_mode, provider):
    from .forms import gen_form
    from .qseries import QQ
    if isinstance(node, Leaf):
        base = gen_form(node.name, trunc / node.scale, provider=provider)
        if node.half_shift:
            base = base.half_period_shift()
        return base.dilate(node.scale) if node.scale != 1 else base
    if isinstance(node, E2Slot):
        if e2_mode != "E2":
            raise InstantonZetaError(
                "the anomaly-corrected weight-2 form has no q-series; "
                "resolve the slot holomorphically for exact expansion")
        base = gen_form("E2", trunc / node.scale, provider=provider)
        return base.dilate(node.scale) if node.scale != 1 else base
    if isinstance(node, Const):
        return QSeries.constant(QQ, node.value, trunc)
    if isinstance(node, Add):
        out = None
        for ch in node.children:
            s = _exact(ch, trunc, e2_mode, provider)
            out = s if out is None else out + s
        return out
    if isinstance(node, Mul):
        out = None
        for ch in node.children:
            s = _exact(ch, trunc, e2_mode, provider)
            out = s if out is None else out * s
        return out
    if isinstance(node, Pow):
        return _exact(node.base, trunc, e2_mode, provider) ** node.n
    if isinstance(node, Scal):
        if node.im:
            raise InstantonZetaError(
                "imaginary scalar weight has no rational q-series")
        return _exact(node.child, trunc, e2_mode, provider).scale(node.re)
    raise TypeError(f"unknown expression node {node!r}")


def as_qseries(expr, trunc, e2_mode="E2", provider=None):
    """Exact q-expansion of the expression, guaranteed to the requested
    truncation (internal computations run with a margin that is widened
    until inverse powers stop eating into the bound)."""
    trunc = Fraction(trunc)
    margin = Fraction(2)
    for _ in range(8):
        s = _exact(expr, trunc + margin, e2_mode, provider)
        if s.trunc >= trunc:
            return s.truncate(trunc)
        margin += trunc - s.trunc
    raise InstantonZetaError("could not reach the requested truncation")
