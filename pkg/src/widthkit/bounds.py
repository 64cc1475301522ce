"""Closed-form width, clique and hyperedge bounds, evaluated exactly.

Rational bounds are :class:`fractions.Fraction`.  Bounds with a square root
of an integer are :class:`QuadraticSurd` and compare by squaring.  Bounds with
transcendental factors are :class:`RealBound`, compared through rigorous
interval enclosures (``mpmath.iv``) refined until the answer is certain.
Every ``log`` inside an exponent is base 2.
"""

from __future__ import annotations

import operator
from collections.abc import Callable
from dataclasses import dataclass
from fractions import Fraction
from math import comb, isqrt

from mpmath import iv, libmp

from .errors import ClassViolation, InvalidArgument

LOG_BASE = 2
DEFAULT_BETA = Fraction(10)
DEFAULT_TAU = Fraction(451, 100)

Exact = int | Fraction


def _sign(x) -> int:
    return (x > 0) - (x < 0)


class QuadraticSurd:
    """The exact real ``a + b*sqrt(d)`` with rational ``a, b`` and integer ``d >= 0``."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a: Exact, b: Exact = 0, d: int = 0):
        if d < 0:
            raise InvalidArgument("negative radicand")
        root = isqrt(d)
        a, b = Fraction(a), Fraction(b)
        if root * root == d:
            a, b, d = a + b * root, Fraction(0), 0
        self.a, self.b, self.d = a, b, d

    def compare(self, x: Exact) -> int:
        """Sign of ``self - x``."""
        p, q = self.a - Fraction(x), self.b
        if q == 0 or self.d == 0:
            return _sign(p)
        if p >= 0 and q > 0:
            return 1
        if p <= 0 and q < 0:
            return -1
        s = _sign(p * p - q * q * self.d)
        return s if p > 0 else -s

    def __mul__(self, k: Exact) -> "QuadraticSurd":
        return QuadraticSurd(self.a * k, self.b * k, self.d)

    __rmul__ = __mul__

    def __float__(self):
        return float(self.a) + float(self.b) * self.d ** 0.5

    def __repr__(self):
        return f"QuadraticSurd({self.a}, {self.b}, {self.d})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        return f"{self.a} + {self.b}*sqrt({self.d})"


def _iv_exact(x: Exact):
    x = Fraction(x)
    return iv.mpf(x.numerator) / x.denominator


def _endpoints(v) -> tuple[Fraction, Fraction]:
    lo, hi = v._mpi_
    return Fraction(*libmp.to_rational(lo)), Fraction(*libmp.to_rational(hi))


class Undecided(ArithmeticError):
    """An interval comparison did not separate within the precision cap."""


class RealBound:
    """A real number given by an interval-valued closure over ``mpmath.iv``.

    ``enclose()`` is evaluated under the current ``iv.prec`` and must return an
    interval containing the true value.
    """

    MAX_PREC = 4096

    def __init__(self, enclose: Callable[[], object], text: str):
        self._enclose = enclose
        self.text = text

    def interval(self, prec: int = 64) -> tuple[Fraction, Fraction]:
        saved = iv.prec
        iv.prec = prec
        try:
            return _endpoints(self._enclose())
        finally:
            iv.prec = saved

    def compare(self, x: Exact) -> int:
        """Sign of ``self - x``; raises :class:`Undecided` if it cannot be separated."""
        x = Fraction(x)
        prec = 64
        while prec <= self.MAX_PREC:
            lo, hi = self.interval(prec)
            if lo > x:
                return 1
            if hi < x:
                return -1
            if lo == hi == x:
                return 0
            prec *= 2
        raise Undecided(f"cannot separate {self.text} from {x}")

    def __mul__(self, k: Exact) -> "RealBound":
        f = self._enclose
        return RealBound(lambda: f() * _iv_exact(k), f"{k}*({self.text})")

    __rmul__ = __mul__

    def __float__(self):
        lo, hi = self.interval(64)
        return float((lo + hi) / 2)

    def __repr__(self):
        return f"RealBound({self.text})"

    __str__ = __repr__


Bound = int | Fraction | QuadraticSurd | RealBound

_CMP = {"<": operator.lt, "<=": operator.le, "==": operator.eq}


def compare(lhs: Exact, rhs: Bound) -> int:
    """Sign of ``lhs - rhs`` computed exactly."""
    if isinstance(rhs, (QuadraticSurd, RealBound)):
        return -rhs.compare(lhs)
    return _sign(Fraction(lhs) - Fraction(rhs))


def holds(lhs: Exact, cmp: str, rhs: Bound) -> bool:
    """Decide ``lhs cmp rhs`` for ``cmp`` in ``<``, ``<=``, ``==``."""
    return _CMP[cmp](compare(lhs, rhs), 0)


def ratio(lhs: Exact, rhs: Bound) -> float | None:
    r = float(rhs)
    return float(lhs) / r if r else None


def _log2(x):
    return iv.log(x) / iv.log(2)


def pow2_r_log_r(r: int, tau: Exact) -> RealBound:
    """``2^(tau * r * log r)``."""
    return RealBound(lambda: iv.mpf(2) ** (_iv_exact(tau) * r * _log2(iv.mpf(r))),
                     f"2^({tau}*{r}*log2({r}))")


def pow2_r_loglog_r(r: int, mu: Exact) -> RealBound:
    """``2^(mu * r * log log r)``."""
    return RealBound(lambda: iv.mpf(2) ** (_iv_exact(mu) * r * _log2(_log2(iv.mpf(r)))),
                     f"2^({mu}*{r}*log2(log2({r})))")


@dataclass(frozen=True)
class WidthBounds:
    """Strict upper bounds on clique-width and on tree-width plus one."""

    cwd: Bound
    twd_plus_one: Bound


def _need_rwd(rwd: int, least: int = 1) -> None:
    if rwd < least:
        raise InvalidArgument(f"rank-width must be at least {least}, got {rwd}")


def bound_planar(rwd: int) -> int:
    """Strict upper bound ``72*rwd - 1`` on the tree-width of a planar graph."""
    _need_rwd(rwd)
    return 72 * rwd - 1


def bound_genus(rwd: int, g: int) -> WidthBounds:
    """``cwd < 12 rwd + 10 g`` and ``twd + 1 < 3 (2 + sqrt(2g)) (6 rwd + 5 g)``."""
    _need_rwd(rwd, 0)
    if g < 0:
        raise InvalidArgument("Euler genus must be non-negative")
    s = 6 * rwd + 5 * g
    return WidthBounds(Fraction(12 * rwd + 10 * g), QuadraticSurd(6 * s, 3 * s, 2 * g))


def krr_lambda_bound(k: int, r: int) -> Fraction:
    """Distinct-row bound for a rank-``k`` cut of a ``K_{r,r}``-free graph."""
    return Fraction(r - 2, r + 1) * comb(k, r) + sum(comb(k, i) for i in range(r + 1))


def bound_krr(rwd: int, r: int) -> WidthBounds:
    if r < 2:
        raise InvalidArgument("K_{r,r} bounds need r >= 2")
    _need_rwd(rwd, 0)
    f = 2 * krr_lambda_bound(rwd, r)
    return WidthBounds(f, 3 * (r - 1) * f)


def bound_nabla1(rwd: int, r: int) -> WidthBounds:
    if r < 1:
        raise InvalidArgument("nabla_1 bounds need r >= 1")
    _need_rwd(rwd, 0)
    return WidthBounds(2 * 4**r * rwd, 12 * r * 4**r * rwd)


def bound_minor(rwd: int, r: int, mu: Exact | None = None) -> WidthBounds:
    """Bounds for graphs with no ``K_r`` minor; ``mu`` has no default."""
    if mu is None:
        raise InvalidArgument("the constant mu must be supplied")
    if r <= 2:
        raise InvalidArgument("K_r minor bounds need r > 2")
    _need_rwd(rwd, 0)
    p = pow2_r_loglog_r(r, mu)
    return WidthBounds(p * (2 * rwd), p * (6 * (r - 2) * rwd))


def bound_topminor(rwd: int, r: int, tau: Exact = DEFAULT_TAU) -> WidthBounds:
    if r <= 2:
        raise InvalidArgument("K_r topological-minor bounds need r > 2")
    _need_rwd(rwd, 0)
    p = pow2_r_log_r(r, tau)
    return WidthBounds(p * (2 * rwd), p * (Fraction(3, 4) * (r * r + 4 * r - 5) * rwd))


def _clique_size_ok(r: int, k: int) -> None:
    if r < 2:
        raise InvalidArgument("clique bounds need r >= 2")
    if not 1 <= k <= r - 1:
        raise InvalidArgument(f"clique size k={k} outside 1..{r - 1}")


def clique_bound_topminor(n: int, r: int, k: int, beta: Exact = DEFAULT_BETA) -> Fraction:
    """Cliques of size ``k`` in an ``n``-vertex graph with no ``K_r`` topological minor."""
    _clique_size_ok(r, k)
    return Fraction(comb(r + 1, k), r + 1) * (Fraction(beta) * r) ** (k - 1) * n


def clique_total_topminor(n: int, r: int, tau: Exact = DEFAULT_TAU) -> RealBound:
    """All cliques (the empty one included) with no ``K_r`` topological minor."""
    if r < 2:
        raise InvalidArgument("clique bounds need r >= 2")
    return pow2_r_log_r(r, tau) * n


def clique_bound_minor(n: int, r: int, k: int, alpha: Exact | None = None) -> RealBound:
    """Cliques of size ``k`` with no ``K_r`` minor; ``alpha`` has no default."""
    if alpha is None:
        raise InvalidArgument("the constant alpha must be supplied")
    _clique_size_ok(r, k)
    c = Fraction(comb(r + 1, k), r + 1) * n
    a2 = 2 * Fraction(alpha)
    return RealBound(lambda: _iv_exact(c) * (_iv_exact(a2) * iv.sqrt(_log2(iv.mpf(r)))) ** (k - 1),
                     f"{c}*({a2}*sqrt(log2({r})))^{k - 1}")


def tau_sufficient(beta: Exact = DEFAULT_BETA) -> RealBound:
    """The least admissible ``tau`` derived from ``beta`` (natural logarithms)."""
    def f():
        l2, l3 = iv.log(2), iv.log(3)
        a = 1 / (3 * l3)
        b = 1 / l2 + iv.log(_iv_exact(beta) + _iv_exact(Fraction(1, 3))) / (l2 * l3)
        return iv.mpf([max(a.a, b.a), max(a.b, b.b)])
    return RealBound(f, f"tau({beta})")


def fueredi_sudakov(n: int, k: int, s: int) -> Fraction:
    """Size bound for families whose ``k``-wise intersections have fewer than ``s`` elements."""
    if k < 2 or s < 1 or n < 0:
        raise InvalidArgument("need k >= 2, s >= 1, n >= 0")
    return Fraction(k - 2, s + 1) * comb(n, s) + sum(comb(n, i) for i in range(s + 1))


def krr_hyperedge_bound(n: int, r: int) -> Fraction:
    """Hyperedge bound when the incidence graph has no ``K_{r,r}`` subgraph."""
    if r < 2:
        raise InvalidArgument("need r >= 2")
    return krr_lambda_bound(n, r)


def genus_hyperedge_bound(n: int, r: int) -> int:
    return 6 * n - 9 + 5 * r


def nabla1_hyperedge_bound(n: int, r: int) -> int:
    return 4**r * n


def wood_clique_bound(n: int, d: int) -> int:
    """Clique count bound for a ``d``-degenerate graph on ``n >= d`` vertices."""
    if n < d:
        raise InvalidArgument("need n >= d")
    return 2**d * (n - d + 1)


def ktt_threshold(g: int) -> int:
    """Least ``t`` with ``t > 2 + sqrt(2g)``."""
    if g < 0:
        raise InvalidArgument("Euler genus must be non-negative")
    t = 2 + isqrt(2 * g)
    while (t - 2) ** 2 <= 2 * g:
        t += 1
    return t


@dataclass(frozen=True)
class GurskiWankeReport:
    twd_plus_one: int
    bound: int
    satisfied: bool


def gurski_wanke_check(g, r: int, cwd_upper: int) -> GurskiWankeReport:
    """Check ``twd + 1 <= 3 (r - 1) cwd_upper`` for a ``K_{r,r}``-free graph."""
    from .containment import has_krr_subgraph
    from .solvers import exact_treewidth

    if r < 2:
        raise InvalidArgument("need r >= 2")
    if has_krr_subgraph(g, r):
        raise ClassViolation(f"graph contains K_{{{r},{r}}}")
    tw, _ = exact_treewidth(g)
    bound = 3 * (r - 1) * cwd_upper
    return GurskiWankeReport(tw + 1, bound, tw + 1 <= bound)
