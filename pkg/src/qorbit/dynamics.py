"""Pointwise iteration of quadratic maps and the rho-shape of critical orbits.

A quadratic f(X) = aX^2 + bX + c over F_p (a != 0) has the unique critical
point gamma = -b/(2a).  Iterating f from gamma produces an eventually
periodic sequence a_n = f^(n)(gamma), a_0 = gamma; its shape is the
pre-period mu and period lambda.  The collision indices are normalized so
the source index s is positive: s = max(mu, 1) and t_f = s + lambda is the
smallest index with f^(t_f)(gamma) = f^(s)(gamma).  The critical orbit is
the value set {f^(n)(gamma) : n = 2..t_f}, of size t_f - 1 when s = 1 and
t_f - 2 otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .errors import InvalidQuadratic
from .ff import FieldCtx, Fp


@dataclass(frozen=True)
class QuadPoly:
    """f(X) = aX^2 + bX + c over a fixed field, with its critical point cached."""

    ctx: FieldCtx
    a: Fp
    b: Fp
    c: Fp
    gamma: Fp = field(init=False)

    def __post_init__(self) -> None:
        p = self.ctx.p
        a, b, c = self.a % p, self.b % p, self.c % p
        if a == 0:
            raise InvalidQuadratic(f"leading coefficient must be nonzero mod {p}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "gamma", (-b * pow(2 * a, p - 2, p)) % p)

    def __call__(self, x: Fp) -> Fp:
        return ((self.a * x + self.b) * x + self.c) % self.ctx.p

    def __str__(self) -> str:
        return f"{self.a}X^2 + {self.b}X + {self.c} over F_{self.ctx.p}"


@dataclass(frozen=True)
class OrbitShape:
    """Rho-shape of the critical sequence and the derived collision data."""

    mu: int
    lam: int
    s: int
    t_f: int
    orbit_size: int


def critical_point(f: QuadPoly) -> Fp:
    """The unique zero of f', namely -b/(2a) mod p."""
    return f.gamma


def iterate_value(f: QuadPoly, x: Fp, n: int) -> Fp:
    """n-fold application of f to x; n = 0 returns x unchanged."""
    if n < 0:
        raise ValueError("iteration count must be nonnegative")
    x %= f.ctx.p
    for _ in range(n):
        x = f(x)
    return x


def _rho_brent(x0: int, step: Callable[[int], int]) -> tuple[int, int]:
    """(mu, lambda) of the sequence x0, step(x0), ... with O(1) memory."""
    power = 1
    lam = 1
    tortoise = x0
    hare = step(x0)
    while tortoise != hare:
        if power == lam:
            tortoise = hare
            power *= 2
            lam = 0
        hare = step(hare)
        lam += 1
    tortoise = hare = x0
    for _ in range(lam):
        hare = step(hare)
    mu = 0
    while tortoise != hare:
        tortoise = step(tortoise)
        hare = step(hare)
        mu += 1
    return mu, lam


def _rho_table(x0: int, step: Callable[[int], int]) -> tuple[int, int]:
    """(mu, lambda) by recording every visited value; reference mode."""
    seen = {x0: 0}
    x = x0
    n = 0
    while True:
        n += 1
        x = step(x)
        first = seen.get(x)
        if first is not None:
            return first, n - first
        seen[x] = n


def shape_from_rho(mu: int, lam: int) -> OrbitShape:
    """Derive the collision indices and orbit size from (mu, lambda)."""
    s = max(mu, 1)
    t_f = s + lam
    orbit_size = t_f - 1 if s == 1 else t_f - 2
    return OrbitShape(mu=mu, lam=lam, s=s, t_f=t_f, orbit_size=orbit_size)


def orbit_shape(f: QuadPoly, method: str = "brent") -> OrbitShape:
    """Exact rho-shape of the critical sequence a_n = f^(n)(gamma), a_0 = gamma.

    method selects the cycle detector: "brent" (constant memory, default)
    or "table" (visited-value dictionary, kept as a cross-check).
    """
    if method == "brent":
        mu, lam = _rho_brent(f.gamma, f)
    elif method == "table":
        mu, lam = _rho_table(f.gamma, f)
    else:
        raise ValueError(f"unknown cycle detection method: {method!r}")
    return shape_from_rho(mu, lam)
