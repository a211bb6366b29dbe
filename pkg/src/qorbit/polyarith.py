"""Dense univariate polynomial arithmetic over F_p and an irreducibility test.

Polynomials are coefficient lists in [0, p), lowest degree first, with no
trailing zeros; the zero polynomial is the empty list.  This module is the
brute-force side of the stability machinery: it builds symbolic iterates
f^(n) (degree 2^n, so a cap keeps memory bounded) and decides
irreducibility by the distinct-degree criterion, i.e. Frobenius powers
X^(p^i) mod g computed by repeated squaring, gcd checks at d/r for every
prime r dividing d = deg g, and the closing identity X^(p^d) = X mod g.

Multiplication is schoolbook with a Karatsuba split above degree 64; the
degrees reached at desk scale do not reward anything fancier.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, Sequence

from .errors import ConstantPolynomial, IterateCapExceeded
from .ff import FieldCtx

if TYPE_CHECKING:
    from .dynamics import QuadPoly

DEFAULT_ITERATE_CAP = 20
_KARATSUBA_CUTOFF = 64  # coefficient count below which schoolbook wins


@dataclass(frozen=True)
class Poly:
    """Canonical dense polynomial: coeffs[i] is the X^i coefficient."""

    coeffs: tuple[int, ...]

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int], ctx: FieldCtx) -> "Poly":
        return cls(tuple(_trim([c % ctx.p for c in coeffs])))

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def evaluate(self, x: int, p: int) -> int:
        y = 0
        for c in reversed(self.coeffs):
            y = (y * x + c) % p
        return y


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _add(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, v in enumerate(b):
        out[i] = (out[i] + v) % p
    return _trim(out)


def _sub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    out = list(a) + [0] * (len(b) - len(a))
    for i, v in enumerate(b):
        out[i] = (out[i] - v) % p
    return _trim(out)


def _mul_schoolbook(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _mul_raw(a: Sequence[int], b: Sequence[int]) -> list[int]:
    # Unreduced product over the integers; callers reduce mod p once.
    if not a or not b:
        return []
    if min(len(a), len(b)) <= _KARATSUBA_CUTOFF:
        return _mul_schoolbook(a, b)
    m = max(len(a), len(b)) // 2
    a0, a1 = list(a[:m]), list(a[m:])
    b0, b1 = list(b[:m]), list(b[m:])
    z0 = _mul_raw(a0, b0)
    z2 = _mul_raw(a1, b1)
    sa = [x + y for x, y in zip(a0, a1)] + (a1[len(a0):] or a0[len(a1):])
    sb = [x + y for x, y in zip(b0, b1)] + (b1[len(b0):] or b0[len(b1):])
    z1 = _mul_raw(sa, sb)
    out = [0] * (len(a) + len(b) - 1)
    for i, v in enumerate(z0):
        out[i] += v
        z1[i] -= v
    for i, v in enumerate(z2):
        out[2 * m + i] += v
        if i < len(z1):
            z1[i] -= v
        else:
            z1.append(-v)
    for i, v in enumerate(z1):
        out[m + i] += v
    return out


def _mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    return _trim([v % p for v in _mul_raw(a, b)])


def _divmod(a: Sequence[int], b: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db, lead = len(b) - 1, b[-1]
    if len(r) <= db:
        return [], _trim(r)
    inv_lead = pow(lead, p - 2, p)
    q = [0] * (len(r) - db)
    for i in range(len(r) - 1, db - 1, -1):
        coef = r[i]
        if coef:
            coef = coef * inv_lead % p
            q[i - db] = coef
            for j in range(db + 1):
                r[i - db + j] = (r[i - db + j] - coef * b[j]) % p
    return _trim(q), _trim(r)


def _mod(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    return _divmod(a, b, p)[1]


def _monic(a: Sequence[int], p: int) -> list[int]:
    if not a or a[-1] == 1:
        return list(a)
    inv = pow(a[-1], p - 2, p)
    return [c * inv % p for c in a]


def _gcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = list(a), list(b)
    while b:
        a, b = b, _mod(a, b, p)
    return _monic(a, p)


def _powmod(base: Sequence[int], e: int, modulus: Sequence[int], p: int) -> list[int]:
    result = [1]
    acc = _mod(base, modulus, p)
    while e > 0:
        if e & 1:
            result = _mod(_mul(result, acc, p), modulus, p)
        e >>= 1
        if e:
            acc = _mod(_mul(acc, acc, p), modulus, p)
    return result


def poly_mul(a: Poly, b: Poly, ctx: FieldCtx) -> Poly:
    return Poly(tuple(_mul(a.coeffs, b.coeffs, ctx.p)))


def poly_divmod(a: Poly, b: Poly, ctx: FieldCtx) -> tuple[Poly, Poly]:
    q, r = _divmod(a.coeffs, b.coeffs, ctx.p)
    return Poly(tuple(q)), Poly(tuple(r))


def poly_gcd(a: Poly, b: Poly, ctx: FieldCtx) -> Poly:
    """Monic greatest common divisor."""
    return Poly(tuple(_gcd(a.coeffs, b.coeffs, ctx.p)))


def poly_powmod(base: Poly, e: int, modulus: Poly, ctx: FieldCtx) -> Poly:
    """base^e mod modulus by repeated squaring; e >= 0."""
    if e < 0:
        raise ValueError("exponent must be nonnegative")
    return Poly(tuple(_powmod(base.coeffs, e, modulus.coeffs, ctx.p)))


def compose_iterate(f: "QuadPoly", n: int, cap: int = DEFAULT_ITERATE_CAP) -> Poly:
    """The symbolic iterate f^(n), of degree exactly 2^n (X itself for n = 0).

    The degree doubles per step, so n is capped (default 20, about 10^6
    coefficients) to keep memory desk-scale.
    """
    if n < 0:
        raise ValueError("iterate index must be nonnegative")
    if n > cap:
        raise IterateCapExceeded(f"iterate {n} exceeds cap {cap}")
    p = f.ctx.p
    h = [0, 1]
    for _ in range(n):
        h2 = _mul(h, h, p)
        h = _add([c * f.a % p for c in h2], [c * f.b % p for c in h], p)
        h = _add(h, [f.c], p)
    return Poly(tuple(h))


def _prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(g: Poly, ctx: FieldCtx) -> bool:
    """True iff g is irreducible over F_p (any degree >= 1, any leading coeff).

    Checks gcd(X^(p^(d/r)) - X, g) = 1 for every prime r | d and finishes
    with X^(p^d) = X mod g; the Frobenius powers are maintained
    incrementally, one repeated-squaring exponentiation per step.
    """
    p = ctx.p
    d = g.degree
    if d < 1:
        raise ConstantPolynomial("irreducibility requires degree >= 1")
    if d == 1:
        return True
    gm = _monic(g.coeffs, p)
    x = [0, 1]
    checkpoints = {d // r for r in _prime_divisors(d)}
    h = list(x)
    for i in range(1, d + 1):
        h = _powmod(h, p, gm, p)
        if i in checkpoints:
            if len(_gcd(_sub(h, x, p), gm, p)) != 1:
                return False
    return _sub(h, x, p) == []
