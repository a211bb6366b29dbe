"""Arithmetic in odd prime fields F_p and the quadratic character.

Field elements are canonical residues, plain Python ints in [0, p), always
interpreted relative to a FieldCtx.  The context validates its modulus at
construction (deterministic primality check) and provides exact modular
arithmetic plus the quadratic character chi: chi(0) = 0, chi(x) = 1 for
nonzero squares and -1 for non-squares, computed by the Euler criterion
x^((p-1)/2) mod p via repeated squaring.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field

from .errors import CompositeModulus, DivisionByZero, EvenModulus, OutOfRange

#: Element of F_p: a canonical residue in [0, p).
Fp = int

MODULUS_CAP = 1 << 62

# Below this bound trial division is cheap and leaves no doubt; above it we
# switch to Miller-Rabin with a witness set that is deterministic for n < 2^64.
_TRIAL_DIVISION_LIMIT = 1 << 20
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

# Largest p for which chi_table() will materialize a lookup table.
CHI_TABLE_CAP = 1 << 21


def is_prime(n: int) -> bool:
    """Deterministic primality test for 0 <= n < 2^64."""
    if n < 2:
        return False
    if n < _TRIAL_DIVISION_LIMIT:
        if n % 2 == 0:
            return n == 2
        d = 3
        while d * d <= n:
            if n % d == 0:
                return False
            d += 2
        return True
    for w in _MR_WITNESSES:
        if n % w == 0:
            return n == w
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for w in _MR_WITNESSES:
        x = pow(w, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldCtx:
    """An odd prime modulus with derived constants; immutable and shareable."""

    p: int
    half: int = field(init=False, repr=False)  # (p-1)/2, the Euler exponent

    def __post_init__(self) -> None:
        object.__setattr__(self, "half", (self.p - 1) // 2)

    def element(self, x: int) -> Fp:
        """Canonical residue of an arbitrary integer."""
        return x % self.p

    def add(self, x: Fp, y: Fp) -> Fp:
        return (x + y) % self.p

    def sub(self, x: Fp, y: Fp) -> Fp:
        return (x - y) % self.p

    def mul(self, x: Fp, y: Fp) -> Fp:
        return (x * y) % self.p

    def neg(self, x: Fp) -> Fp:
        return (-x) % self.p

    def inv(self, x: Fp) -> Fp:
        if x % self.p == 0:
            raise DivisionByZero(f"inverse of 0 in F_{self.p}")
        return pow(x, self.p - 2, self.p)

    def pow(self, x: Fp, e: int) -> Fp:
        """x^e mod p for e >= 0, via repeated squaring."""
        if e < 0:
            raise ValueError("exponent must be nonnegative")
        return pow(x, e, self.p)

    def chi(self, x: Fp) -> int:
        """Quadratic character: 0 at 0, 1 for nonzero squares, -1 otherwise."""
        x %= self.p
        if x == 0:
            return 0
        r = pow(x, self.half, self.p)
        return 1 if r == 1 else -1

    def is_square(self, x: Fp) -> bool:
        """True iff x is a square in F_p; zero counts as a square."""
        return self.chi(x) >= 0


def new_field(p: int) -> FieldCtx:
    """Validate p and build a field context.

    Raises EvenModulus for p = 2, OutOfRange outside [3, 2^62), and
    CompositeModulus when p is not prime.
    """
    if not isinstance(p, int):
        raise OutOfRange(f"modulus must be an integer, got {type(p).__name__}")
    if p == 2:
        raise EvenModulus("p = 2 is not supported; the field must have odd characteristic")
    if p < 3 or p >= MODULUS_CAP:
        raise OutOfRange(f"modulus must satisfy 3 <= p < 2^62, got {p}")
    if p % 2 == 0 or not is_prime(p):
        raise CompositeModulus(f"{p} is not prime")
    return FieldCtx(p)


@functools.lru_cache(maxsize=8)
def chi_table(ctx: FieldCtx) -> list[int]:
    """Lookup table t with t[x] = chi(x), built by enumerating squares.

    Only available for p <= CHI_TABLE_CAP; larger fields should call
    ctx.chi directly.
    """
    p = ctx.p
    if p > CHI_TABLE_CAP:
        raise ValueError(f"chi table capped at p <= {CHI_TABLE_CAP}")
    t = [-1] * p
    t[0] = 0
    for x in range(1, ctx.half + 1):
        t[x * x % p] = 1
    return t
