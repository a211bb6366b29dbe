"""Square-scan stability test for quadratic maps, with a polynomial oracle.

A quadratic f is stable when every iterate f^(n) is irreducible.  Two facts
drive the fast test: f is stable if the adjusted orbit {-f(gamma)} united
with the critical orbit contains no squares, and conversely a stable f has
no squares in the critical orbit.  The gap between the two directions is a
square sitting only at the adjusted element -f(gamma); completing the
square (f = a(X - gamma)^2 + f(gamma)) closes it exactly at level one,
since f has a root iff -f(gamma)/a is a square.  When even that is
inconclusive the verdict is Indeterminate rather than a guess.

Zero counts as a square throughout, so an orbit hitting 0 is NotStable.

The scan walks the adjusted orbit lazily, one character evaluation per
element, stopping at the first square or at orbit closure; total character
work is at most t_f evaluations.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .dynamics import QuadPoly
from .errors import IterateCapExceeded
from .polyarith import DEFAULT_ITERATE_CAP, compose_iterate, is_irreducible


class Verdict(str, enum.Enum):
    STABLE = "Stable"
    NOT_STABLE = "NotStable"
    INDETERMINATE = "Indeterminate"

    def __str__(self) -> str:  # pragma: no cover - cosmetic
        return self.value


@dataclass(frozen=True)
class StabilityVerdict:
    """Outcome of the adjusted-orbit scan.

    witness_index 1 refers to the adjusted element -f(gamma); an index
    n >= 2 means f^(n)(gamma) is a square.  scanned counts the adjusted-
    orbit elements whose character was evaluated before the scan stopped.
    """

    status: Verdict
    witness_index: int | None
    witness_value: int | None
    scanned: int


@dataclass(frozen=True)
class OracleReport:
    """Result of testing iterates f^(1)..f^(depth) for irreducibility."""

    depth: int
    reducible_at: int | None

    @property
    def all_irreducible(self) -> bool:
        return self.reducible_at is None


def stability_test(f: QuadPoly) -> StabilityVerdict:
    """Classify f as Stable, NotStable, or Indeterminate by scanning squares.

    The scan checks -f(gamma) first, then the orbit values f^(n)(gamma) for
    n = 2, 3, ... while a visited-value table watches for closure.  A square
    at an orbit index is a NotStable witness; a square only at the adjusted
    element is resolved through the level-one root criterion where possible,
    otherwise the verdict is Indeterminate.
    """
    ctx = f.ctx
    p = ctx.p
    chi = ctx.chi
    e1 = f(f.gamma)
    adj = (p - e1) % p
    scanned = 1
    unresolved = False
    if chi(adj) >= 0:
        if chi(adj * pow(f.a, p - 2, p) % p) >= 0:
            return StabilityVerdict(Verdict.NOT_STABLE, 1, adj, scanned)
        unresolved = True
    seen = {e1: 1}
    x = e1
    n = 1
    while True:
        n += 1
        x = f(x)
        first = seen.get(x)
        if first is not None:
            # Orbit closed at f^(n) = f^(first); when the collision source
            # is index 1, the value f(gamma) itself belongs to the orbit.
            if first == 1:
                scanned += 1
                if chi(e1) >= 0:
                    return StabilityVerdict(Verdict.NOT_STABLE, n, e1, scanned)
            if unresolved:
                return StabilityVerdict(Verdict.INDETERMINATE, 1, adj, scanned)
            return StabilityVerdict(Verdict.STABLE, None, None, scanned)
        scanned += 1
        if chi(x) >= 0:
            return StabilityVerdict(Verdict.NOT_STABLE, n, x, scanned)
        seen[x] = n


def stability_oracle(f: QuadPoly, depth: int, cap: int = DEFAULT_ITERATE_CAP) -> OracleReport:
    """Test f^(1)..f^(depth) symbolically; report the first reducible index.

    One-sided: a clean report up to depth does not prove stability.
    """
    if depth < 1:
        raise ValueError("oracle depth must be positive")
    if depth > cap:
        raise IterateCapExceeded(f"oracle depth {depth} exceeds iterate cap {cap}")
    for n in range(1, depth + 1):
        if not is_irreducible(compose_iterate(f, n, cap), f.ctx):
            return OracleReport(depth, n)
    return OracleReport(depth, None)
