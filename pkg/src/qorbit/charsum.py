"""Character-sum experiments over iterate values and coefficient triples.

Two families of scans, both exact integer arithmetic end to end:

* Over points: T_p(K) is the set of x in F_p whose first K iterate values
  f^(1)(x), ..., f^(K)(x) are all non-squares.  Its size satisfies the
  product identity #T = 2^-K * sum_x prod_k (1 - chi(f^(k)(x))), and
  expanding that product turns the count into 2^K - 1 signed sums
  sum_x chi(prod_j f^(k_j)(x)) over nonempty index subsets, each governed
  by the Weil bound |sum| <= (deg - 1) sqrt(p) when the product polynomial
  is not a perfect square (true for stable f, whose iterates are distinct
  irreducibles).  For stable f, t_f - 1 <= #T_p(K) because the first
  t_f - 1 critical values are distinct members of T_p(K).

* Over triples: W_p(K) collects (a, b, c) in F_p^* x F_p x F_p whose first
  K critical-orbit values are all non-squares, an upper set for the stable
  count S_p.  The analogous triple sums are recorded together with the
  ratio |sum| / p^(5/2), evidence for a conjectured Weil-type bound that
  is never asserted.

Square-root comparisons in reports are rounded toward safety; every
inequality that matters is also checked exactly on squared integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ._par import map_chunks, split_ranges
from .dynamics import QuadPoly, orbit_shape
from .errors import DomainTooLarge, NotStableInput, WindowTooLarge
from .ff import CHI_TABLE_CAP, FieldCtx, chi_table
from .stability import Verdict, stability_test

#: F_k(a,b,c) is the k-th critical-orbit value, i.e. f^(k + offset)(gamma)
#: with this offset; the orbit starts at iterate index 2, hence offset 1.
#: Scans accept an explicit offset so the convention stays adjustable.
ORBIT_INDEX_OFFSET = 1

TSET_MAX_K = 30
SUBSET_DEGREE_CAP = 1 << 30
TRIPLE_SCAN_MAX_P = 199


@dataclass(frozen=True)
class SubsetSpec:
    """Strictly increasing window indices 1 <= k_1 < ... < k_nu."""

    indices: tuple[int, ...]

    def __post_init__(self) -> None:
        ks = self.indices
        if not ks:
            raise WindowTooLarge("subset must contain at least one index")
        if any(k < 1 for k in ks) or any(x >= y for x, y in zip(ks, ks[1:])):
            raise WindowTooLarge(f"indices must be strictly increasing and >= 1: {ks}")

    @classmethod
    def parse(cls, text: str) -> "SubsetSpec":
        try:
            ks = tuple(int(part) for part in text.split(","))
        except ValueError as exc:
            raise WindowTooLarge(f"cannot parse subset {text!r}") from exc
        return cls(ks)

    @property
    def degree(self) -> int:
        """Degree of prod_j f^(k_j), namely sum_j 2^(k_j)."""
        return sum(1 << k for k in self.indices)


def _sqrt_up(n: int) -> float:
    return math.nextafter(math.sqrt(n), math.inf)


def _chi_lookup(p: int):
    if p <= CHI_TABLE_CAP:
        return chi_table(FieldCtx(p)).__getitem__
    return FieldCtx(p).chi


# ---------------------------------------------------------------------------
# T_p(K) over points


@dataclass(frozen=True)
class TsetReport:
    """Direct count of T_p(K) next to the product-identity evaluation."""

    p: int
    K: int
    direct_count: int
    identity_numerator: int
    identity_count: int | None  # numerator / 2^K when divisible, else None
    zero_terms: int  # chi = 0 factors met during the product scan
    q_over_2k: Fraction
    weil_error_budget: float
    within_weil_budget: bool

    def to_record(self) -> dict:
        return {
            "p": self.p,
            "K": self.K,
            "direct_count": self.direct_count,
            "identity_numerator": self.identity_numerator,
            "identity_count": self.identity_count,
            "zero_terms": self.zero_terms,
            "q_over_2k": str(self.q_over_2k),
            "weil_budget": self.weil_error_budget,
            "within_weil_budget": self.within_weil_budget,
        }


def _tset_chunk(args: tuple[int, int, int, int, int, int, int]) -> tuple[int, int, int]:
    p, a, b, c, K, lo, hi = args
    chi = _chi_lookup(p)
    direct = 0
    numerator = 0
    zeros = 0
    for x in range(lo, hi):
        y = x
        exp = 0  # count of chi = -1 factors; each contributes a factor 2
        dead = False
        for _ in range(K):
            y = ((a * y + b) * y + c) % p
            v = chi(y)
            if v == 1:
                dead = True
                break
            if v == 0:
                zeros += 1
            else:
                exp += 1
        if not dead:
            numerator += 1 << exp
            if exp == K:
                direct += 1
    return direct, numerator, zeros


def tset_size(f: QuadPoly, K: int, workers: int = 1) -> TsetReport:
    """Count T_p(K) by direct scan and by the product identity, in one pass.

    Per point the scan applies f up to K times (never symbolically); the
    direct count requires chi = -1 at every step, while the identity
    accumulates prod (1 - chi) exactly, reporting the raw numerator since
    divisibility by 2^K can fail once chi = 0 terms appear.
    """
    if not 1 <= K <= TSET_MAX_K:
        raise WindowTooLarge(f"window K must be in [1, {TSET_MAX_K}], got {K}")
    p = f.ctx.p
    chunks = [(p, f.a, f.b, f.c, K, lo, hi) for lo, hi in split_ranges(p, max(workers, 1) * 4)]
    parts = map_chunks(_tset_chunk, chunks, workers)
    direct = sum(t[0] for t in parts)
    numerator = sum(t[1] for t in parts)
    zeros = sum(t[2] for t in parts)
    two_k = 1 << K
    # sum over nonempty subsets of (degree - 1) collapses to (2^K - 1)^2
    budget_scaled = (two_k - 1) ** 2
    within = (two_k * direct - p) ** 2 <= budget_scaled**2 * p
    return TsetReport(
        p=p,
        K=K,
        direct_count=direct,
        identity_numerator=numerator,
        identity_count=numerator // two_k if numerator % two_k == 0 else None,
        zero_terms=zeros,
        q_over_2k=Fraction(p, two_k),
        weil_error_budget=budget_scaled * _sqrt_up(p) / two_k,
        within_weil_budget=within,
    )


# ---------------------------------------------------------------------------
# Weil sums over points


@dataclass(frozen=True)
class WeilSumReport:
    """One signed sum sum_x chi(prod_j f^(k_j)(x)) with its Weil budget."""

    p: int
    indices: tuple[int, ...]
    sum: int
    degree: int
    weil_budget: float
    bound_holds: bool  # exact check sum^2 <= (degree - 1)^2 * p

    def to_record(self) -> dict:
        return {
            "p": self.p,
            "subset": list(self.indices),
            "sum": self.sum,
            "degree": self.degree,
            "weil_budget": self.weil_budget,
            "bound_holds": self.bound_holds,
        }


def _weil_chunk(args: tuple[int, int, int, int, tuple[int, ...], int, int]) -> int:
    p, a, b, c, ks, lo, hi = args
    chi = _chi_lookup(p)
    kmax = ks[-1]
    wanted = frozenset(ks)
    total = 0
    for x in range(lo, hi):
        y = x
        prod = 1
        for k in range(1, kmax + 1):
            y = ((a * y + b) * y + c) % p
            if k in wanted:
                prod = prod * y % p
        total += chi(prod)
    return total


def weil_sum(f: QuadPoly, subset: SubsetSpec, workers: int = 1) -> WeilSumReport:
    """Evaluate sum_x chi(prod_j f^(k_j)(x)) over all x in F_p.

    For stable f the product polynomial has distinct irreducible factors,
    so |sum| <= (D - 1) sqrt(p) with D = sum_j 2^(k_j); the report carries
    that budget and an exact squared-integer check of the inequality.
    """
    degree = subset.degree
    if degree > SUBSET_DEGREE_CAP:
        raise WindowTooLarge(f"subset degree {degree} exceeds cap {SUBSET_DEGREE_CAP}")
    p = f.ctx.p
    chunks = [
        (p, f.a, f.b, f.c, subset.indices, lo, hi)
        for lo, hi in split_ranges(p, max(workers, 1) * 4)
    ]
    total = sum(map_chunks(_weil_chunk, chunks, workers))
    return WeilSumReport(
        p=p,
        indices=subset.indices,
        sum=total,
        degree=degree,
        weil_budget=(degree - 1) * _sqrt_up(p),
        bound_holds=total * total <= (degree - 1) ** 2 * p,
    )


# ---------------------------------------------------------------------------
# t_f against #T_p(K*)


def k_star(p: int) -> int:
    """Largest K >= 1 with 2^K <= p^(1/4); clamps to 1 for p < 16."""
    k = 1
    while 1 << (4 * (k + 1)) <= p:
        k += 1
    return k


@dataclass(frozen=True)
class TfBoundReport:
    """t_f - 1 <= #T_p(K*) together with the membership fact behind it."""

    p: int
    a: int
    b: int
    c: int
    t_f: int
    k_star: int
    tset_count: int
    inequality_holds: bool
    membership_ok: bool
    first_violation: tuple[int, int] | None  # (orbit index n, window index k)

    def to_record(self) -> dict:
        return {
            "p": self.p,
            "a": self.a,
            "b": self.b,
            "c": self.c,
            "t_f": self.t_f,
            "k_star": self.k_star,
            "tset_count": self.tset_count,
            "inequality_holds": self.inequality_holds,
            "membership_ok": self.membership_ok,
            "first_violation": list(self.first_violation) if self.first_violation else None,
        }


def verify_tf_bound(f: QuadPoly, workers: int = 1) -> TfBoundReport:
    """Check t_f - 1 <= #T_p(K*) for a stable f, and the membership fact
    that every critical value f^(n)(gamma), n < t_f, lies in T_p(K*).

    Raises NotStableInput unless the square scan returns Stable.
    """
    verdict = stability_test(f)
    if verdict.status is not Verdict.STABLE:
        raise NotStableInput(f"verify_tf_bound requires a Stable verdict, got {verdict.status.value}")
    p = f.ctx.p
    chi = _chi_lookup(p) if p <= CHI_TABLE_CAP else f.ctx.chi
    t_f = orbit_shape(f).t_f
    ks = k_star(p)
    report = tset_size(f, ks, workers=workers)
    membership_ok = True
    first_violation = None
    y = f.gamma
    for n in range(1, t_f):
        y = f(y)
        z = y
        for k in range(1, ks + 1):
            z = f(z)
            if chi(z) != -1:
                membership_ok = False
                if first_violation is None:
                    first_violation = (n, k)
                break
        if not membership_ok:
            break
    return TfBoundReport(
        p=p,
        a=f.a,
        b=f.b,
        c=f.c,
        t_f=t_f,
        k_star=ks,
        tset_count=report.direct_count,
        inequality_holds=t_f - 1 <= report.direct_count,
        membership_ok=membership_ok,
        first_violation=first_violation,
    )


# ---------------------------------------------------------------------------
# W_p(K) and triple sums over coefficient space


def triple_domain_size(ctx: FieldCtx) -> int:
    """Size of F_p^* x F_p x F_p, the value of the trivial (empty) sum."""
    return (ctx.p - 1) * ctx.p * ctx.p


def _check_triple_domain(ctx: FieldCtx) -> None:
    if ctx.p > TRIPLE_SCAN_MAX_P:
        raise DomainTooLarge(
            f"triple scans are capped at p <= {TRIPLE_SCAN_MAX_P}, got {ctx.p}"
        )


def _wset_chunk(args: tuple[int, int, int, int, int]) -> int:
    p, K, offset, lo, hi = args
    chi = _chi_lookup(p)
    inv = [0] * p
    for x in range(1, p):
        inv[x] = pow(x, p - 2, p)
    p2 = p * p
    count = 0
    for i in range(lo, hi):
        a = 1 + i // p2
        r = i % p2
        b = r // p
        c = r % p
        y = (p - b) * inv[2 * a % p] % p  # gamma
        for _ in range(offset):
            y = ((a * y + b) * y + c) % p
        ok = True
        for _ in range(K):
            y = ((a * y + b) * y + c) % p
            if chi(y) != -1:
                ok = False
                break
        if ok:
            count += 1
    return count


def wset_size(ctx: FieldCtx, K: int, offset: int = ORBIT_INDEX_OFFSET, workers: int = 1) -> int:
    """Count triples whose first K critical-orbit values are all non-squares.

    Evaluates F_k(a, b, c) = f^(k + offset)(gamma) pointwise per triple,
    never as symbolic rational functions.
    """
    if not 1 <= K <= TSET_MAX_K:
        raise WindowTooLarge(f"window K must be in [1, {TSET_MAX_K}], got {K}")
    if offset < 0:
        raise ValueError("orbit index offset must be nonnegative")
    _check_triple_domain(ctx)
    total = triple_domain_size(ctx)
    chunks = [(ctx.p, K, offset, lo, hi) for lo, hi in split_ranges(total, max(workers, 1) * 4)]
    return sum(map_chunks(_wset_chunk, chunks, workers))


@dataclass(frozen=True)
class TripleSumReport:
    """sum over (a,b,c) of chi(prod_j F_(k_j)(a,b,c)), with the p^(5/2) ratio."""

    p: int
    indices: tuple[int, ...]
    sum: int
    ratio_q52: float

    def to_record(self) -> dict:
        return {
            "p": self.p,
            "subset": list(self.indices),
            "sum": self.sum,
            "ratio_q52": self.ratio_q52,
        }


def _triple_chunk(args: tuple[int, tuple[int, ...], int, int, int]) -> int:
    p, ks, offset, lo, hi = args
    chi = _chi_lookup(p)
    inv = [0] * p
    for x in range(1, p):
        inv[x] = pow(x, p - 2, p)
    p2 = p * p
    kmax = ks[-1]
    wanted = frozenset(ks)
    total = 0
    for i in range(lo, hi):
        a = 1 + i // p2
        r = i % p2
        b = r // p
        c = r % p
        y = (p - b) * inv[2 * a % p] % p
        for _ in range(offset):
            y = ((a * y + b) * y + c) % p
        prod = 1
        for k in range(1, kmax + 1):
            y = ((a * y + b) * y + c) % p
            if k in wanted:
                prod = prod * y % p
        total += chi(prod)
    return total


def triple_charsum(
    ctx: FieldCtx,
    subset: SubsetSpec,
    offset: int = ORBIT_INDEX_OFFSET,
    workers: int = 1,
) -> TripleSumReport:
    """Evaluate the triple-space analogue of a Weil sum for one subset.

    The ratio |sum| / p^(5/2) is recorded as evidence only; no bound is
    asserted at this level.
    """
    if offset < 0:
        raise ValueError("orbit index offset must be nonnegative")
    _check_triple_domain(ctx)
    total_triples = triple_domain_size(ctx)
    chunks = [
        (ctx.p, subset.indices, offset, lo, hi)
        for lo, hi in split_ranges(total_triples, max(workers, 1) * 4)
    ]
    total = sum(map_chunks(_triple_chunk, chunks, workers))
    return TripleSumReport(
        p=ctx.p,
        indices=subset.indices,
        sum=total,
        ratio_q52=abs(total) / ctx.p ** 2.5,
    )
