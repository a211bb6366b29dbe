"""Exhaustive and sampled censuses of quadratic triples (a, b, c).

Every triple in F_p^* x F_p x F_p is classified by the square scan; Stable
triples contribute their collision index t_f to a histogram, and the
extremes are compared against p^(3/4) (the proved scaling) and p^(1/2)
(the Birthday heuristic).  Work is chunked over the linearized triple
index i = ((a-1) p + b) p + c with an order-independent merge, so reports
are identical for any worker count; sampling uses a seeded xorshift64*
generator with rejection, so sampled reports are reproducible from the
seed alone.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from ._par import map_chunks, split_ranges
from ._version import __version__
from .errors import BudgetExceeded
from .ff import FieldCtx, chi_table, new_field

DEFAULT_TRIPLE_BUDGET = 10**9

#: Linearized-triple row: (a, b, c, verdict, witness_index, mu, lam, s, t_f,
#: orbit_size); shape fields are None unless the verdict is Stable.
CensusRow = tuple

_VERDICT_NAMES = ("Stable", "NotStable", "Indeterminate")

_tables_cache: dict[int, tuple[list[int], list[int]]] = {}


def _tables(p: int) -> tuple[list[int], list[int]]:
    cached = _tables_cache.get(p)
    if cached is None:
        chi = chi_table(FieldCtx(p))
        inv = [0] * p
        for x in range(1, p):
            inv[x] = pow(x, p - 2, p)
        cached = (chi, inv)
        _tables_cache[p] = cached
    return cached


@dataclass
class _Partial:
    stable: int = 0
    indeterminate: int = 0
    not_stable: int = 0
    max_tf: int = 0
    argmax_idx: int | None = None
    argmax_triple: tuple[int, int, int] | None = None
    hist: dict[int, int] = field(default_factory=dict)
    indet_triples: list[tuple[int, int, int]] = field(default_factory=list)
    rows: list[CensusRow] | None = None


def _scan_triples(p: int, indices: Iterable[int], base_pos: int, want_rows: bool) -> _Partial:
    chi, inv = _tables(p)
    p2 = p * p
    out = _Partial(rows=[] if want_rows else None)
    hist = out.hist
    pos = base_pos
    for i in indices:
        a = 1 + i // p2
        r = i % p2
        b = r // p
        c = r % p
        gamma = (p - b) * inv[2 * a % p] % p
        e1 = ((a * gamma + b) * gamma + c) % p
        adj = (p - e1) % p
        verdict = witness = None
        shape = None
        unresolved = False
        if chi[adj] >= 0:
            if chi[adj * inv[a] % p] >= 0:
                verdict, witness = 1, 1
            else:
                unresolved = True
        if verdict is None:
            seen = {e1: 1}
            x = e1
            n = 1
            while True:
                n += 1
                x = ((a * x + b) * x + c) % p
                s = seen.get(x)
                if s is not None:
                    t_f = n
                    if s == 1 and chi[e1] >= 0:
                        verdict, witness = 1, t_f
                    elif unresolved:
                        verdict, witness = 2, 1
                    else:
                        verdict = 0
                        mu = (0 if gamma in seen else 1) if s == 1 else s
                        shape = (mu, t_f - s, s, t_f, t_f - 1 if s == 1 else t_f - 2)
                    break
                if chi[x] >= 0:
                    verdict, witness = 1, n
                    break
                seen[x] = n
        if verdict == 0:
            out.stable += 1
            t_f = shape[3]
            hist[t_f] = hist.get(t_f, 0) + 1
            if t_f > out.max_tf:
                out.max_tf = t_f
                out.argmax_idx = pos
                out.argmax_triple = (a, b, c)
        elif verdict == 1:
            out.not_stable += 1
        else:
            out.indeterminate += 1
            out.indet_triples.append((a, b, c))
        if want_rows:
            mu = lam = s_ = tf_ = osz = None
            if shape is not None:
                mu, lam, s_, tf_, osz = shape
            out.rows.append((a, b, c, _VERDICT_NAMES[verdict], witness, mu, lam, s_, tf_, osz))
        pos += 1
    return out


def _exhaustive_chunk(args: tuple[int, int, int, bool]) -> _Partial:
    p, lo, hi, want_rows = args
    return _scan_triples(p, range(lo, hi), lo, want_rows)


def _sample_chunk(args: tuple[int, tuple[int, ...], int, bool]) -> _Partial:
    p, indices, base_pos, want_rows = args
    return _scan_triples(p, indices, base_pos, want_rows)


def _merge(parts: Sequence[_Partial]) -> _Partial:
    out = _Partial(rows=None)
    for q in parts:
        out.stable += q.stable
        out.indeterminate += q.indeterminate
        out.not_stable += q.not_stable
        if q.argmax_idx is not None and (
            q.max_tf > out.max_tf
            or (q.max_tf == out.max_tf and (out.argmax_idx is None or q.argmax_idx < out.argmax_idx))
        ):
            out.max_tf = q.max_tf
            out.argmax_idx = q.argmax_idx
            out.argmax_triple = q.argmax_triple
        for k, v in q.hist.items():
            out.hist[k] = out.hist.get(k, 0) + v
        out.indet_triples.extend(q.indet_triples)
    return out


class Xorshift64Star:
    """xorshift64* with the standard multiplier; 64-bit state, never zero."""

    MASK = (1 << 64) - 1
    MULT = 0x2545F4914F6CDD1D

    def __init__(self, seed: int):
        self.state = seed & self.MASK
        if self.state == 0:
            self.state = 0x9E3779B97F4A7C15

    def next_u64(self) -> int:
        x = self.state
        x ^= x >> 12
        x = (x ^ (x << 25)) & self.MASK
        x ^= x >> 27
        self.state = x
        return (x * self.MULT) & self.MASK


def sample_indices(domain: int, n: int, seed: int) -> list[int]:
    """n uniform draws from range(domain), with replacement, bias-free."""
    rng = Xorshift64Star(seed)
    limit = (1 << 64) - ((1 << 64) % domain)
    out = []
    while len(out) < n:
        r = rng.next_u64()
        if r < limit:
            out.append(r % domain)
    return out


@dataclass
class CensusReport:
    """Aggregate classification of a (sub)space of quadratic triples."""

    p: int
    mode: str  # "exhaustive" or "sample"
    sample_size: int | None
    seed: int | None
    total: int
    stable_count: int
    indeterminate_count: int
    not_stable_count: int
    max_tf: int
    argmax_f: tuple[int, int, int] | None
    tf_histogram: dict[int, int]
    ratio_34: float
    ratio_12: float
    indeterminate_triples: list[tuple[int, int, int]]
    elapsed: float

    def to_json_dict(self, include_timing: bool = True) -> dict:
        doc = {
            "version": __version__,
            "p": self.p,
            "mode": self.mode,
            "sample_size": self.sample_size,
            "seed": self.seed,
            "total": self.total,
            "stable_count": self.stable_count,
            "indeterminate_count": self.indeterminate_count,
            "not_stable_count": self.not_stable_count,
            "stable_fraction": self.stable_count / self.total,
            "max_tf": self.max_tf,
            "argmax_f": list(self.argmax_f) if self.argmax_f else None,
            "tf_histogram": {str(k): self.tf_histogram[k] for k in sorted(self.tf_histogram)},
            "ratio_34": self.ratio_34,
            "ratio_12": self.ratio_12,
            "indeterminate_triples": [list(t) for t in self.indeterminate_triples],
        }
        if include_timing:
            doc["elapsed"] = self.elapsed
        return doc


def run_census(
    ctx: FieldCtx,
    mode: str = "exhaustive",
    sample_size: int | None = None,
    seed: int | None = None,
    workers: int = 1,
    budget: int = DEFAULT_TRIPLE_BUDGET,
    row_sink: Callable[[list[CensusRow]], None] | None = None,
) -> CensusReport:
    """Classify triples over F_p and aggregate the result.

    Exhaustive mode scans all (p-1) p^2 triples; sample mode draws
    sample_size triples with replacement from the seeded generator.  When
    row_sink is given it receives per-triple rows in scan order, chunk by
    chunk.  The report is independent of workers and chunking.
    """
    p = ctx.p
    domain = (p - 1) * p * p
    want_rows = row_sink is not None
    started = time.perf_counter()
    if mode == "exhaustive":
        if domain > budget:
            raise BudgetExceeded(f"exhaustive census needs {domain} triples, budget is {budget}")
        total = domain
        chunks = [(p, lo, hi, want_rows) for lo, hi in split_ranges(domain, max(workers, 1) * 4)]
        parts = map_chunks(_exhaustive_chunk, chunks, workers)
        sample_size = None
        seed = None
    elif mode == "sample":
        if not sample_size or sample_size < 1:
            raise ValueError("sample mode requires a positive sample_size")
        if sample_size > budget:
            raise BudgetExceeded(f"sample of {sample_size} exceeds budget {budget}")
        seed = 1 if seed is None else seed
        total = sample_size
        indices = sample_indices(domain, sample_size, seed)
        bounds = split_ranges(sample_size, max(workers, 1) * 4)
        chunks = [(p, tuple(indices[lo:hi]), lo, want_rows) for lo, hi in bounds]
        parts = map_chunks(_sample_chunk, chunks, workers)
    else:
        raise ValueError(f"unknown census mode {mode!r}")
    if want_rows:
        for q in parts:
            row_sink(q.rows or [])
    merged = _merge(parts)
    elapsed = time.perf_counter() - started
    return CensusReport(
        p=p,
        mode=mode,
        sample_size=sample_size,
        seed=seed,
        total=total,
        stable_count=merged.stable,
        indeterminate_count=merged.indeterminate,
        not_stable_count=merged.not_stable,
        max_tf=merged.max_tf,
        argmax_f=merged.argmax_triple,
        tf_histogram=dict(sorted(merged.hist.items())),
        ratio_34=merged.max_tf / p**0.75,
        ratio_12=merged.max_tf / p**0.5,
        indeterminate_triples=merged.indet_triples,
        elapsed=elapsed,
    )


# ---------------------------------------------------------------------------
# Scaling experiment across primes


@dataclass(frozen=True)
class ScalingRow:
    p: int
    stable_count: int
    max_tf: int
    ratio_34: float
    ratio_12: float


@dataclass
class ScalingTable:
    """One census summary per prime, with the p^(3/4) bound check."""

    rows: list[ScalingRow]
    ratio_34_bound: float
    violations: list[int]  # primes whose max_tf exceeds bound * p^(3/4)
    max_ratio_12: float

    def csv_text(self) -> str:
        lines = ["p,stable_count,max_tf,ratio_34,ratio_12"]
        for r in self.rows:
            lines.append(f"{r.p},{r.stable_count},{r.max_tf},{r.ratio_34!r},{r.ratio_12!r}")
        return "\n".join(lines) + "\n"


def parse_scaling_csv(text: str) -> list[ScalingRow]:
    rows = []
    lines = [ln for ln in text.splitlines() if ln.strip()]
    for ln in lines[1:]:
        p, sc, mt, r34, r12 = ln.split(",")
        rows.append(ScalingRow(int(p), int(sc), int(mt), float(r34), float(r12)))
    return rows


def _exceeds_bound(max_tf: int, p: int, bound: float) -> bool:
    # max_tf > bound * p^(3/4), checked on integers when bound is integral
    if float(bound).is_integer():
        c = int(bound)
        return max_tf**4 > c**4 * p**3
    return max_tf > bound * p**0.75


def scaling_table(
    primes: Sequence[int],
    workers: int = 1,
    ratio_34_bound: float = 10.0,
    budget: int = DEFAULT_TRIPLE_BUDGET,
) -> ScalingTable:
    """Exhaustive census per prime, summarized one row each.

    A row whose max_tf exceeds ratio_34_bound * p^(3/4) lands in
    `violations`; that is a reportable finding, never silently dropped.
    """
    rows = []
    violations = []
    max_r12 = 0.0
    for p in primes:
        ctx = new_field(p)
        rep = run_census(ctx, mode="exhaustive", workers=workers, budget=budget)
        rows.append(ScalingRow(p, rep.stable_count, rep.max_tf, rep.ratio_34, rep.ratio_12))
        max_r12 = max(max_r12, rep.ratio_12)
        if _exceeds_bound(rep.max_tf, p, ratio_34_bound):
            violations.append(p)
    return ScalingTable(rows=rows, ratio_34_bound=ratio_34_bound, violations=violations, max_ratio_12=max_r12)


def primes_in_range(lo: int, hi: int) -> list[int]:
    """Odd primes in [lo, hi], by sieve."""
    if hi < 3:
        return []
    sieve = bytearray([1]) * (hi + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, int(hi**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = b"\x00" * len(sieve[i * i :: i])
    return [n for n in range(max(lo, 3), hi + 1) if sieve[n]]
