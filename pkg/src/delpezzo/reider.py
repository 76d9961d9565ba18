"""Brute-force verifier for the adjoint-style numeric obstruction window.

Given L and k, put M = L - K.  When M is nef with M.M >= 4k + 5, failure
of k-very ampleness forces an effective divisor D inside the window

    M.D - k - 1 <= D.D  <  M.D / 2  <  k + 1

(the halving is compared in integers: ``2*D.D < M.D`` and
``M.D < 2k + 2``).  This module enumerates every effective class in the
window over a finite box and cross-checks the result against the
inequality-based k-very-ampleness verdicts.

Box derivation, recorded in each outcome (valid for nef L):

  (i)   M.D = L.D + (-K).D >= (-K).D for effective D, and the window
        caps M.D at 2k + 1, so 1 <= (-K).D <= 2k + 1;
  (ii)  6*(-K) - l is nef (asserted at startup for every rank), hence
        alpha := D.l <= 6 * (-K).D <= 6 * (2k + 1);
  (iii) l - e_i is nef, hence beta_i <= alpha;
  (iv)  beta_i < 0 forces e_i as a component with multiplicity -beta_i,
        so (-K).D >= -beta_i and beta_i >= -(2k + 1);
  (v)   the window itself pins 2*D.D < M.D < 2k + 2 and
        D.D >= M.D - k - 1 >= -k, i.e. -k <= D.D <= k.

The (alpha; beta) scan with these prunes depends only on (r, k), so it
runs once per pair and is cached; each call then filters the cached
candidates through the exact window for its own M.  For non-nef L the
bounds in (i) and (v) that use L.D >= 0 are not theorems, so the scan is
best-effort outside the nef cone (the outcome says which box was used).
"""

from __future__ import annotations

import itertools
import math as _math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .lattice import PicardClass, SurfaceContext, degree, intersect, line, point_class
from .enumeration import surface_context
from .positivity import (
    EXCEPTION_NONE,
    EffectivityCertificate,
    exception_flag,
    is_effective,
    is_nef,
    minimum_pairing,
)

#: The scan box grows like (6*(2k+1)) * (2k+2+6*(2k+1))**r before pruning;
#: sweeps refuse above this k and single searches emit a warning.
DESK_SCALE_K = 2

#: Largest exhaustive sweep, measured in descending-coordinate orbit
#: representatives before pruning; bigger requests must sample instead.
MAX_EXHAUSTIVE_REPRESENTATIVES = 2 * 10**6


@lru_cache(maxsize=None)
def _assert_box_premises(r: int) -> bool:
    """The box derivation needs 6*(-K) - l and every l - e_i nef; refuse to
    search if that ever failed."""
    ctx = surface_context(r)
    guard = 6 * ctx.anticanonical - line(r)
    if not is_nef(guard, ctx):
        raise RuntimeError(f"box premise broken at rank {r}: {guard} is not nef")
    for i in range(1, r + 1):
        if not is_nef(line(r) - point_class(r, i), ctx):
            raise RuntimeError(f"box premise broken at rank {r}: l - e_{i} is not nef")
    return True


def window_applicable(L: PicardClass, k: int, ctx: SurfaceContext) -> tuple[bool, PicardClass, int]:
    """M = L - K; the window argument applies iff M is nef and M.M >= 4k+5."""
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    M = L - ctx.canonical
    m2 = degree(M)
    return (is_nef(M, ctx) and m2 >= 4 * k + 5), M, m2


@dataclass(frozen=True)
class ObstructionWitness:
    """An effective class D inside the numeric window for a given (L, k)."""

    D: PicardClass
    MD: int
    D_squared: int
    window: tuple[tuple[int, str, int], ...]
    effectivity_certificate: EffectivityCertificate

    def __post_init__(self):
        for lhs, op, rhs in self.window:
            assert (lhs <= rhs) if op == "<=" else (lhs < rhs), self.window
        assert self.effectivity_certificate.replay() == self.D

    def as_dict(self) -> dict:
        return {
            "D": self.D.render(),
            "MD": self.MD,
            "D_squared": self.D_squared,
            "window": [[lhs, op, rhs] for lhs, op, rhs in self.window],
            "certificate": {
                "subtracted": [[c.render(), m] for c, m in self.effectivity_certificate.subtracted],
                "terminal": self.effectivity_certificate.terminal.render(),
            },
        }


@dataclass(frozen=True)
class SearchOutcome:
    subject: PicardClass
    k: int
    applicable: bool
    reason: str | None
    M: PicardClass
    M_squared: int
    witnesses: tuple[ObstructionWitness, ...]
    search_bounds: dict
    nodes_visited: int

    def __post_init__(self):
        if not self.applicable:
            assert not self.witnesses and self.reason

    def as_dict(self) -> dict:
        return {
            "subject": self.subject.render(),
            "r": self.subject.r,
            "k": self.k,
            "applicable": self.applicable,
            "reason": self.reason,
            "M": self.M.render(),
            "M_squared": self.M_squared,
            "witnesses": [w.as_dict() for w in self.witnesses],
            "search_bounds": self.search_bounds,
            "nodes_visited": self.nodes_visited,
        }


@dataclass(frozen=True)
class _CandidateTable:
    """Every effective class in the (r, k) box that could sit in a window:
    (-K).D in [1, 2k+1] and -k <= D.D <= k."""

    classes: tuple[PicardClass, ...]
    coeffs: np.ndarray  # (N, r+1) rows (alpha, beta_1..beta_r)
    squares: np.ndarray  # (N,) self-intersections
    dfs_nodes: int


def _scan_box_sorted(r: int, k: int):
    """Depth-first scan over alpha, then non-increasing beta vectors.

    The constraint system is symmetric in the beta coordinates, so one
    representative per permutation orbit suffices here; orbits are
    expanded after the per-orbit effectivity filter.  Prunes on partial
    sums: the final (-K).D = 3*alpha - sum(beta) must land in [1, 2k+1],
    sum(beta^2) may not exceed alpha^2 + k, and Cauchy-Schwarz must keep
    the residual sum reachable within the residual square budget.
    """
    alpha_max = 6 * (2 * k + 1)
    beta_min = -(2 * k + 1)
    nodes = 0
    hits = []
    for alpha in range(0, alpha_max + 1):
        sq_cap = alpha * alpha + k
        # sum(beta) must land in [3*alpha - (2k+1), 3*alpha - 1]
        lo_total = 3 * alpha - (2 * k + 1)
        hi_total = 3 * alpha - 1
        vec = []

        def rec(slots, hi, s_lo, s_hi, q_left):
            nonlocal nodes
            nodes += 1
            if slots == 0:
                if s_lo <= 0 <= s_hi:
                    d2 = alpha * alpha - sum(v * v for v in vec)
                    if -k <= d2 <= k:
                        hits.append((PicardClass(alpha, tuple(vec)), d2))
                return
            rest = slots - 1
            for v in range(hi, beta_min - 1, -1):  # non-increasing tail
                q2 = q_left - v * v
                lo2, hi2 = s_lo - v, s_hi - v
                if lo2 > rest * v:
                    break  # later entries are <= v; shrinking v only hurts
                if q2 < 0 or hi2 < rest * beta_min:
                    continue
                if lo2 > 0 and lo2 * lo2 > rest * q2:
                    continue
                if hi2 < 0 and hi2 * hi2 > rest * q2:
                    continue
                vec.append(v)
                rec(rest, v, lo2, hi2, q2)
                vec.pop()

        rec(r, alpha, lo_total, hi_total, sq_cap)
    return hits, nodes, {"alpha_max": alpha_max, "beta_min": beta_min}


@lru_cache(maxsize=None)
def _candidate_table(r: int, k: int) -> _CandidateTable:
    ctx = surface_context(r)
    _assert_box_premises(r)
    hits, nodes, _ = _scan_box_sorted(r, k)
    classes, rows, squares = [], [], []
    for rep, d2 in hits:
        # Effectivity is invariant under coordinate permutations (the
        # exceptional set is permutation-closed), so test the orbit once.
        if not is_effective(rep, ctx)[0]:
            continue
        for b in set(itertools.permutations(rep.b)):
            classes.append(PicardClass(rep.a, b))
            rows.append([rep.a, *b])
            squares.append(d2)
    order = sorted(range(len(classes)), key=lambda i: classes[i].sort_key())
    return _CandidateTable(
        classes=tuple(classes[i] for i in order),
        coeffs=np.array([rows[i] for i in order], dtype=np.int64).reshape(len(order), r + 1),
        squares=np.array([squares[i] for i in order], dtype=np.int64),
        dfs_nodes=nodes,
    )


def _window_mask(table: _CandidateTable, M: PicardClass, k: int) -> np.ndarray:
    m_row = np.array([M.a, *M.b], dtype=np.int64)
    md = table.coeffs[:, 0] * m_row[0] - table.coeffs[:, 1:] @ m_row[1:]
    d2 = table.squares
    return (md - k - 1 <= d2) & (2 * d2 < md) & (md < 2 * k + 2)


def _bounds_record(r: int, k: int, table: _CandidateTable) -> dict:
    return {
        "alpha_max": 6 * (2 * k + 1),
        "beta_min": -(2 * k + 1),
        "beta_max": "alpha",
        "anticanonical_degree_range": [1, 2 * k + 1],
        "d_squared_range": [-k, k],
        "effective_candidates": len(table.classes),
        "derivation": [
            "(i) nef L: M.D = L.D + (-K).D >= (-K).D >= 1 and M.D <= 2k+1",
            "(ii) 6*(-K) - l nef: alpha = D.l <= 6*(-K).D <= 6*(2k+1)",
            "(iii) l - e_i nef: beta_i <= alpha",
            "(iv) beta_i < 0 forces e_i^(-beta_i) as component: beta_i >= -(2k+1)",
            "(v) window: 2*D.D < M.D < 2k+2 and D.D >= M.D - k - 1 >= -k",
            "bounds (i) and (v) use L.D >= 0; outside the nef cone the scan is best-effort",
        ],
    }


def search_obstructions(L: PicardClass, k: int, ctx: SurfaceContext) -> SearchOutcome:
    """Enumerate every effective class in the window for (L, k).

    Not applicable (M not nef, or M.M < 4k+5) returns an empty outcome
    with the reason recorded.  Identical inputs always produce identical
    witness lists in identical (a, b) order.
    """
    applicable, M, m2 = window_applicable(L, k, ctx)
    if k > DESK_SCALE_K:
        warnings.warn(
            f"k = {k} is beyond the desk-scale envelope (k <= {DESK_SCALE_K}); "
            f"the scan box has alpha <= {6 * (2 * k + 1)} and may be slow",
            RuntimeWarning,
            stacklevel=2,
        )
    if not applicable:
        reason = f"M.M = {m2} < {4 * k + 5}" if is_nef(M, ctx) else f"M = {M} is not nef"
        return SearchOutcome(
            subject=L, k=k, applicable=False, reason=reason, M=M, M_squared=m2,
            witnesses=(), search_bounds={}, nodes_visited=0,
        )
    table = _candidate_table(ctx.r, k)
    mask = _window_mask(table, M, k)
    witnesses = []
    for i in np.flatnonzero(mask):
        D = table.classes[i]
        md = intersect(M, D)
        d2 = int(table.squares[i])
        effective, cert = is_effective(D, ctx)
        assert effective, f"candidate table let a non-effective class through: {D}"
        witnesses.append(
            ObstructionWitness(
                D=D,
                MD=md,
                D_squared=d2,
                window=((md - k - 1, "<=", d2), (2 * d2, "<", md), (md, "<", 2 * k + 2)),
                effectivity_certificate=cert,
            )
        )
    return SearchOutcome(
        subject=L, k=k, applicable=True, reason=None, M=M, M_squared=m2,
        witnesses=tuple(witnesses),
        search_bounds=_bounds_record(ctx.r, k, table),
        nodes_visited=len(table.classes),
    )


@dataclass(frozen=True)
class SweepViolation:
    subject: PicardClass
    kind: str
    detail: str

    def as_dict(self) -> dict:
        return {"subject": self.subject.render(), "kind": self.kind, "detail": self.detail}


@dataclass(frozen=True)
class SweepSummary:
    r: int
    k: int
    a_max: int
    sample: int | None
    seed: int | None
    scanned: int  # nef classes the loop actually ran on
    covered: int  # nef classes decided (orbit closure in exhaustive mode)
    applicable: int
    passing: int
    failing: int
    exceptions: int
    witness_total: int
    violations: tuple[SweepViolation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def as_dict(self) -> dict:
        return {
            "r": self.r,
            "k": self.k,
            "a_max": self.a_max,
            "sample": self.sample,
            "seed": self.seed,
            "scanned": self.scanned,
            "covered": self.covered,
            "applicable": self.applicable,
            "passing": self.passing,
            "failing": self.failing,
            "exceptions": self.exceptions,
            "witness_total": self.witness_total,
            "violations": [v.as_dict() for v in self.violations],
        }

    def render(self) -> str:
        mode = f"sample {self.sample} (seed {self.seed})" if self.sample else "exhaustive"
        lines = [
            f"sweep r={self.r} k={self.k} a<={self.a_max} [{mode}]",
            f"nef classes scanned: {self.scanned}",
            f"nef classes covered (orbit closure): {self.covered}",
            f"window applicable: {self.applicable}",
            f"k-very ample / failing the pairing test: {self.passing} / {self.failing}",
            f"exception classes (no assertion): {self.exceptions}",
            f"witnesses found: {self.witness_total}",
            f"violations: {len(self.violations)}",
        ]
        lines.extend(f"  VIOLATION {v.kind} at {v.subject}: {v.detail}" for v in self.violations)
        return "\n".join(lines)


def _nef_box_rows(r: int, a_max: int) -> tuple[np.ndarray, np.ndarray]:
    """Sorted representatives of all nef classes with 0 <= a <= a_max.

    A nef class has 0 <= b_i <= a and (for r >= 2) b_i + b_j <= a, which
    prunes the descending-coordinate scan hard.  Every sweep assertion is
    equivariant under coordinate permutations (the exceptional set is
    permutation-closed and the exception classes are symmetric), so one
    representative per orbit decides the whole orbit; the returned orbit
    sizes say how many classes each row covers.
    """
    from .positivity import minimum_pairing

    ctx = surface_context(r)
    fact_r = _math.factorial(r)
    rows, weights = [], []
    for a in range(0, a_max + 1):
        vec: list[int] = []

        def rec(slots, hi):
            if slots == 0:
                L = PicardClass(a, tuple(vec))
                if minimum_pairing(L, ctx) >= 0:
                    rows.append([a, *vec])
                    orbit = fact_r
                    for _, grp in itertools.groupby(vec):
                        orbit //= _math.factorial(len(list(grp)))
                    weights.append(orbit)
                return
            for v in range(hi, -1, -1):
                vec.append(v)
                rec(slots - 1, min(v, a - vec[0]))  # pair bound b_1 + b_i <= a
                vec.pop()

        rec(r, a)
    coeffs = np.array(rows, dtype=np.int64).reshape(len(rows), r + 1)
    return coeffs, np.array(weights, dtype=np.int64)


def _nef_sample_rows(r: int, a_max: int, count: int, seed: int) -> np.ndarray:
    """Seeded rejection sample of `count` nef rows with 0 <= a <= a_max."""
    from .positivity import minimum_pairing_bulk

    ctx = surface_context(r)
    rng = np.random.default_rng(seed)
    kept = []
    total = 0
    while total < count:
        a = rng.integers(0, a_max + 1, size=4096)
        b = rng.integers(0, a_max + 1, size=(4096, r))
        coeffs = np.column_stack([a, b]).astype(np.int64)
        coeffs = coeffs[(b <= a[:, None]).all(axis=1)]
        coeffs = coeffs[minimum_pairing_bulk(coeffs, ctx) >= 0]
        kept.append(coeffs)
        total += len(coeffs)
    return np.concatenate(kept, axis=0)[:count]


def consistency_sweep(
    r: int,
    k: int,
    a_max: int,
    ctx: SurfaceContext | None = None,
    *,
    sample: int | None = None,
    seed: int = 0,
) -> SweepSummary:
    """Cross-check the window search against the pairing criterion.

    For every nef L in the box (exhaustive, or a seeded sample) with the
    window applicable: a k-very-ample class must have zero witnesses; a
    class failing the pairing test must have at least one, and each
    exceptional class it fails against must be among them.  Any breach is
    returned as a violation (and means a genuine bug).

    The exhaustive mode runs on one representative per coordinate-
    permutation orbit: all checks are permutation-equivariant, so the
    representative decides its whole orbit (counted in ``covered``).
    Desk-scale only: k <= 2.
    """
    if ctx is None:
        ctx = surface_context(r)
    if ctx.r != r:
        raise ValueError(f"context rank {ctx.r} does not match r={r}")
    if k > DESK_SCALE_K:
        raise ValueError(
            f"consistency_sweep is desk-scale only (k <= {DESK_SCALE_K}); "
            f"the scan box grows like (6*(2k+1))*(2k+2+6*(2k+1))**r"
        )
    if sample is None:
        rep_bound = _math.comb(a_max + 1 + r, r + 1)  # descending tuples in the box
        if rep_bound > MAX_EXHAUSTIVE_REPRESENTATIVES:
            raise ValueError(
                f"exhaustive box has up to {rep_bound} orbit representatives "
                f"(> {MAX_EXHAUSTIVE_REPRESENTATIVES}); pass sample= instead"
            )
        coeffs, weights = _nef_box_rows(r, a_max)
    else:
        coeffs = _nef_sample_rows(r, a_max, sample, seed)
        weights = np.ones(len(coeffs), dtype=np.int64)
    scanned = len(coeffs)
    covered = int(weights.sum())

    violations = []
    applicable_n = passing = failing = exceptions = witness_total = 0
    for row in coeffs:
        L = PicardClass(int(row[0]), tuple(int(x) for x in row[1:]))
        applicable, M, m2 = window_applicable(L, k, ctx)
        if not applicable:
            continue
        applicable_n += 1
        outcome = search_obstructions(L, k, ctx)
        witness_total += len(outcome.witnesses)
        if minimum_pairing(L, ctx) >= k:
            if exception_flag(L, k, ctx) != EXCEPTION_NONE:
                # An exception class satisfies the inequalities without
                # being k-very ample; the window may or may not show an
                # obstruction for it (it does for -(k+1)K at rank 8, it
                # cannot for -kK), so neither outcome is a violation.
                exceptions += 1
                continue
            passing += 1
            if outcome.witnesses:
                violations.append(
                    SweepViolation(L, "unexpected_witness",
                                   f"k-very ample but has {len(outcome.witnesses)} witnesses")
                )
            # A k-very-ample class may not even have a witness with
            # D.D <= 0; vacuous when the list is empty.
            for w in outcome.witnesses:
                if w.D_squared <= 0:
                    violations.append(
                        SweepViolation(L, "nonpositive_square_witness",
                                       f"witness {w.D} with D.D = {w.D_squared}")
                    )
        else:
            failing += 1
            if not outcome.witnesses:
                violations.append(
                    SweepViolation(L, "missing_witness", "fails the pairing test but has no witnesses")
                )
            else:
                found = {w.D for w in outcome.witnesses}
                for xi in ctx.exceptional_set:
                    if intersect(L, xi) < k and xi not in found:
                        violations.append(
                            SweepViolation(L, "missing_exceptional_witness",
                                           f"violating class {xi} absent from the witness list")
                        )
    return SweepSummary(
        r=r, k=k, a_max=a_max, sample=sample, seed=seed if sample else None,
        scanned=scanned, covered=covered, applicable=applicable_n,
        passing=passing, failing=failing, exceptions=exceptions,
        witness_total=witness_total, violations=tuple(violations),
    )
