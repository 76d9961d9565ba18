"""Decision procedures for effectivity, nefness, spannedness and k-very
ampleness of divisor classes.

The single primitive underneath everything is the pairing of a class
against the exceptional set (plus the fiber class ``l - e_1`` at rank 1):

* nef  <=>  every pairing >= 0           (and nef <=> spanned);
* k-very ample  <=>  every pairing >= k, excluding three explicitly
  enumerated exception classes on the degree-1 and degree-2 surfaces;
* effective is decided by repeatedly subtracting an exceptional class
  that pairs negatively, which terminates because the anticanonical
  degree drops by exactly 1 per step.

Each per-type inequality family is the same pairing test folded over a
permutation orbit; ``generate_inequality_families`` derives them
mechanically and the bulk helpers at the bottom evaluate both
formulations over numpy arrays of classes (int64, exact for
coefficients up to 10**6).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .lattice import (
    CurveTypePattern,
    PicardClass,
    RankError,
    SurfaceContext,
    degree,
    intersect,
    point_class,
    sectional_genus,
    type_pattern,
    adjoint as adjoint_class,
)
from .enumeration import exceptional_type_census

EXCEPTION_NONE = "none"
EXCEPTION_MINUS_KK_S8 = "minus_kK_S8"
EXCEPTION_MINUS_K1K_S8 = "minus_k1K_S8"
EXCEPTION_MINUS_K_S7_K1 = "minus_K_S7_k1"


def fiber_class(r: int = 1) -> PicardClass:
    """``l - e_1``; its pairing joins the exceptional tests at rank 1."""
    return PicardClass(1, (1,) + (0,) * (r - 1))


def _pairing_classes(ctx: SurfaceContext) -> tuple[PicardClass, ...]:
    if ctx.r == 1:
        return ctx.exceptional_set + (fiber_class(),)
    return ctx.exceptional_set


def minimum_pairing(L: PicardClass, ctx: SurfaceContext) -> int:
    """Smallest intersection of L with the test curves at this rank."""
    return min(intersect(L, c) for c in _pairing_classes(ctx))


def is_nef(L: PicardClass, ctx: SurfaceContext) -> bool:
    """True iff L pairs >= 0 with every exceptional class (and with
    ``l - e_1`` at rank 1)."""
    return minimum_pairing(L, ctx) >= 0


def is_spanned(L: PicardClass, ctx: SurfaceContext) -> bool:
    """Spanned-by-sections coincides with nef on these surfaces."""
    return is_nef(L, ctx)


def is_big(L: PicardClass, ctx: SurfaceContext) -> bool:
    """Nef with positive self-intersection."""
    return is_nef(L, ctx) and degree(L) > 0


@dataclass(frozen=True)
class EffectivityCertificate:
    """Replayable witness: L = sum(multiplicity * subtracted class) + terminal,
    where the terminal class is nef (possibly zero)."""

    subtracted: tuple[tuple[PicardClass, int], ...]
    terminal: PicardClass

    def replay(self) -> PicardClass:
        total = self.terminal
        for cls, mult in self.subtracted:
            total = total + mult * cls
        return total


def is_effective(L: PicardClass, ctx: SurfaceContext) -> tuple[bool, EffectivityCertificate | None]:
    """Decide effectivity by reduction against the exceptional set.

    For rank >= 2: subtract the exceptional class with the most negative
    pairing (ties broken by (a, b) order) until the remainder is zero,
    nef, or visibly non-effective (non-positive anticanonical degree).
    Rank 1 is the monoid generated by ``e_1`` and ``l - e_1``:
    ``(a; b1)`` is effective iff ``a >= 0`` and ``a >= b1``.
    """
    if ctx.r != L.r:
        raise RankError(f"class of rank {L.r} checked in rank-{ctx.r} context")
    if ctx.r == 1:
        a, b1 = L.a, L.b[0]
        if a < 0 or a < b1:
            return False, None
        if b1 < 0:
            # -b1 copies of e_1, then the nef remainder (a; 0)
            cert = EffectivityCertificate(((point_class(1, 1), -b1),), PicardClass(a, (0,)))
        else:
            cert = EffectivityCertificate((), L)
        assert cert.replay() == L
        return True, cert

    # The exceptional set is sorted by (a, b), so taking the first class
    # attaining the minimum pairing is the canonical tie-break.
    data = [(xi, xi.a, xi.b) for xi in ctx.exceptional_set]
    a = L.a
    b = list(L.b)
    chain: list[list] = []  # [class, multiplicity] runs, coalesced
    while True:
        if a == 0 and not any(b):
            break
        if 3 * a - sum(b) <= 0:  # anticanonical degree; ample classes see everything
            return False, None
        worst_val = 0
        worst = None
        for xi, xa, xb in data:
            v = xa * a - sum(p * q for p, q in zip(xb, b))
            if v < worst_val:
                worst_val = v
                worst = xi
        if worst is None:
            break  # pairs >= 0 with everything: nef, hence effective
        a -= worst.a
        for i, x in enumerate(worst.b):
            b[i] -= x
        if chain and chain[-1][0] == worst:
            chain[-1][1] += 1
        else:
            chain.append([worst, 1])
    cur = PicardClass(a, tuple(b))
    cert = EffectivityCertificate(tuple((c, m) for c, m in chain), cur)
    assert cert.replay() == L
    return True, cert


def exception_flag(L: PicardClass, k: int, ctx: SurfaceContext) -> str:
    """Which of the three named exception classes L is, if any.

    On the degree-1 surface neither ``-k*K`` nor ``-(k+1)*K`` is k-very
    ample, and on the degree-2 surface ``-K`` is not very ample, even
    though all three satisfy the intersection inequalities.  k = 0 is
    handled uniformly (so the zero class and ``-K`` are flagged at rank 8).
    """
    K = ctx.canonical
    if ctx.r == 8:
        if L == -k * K:
            return EXCEPTION_MINUS_KK_S8
        if L == -(k + 1) * K:
            return EXCEPTION_MINUS_K1K_S8
    if ctx.r == 7 and k == 1 and L == -K:
        return EXCEPTION_MINUS_K_S7_K1
    return EXCEPTION_NONE


@dataclass(frozen=True)
class Violation:
    """One failed inequality: the family, its evaluated value, the bound."""

    check: str  # "nef" or "k_very_ample"
    family: str
    value: int
    bound: int

    def as_dict(self) -> dict:
        return {"check": self.check, "family": self.family, "value": self.value, "bound": self.bound}


@dataclass(frozen=True)
class PositivityReport:
    """All verdicts for one class, with violations and certificates."""

    subject: PicardClass
    k: int
    effective: bool
    nef: bool
    big: bool
    spanned: bool
    k_very_ample: bool
    degree: int
    genus: int
    violations: tuple[Violation, ...]
    exception_flag: str
    certificate: EffectivityCertificate | None

    def __post_init__(self):
        assert self.spanned == self.nef
        if self.k_very_ample:
            assert self.exception_flag == EXCEPTION_NONE
            assert self.nef
            if self.k >= 1:
                assert self.big
            else:
                assert self.spanned

    @property
    def r(self) -> int:
        return self.subject.r

    def as_dict(self) -> dict:
        """Machine-readable form; field names and order are stable."""
        cert = None
        if self.certificate is not None:
            cert = {
                "subtracted": [[c.render(), m] for c, m in self.certificate.subtracted],
                "terminal": self.certificate.terminal.render(),
            }
        return {
            "subject": self.subject.render(),
            "r": self.r,
            "k": self.k,
            "degree": self.degree,
            "genus": self.genus,
            "verdicts": {
                "effective": self.effective,
                "nef": self.nef,
                "big": self.big,
                "spanned": self.spanned,
                "k_very_ample": self.k_very_ample,
            },
            "violations": [v.as_dict() for v in self.violations],
            "exception_flag": self.exception_flag,
            "certificate": cert,
        }


def is_k_very_ample(L: PicardClass, k: int, ctx: SurfaceContext) -> PositivityReport:
    """Full positivity report; the k-very-ample verdict is the pairing test
    at level k minus the enumerated exceptions."""
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    if ctx.r != L.r:
        raise RankError(f"class of rank {L.r} checked in rank-{ctx.r} context")
    mp = minimum_pairing(L, ctx)
    flag = exception_flag(L, k, ctx)
    nef = mp >= 0
    effective, cert = is_effective(L, ctx)
    violations = []
    for fam in generate_inequality_families(ctx.r, ctx):
        val = fam.evaluate(L)
        if val < 0:
            violations.append(Violation("nef", fam.label(with_k=False), val, 0))
        if val < k:
            violations.append(Violation("k_very_ample", fam.label(with_k=True), val, k))
    return PositivityReport(
        subject=L,
        k=k,
        effective=effective,
        nef=nef,
        big=nef and degree(L) > 0,
        spanned=nef,
        k_very_ample=(mp >= k and flag == EXCEPTION_NONE),
        degree=degree(L),
        genus=sectional_genus(L),
        violations=tuple(violations),
        exception_flag=flag,
        certificate=cert,
    )


@dataclass(frozen=True)
class InequalityFamily:
    """One per-type inequality: ``a_coeff * a >= <b-terms> + k`` ranging over
    all choices of distinct coordinates, i.e. the pairing test against a
    whole permutation orbit of exceptional classes folded into one line."""

    r: int
    a_coeff: int
    b_coeffs: tuple[int, ...]  # descending multiplicities; one slot each
    source_type: CurveTypePattern
    k_coeff: int = 1

    def evaluate(self, L: PicardClass) -> int:
        """min over the orbit of the pairing with L (exact, no orbit scan):
        positive coefficients take the largest coordinates, negative ones
        the smallest."""
        pos = [m for m in self.b_coeffs if m > 0]
        neg = [m for m in self.b_coeffs if m < 0]
        desc = sorted(L.b, reverse=True)
        best = sum(m * x for m, x in zip(pos, desc))
        best += sum(m * x for m, x in zip(sorted(neg), sorted(L.b)))
        return self.a_coeff * L.a - best

    def satisfied(self, L: PicardClass, k: int) -> bool:
        return self.evaluate(L) >= self.k_coeff * k

    def label(self, with_k: bool = True) -> str:
        """Symbolic form, e.g. ``a >= b_i + b_j + k`` or ``b_i >= k``."""
        suffix = " + k" if with_k else ""
        bound = "k" if with_k else "0"
        if self.b_coeffs == (-1,):
            name = "b_1" if self.r == 1 else "b_i"
            return f"{name} >= {bound}"
        lhs = "a" if self.a_coeff == 1 else f"{self.a_coeff}a"
        letters = iter("ijmn")
        terms = []
        for mult, grp in itertools.groupby(self.b_coeffs):
            n = len(list(grp))
            coeff = "" if mult == 1 else f"{mult}"
            if self.r == 1:
                terms.append(f"{coeff}b_1")
            elif n == 1:
                terms.append(f"{coeff}b_{next(letters)}")
            elif n == 2:
                x, y = next(letters), next(letters)
                terms.append(f"{coeff}b_{x} + {coeff}b_{y}")
            else:
                terms.append(f"{coeff} sum_{n} b" if coeff else f"sum_{n} b")
        return f"{lhs} >= {' + '.join(terms)}{suffix}"


@lru_cache(maxsize=None)
def generate_inequality_families(r: int, ctx: SurfaceContext | None = None) -> tuple[InequalityFamily, ...]:
    """One family per exceptional type present at rank r, plus the
    ``a >= b_1 + k`` fiber family at rank 1.  Evaluating every family at
    (L, k) is equivalent to pairing L against the full exceptional set."""
    census = exceptional_type_census(r)
    fams = [
        InequalityFamily(r=r, a_coeff=pat.a0, b_coeffs=pat.multiplicities(), source_type=pat)
        for pat, _ in census.counts
    ]
    if r == 1:
        fib = fiber_class()
        fams.append(
            InequalityFamily(r=1, a_coeff=1, b_coeffs=(1,), source_type=type_pattern(fib))
        )
    return tuple(sorted(fams, key=lambda f: f.source_type.sort_key()))


def adjoint_kva_check(L: PicardClass, k: int, ctx: SurfaceContext) -> bool:
    """Whether K + L is (k-1)-very ample, given that L is k-very ample.

    For rank >= 2 the inequalities always carry over (each pairing drops
    by exactly 1); the verdict can still be False when K + L lands on an
    exception class, which happens exactly for L = -2K at rank 7, k = 2.
    For rank 1 the verdict is True iff ``a >= b_1 + k + 1``.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    report = is_k_very_ample(L, k, ctx)
    if not report.k_very_ample:
        raise ValueError(f"{L} is not {k}-very ample; adjoint check needs that")
    return is_k_very_ample(adjoint_class(L), k - 1, ctx).k_very_ample


def degree_bound_check(L: PicardClass, k: int, ctx: SurfaceContext) -> bool:
    """Assert-style check ``degree(L) >= k^2 + 3k + 2`` for k-very ample L
    with k >= 2 and L != -kK.  Expected to hold always."""
    if k < 2:
        raise ValueError(f"degree bound applies for k >= 2, got {k}")
    if L == -k * ctx.canonical:
        raise ValueError(f"{L} = -{k}K is excluded from the degree bound")
    if not is_k_very_ample(L, k, ctx).k_very_ample:
        raise ValueError(f"{L} is not {k}-very ample; degree bound needs that")
    return degree(L) >= k * k + 3 * k + 2


# Rank-1 surface in ruled-surface coordinates: the class a0*E0 + b*f with
# E0 = e_1 the section of square -1 and f = l - e_1 the fiber.

def f1_coords(L: PicardClass) -> tuple[int, int]:
    """(a0, b) with L = a0*E0 + b*f; inverse of :func:`f1_class`."""
    if L.r != 1:
        raise RankError(f"ruled-surface coordinates need rank 1, got {L.r}")
    return (L.a - L.b[0], L.a)


def f1_class(a0: int, b: int) -> PicardClass:
    """The class ``b*l - (b - a0)*e_1`` of a0*E0 + b*f."""
    return PicardClass(b, (b - a0,))


def f1_is_k_very_ample(a0: int, b: int, k: int) -> bool:
    """k-very ampleness in (a0, b) coordinates: a0 >= k and b >= a0 + k."""
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    return a0 >= k and b >= a0 + k


# ---------------------------------------------------------------------------
# Bulk (numpy) evaluation.  Rows are class vectors (a, b_1..b_r) in int64;
# exact for |a|, |b_i| <= 10**6.  These back the exhaustive sweeps; the
# scalar routines above stay the reference implementation.

def classes_to_array(classes) -> np.ndarray:
    return np.array([[c.a, *c.b] for c in classes], dtype=np.int64)


def pairing_matrix(coeffs: np.ndarray, ctx: SurfaceContext) -> np.ndarray:
    """(N, m) intersection numbers of N class rows against the test curves."""
    X = classes_to_array(_pairing_classes(ctx))
    return coeffs[:, :1] * X[:, 0][None, :] - coeffs[:, 1:] @ X[:, 1:].T


def minimum_pairing_bulk(coeffs: np.ndarray, ctx: SurfaceContext) -> np.ndarray:
    """Row-wise minimum pairing; >= k is the direct k-very-ampleness test."""
    return pairing_matrix(coeffs, ctx).min(axis=1)


def minimum_family_value_bulk(coeffs: np.ndarray, r: int) -> np.ndarray:
    """Row-wise minimum over the inequality families (the folded form)."""
    fams = generate_inequality_families(r)
    desc = -np.sort(-coeffs[:, 1:], axis=1)
    asc = desc[:, ::-1]
    vals = np.empty((len(fams), coeffs.shape[0]), dtype=np.int64)
    for i, fam in enumerate(fams):
        pos = np.array([m for m in fam.b_coeffs if m > 0], dtype=np.int64)
        neg = np.array(sorted(m for m in fam.b_coeffs if m < 0), dtype=np.int64)
        best = 0
        if pos.size:
            best = desc[:, : pos.size] @ pos
        if neg.size:
            best = best + asc[:, : neg.size] @ neg
        vals[i] = fam.a_coeff * coeffs[:, 0] - best
    return vals.min(axis=0)
