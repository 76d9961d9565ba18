"""Exact integer model of the divisor-class lattice of a blown-up plane.

A divisor class ``a*l - sum(b_i * e_i)`` on the blowup of the projective
plane at ``r`` general points (``1 <= r <= 8``) is stored as the integer
vector ``(a; b_1, ..., b_r)``.  In the basis ``l, e_1, ..., e_r`` the
intersection form is ``diag(1, -1, ..., -1)`` and the canonical class is
``(-3; -1, ..., -1)``; with this sign convention the class of the blown-up
point ``e_i`` is ``(0; ..., -1, ...)``.

Everything here is plain Python integer arithmetic, hence exact at any
magnitude.  The numpy-backed bulk routines elsewhere in the package use
int64 and are safe for ``|a|, |b_i| <= 10**6`` (products stay below 2**42,
sums of at most nine of them far below 2**63).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

MIN_RANK = 1
MAX_RANK = 8

#: Coefficient magnitude for which the int64 bulk routines are guaranteed
#: overflow-free.  The pure-Python operations in this module have no limit.
SAFE_COEFF_BOUND = 10**6

#: Number of classes with self-intersection -1 and anticanonical degree 1,
#: per rank.  Used as a construction-time sanity check on SurfaceContext;
#: the enumeration module recomputes these from scratch.
EXCEPTIONAL_CLASS_COUNTS = {1: 1, 2: 3, 3: 6, 4: 10, 5: 16, 6: 27, 7: 56, 8: 240}


class RankError(ValueError):
    """Number of blown-up points outside the del Pezzo range 1..8."""


class LatticeMismatchError(ValueError):
    """Classes living on lattices of different rank were combined."""


def _check_rank(r: int) -> None:
    if not isinstance(r, int) or not MIN_RANK <= r <= MAX_RANK:
        raise RankError(f"rank must be an integer in {MIN_RANK}..{MAX_RANK}, got {r!r}")


@dataclass(frozen=True)
class PicardClass:
    """The class ``a*l - sum(b_i * e_i)``, as the vector ``(a; b_1..b_r)``."""

    a: int
    b: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "a", int(self.a))
        object.__setattr__(self, "b", tuple(int(x) for x in self.b))
        _check_rank(len(self.b))

    @property
    def r(self) -> int:
        return len(self.b)

    def __add__(self, other: "PicardClass") -> "PicardClass":
        _same_rank(self, other)
        return PicardClass(self.a + other.a, tuple(x + y for x, y in zip(self.b, other.b)))

    def __sub__(self, other: "PicardClass") -> "PicardClass":
        _same_rank(self, other)
        return PicardClass(self.a - other.a, tuple(x - y for x, y in zip(self.b, other.b)))

    def __neg__(self) -> "PicardClass":
        return PicardClass(-self.a, tuple(-x for x in self.b))

    def __mul__(self, n: int) -> "PicardClass":
        if not isinstance(n, int):
            return NotImplemented  # the intersection number is intersect(), not *
        return PicardClass(n * self.a, tuple(n * x for x in self.b))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.a == 0 and not any(self.b)

    def sort_key(self) -> tuple:
        return (self.a, self.b)

    def render(self) -> str:
        """Literal form ``a;b1,b2,...`` accepted back by the CLI parser."""
        return f"{self.a};{','.join(str(x) for x in self.b)}"

    def __str__(self) -> str:
        return self.render()


def _same_rank(L1: PicardClass, L2: PicardClass) -> None:
    if L1.r != L2.r:
        raise LatticeMismatchError(f"rank mismatch: {L1.r} vs {L2.r}")


def zero_class(r: int) -> PicardClass:
    _check_rank(r)
    return PicardClass(0, (0,) * r)


def line(r: int) -> PicardClass:
    """The pullback ``l`` of a general line in the plane."""
    _check_rank(r)
    return PicardClass(1, (0,) * r)


def point_class(r: int, i: int) -> PicardClass:
    """The class of the blown-up point ``e_i`` (1-based), i.e. b_i = -1."""
    _check_rank(r)
    if not 1 <= i <= r:
        raise RankError(f"index {i} outside 1..{r}")
    return PicardClass(0, tuple(-1 if j == i else 0 for j in range(1, r + 1)))


def canonical_class(r: int) -> PicardClass:
    """The canonical class ``-(3l - sum e_i)`` = ``(-3; -1, ..., -1)``."""
    _check_rank(r)
    return PicardClass(-3, (-1,) * r)


def intersect(L1: PicardClass, L2: PicardClass) -> int:
    """Intersection number ``a1*a2 - sum(b1_i * b2_i)``; symmetric bilinear."""
    _same_rank(L1, L2)
    return L1.a * L2.a - sum(x * y for x, y in zip(L1.b, L2.b))


def degree(L: PicardClass) -> int:
    """Self-intersection ``L.L``."""
    return intersect(L, L)


def sectional_genus(L: PicardClass) -> int:
    """The integer g with ``2g - 2 = L.L + K.L``.

    The sum ``L.L + K.L`` is even for every lattice point (adjunction), so
    the division is exact; a parity failure would mean the lattice model
    itself is broken.
    """
    s = degree(L) + intersect(canonical_class(L.r), L)
    assert s % 2 == 0, f"adjunction parity violated for {L}"
    return s // 2 + 1


def adjoint(L: PicardClass) -> PicardClass:
    """The adjoint class ``K + L`` = ``(a-3; b_1-1, ..., b_r-1)``."""
    return PicardClass(L.a - 3, tuple(x - 1 for x in L.b))


@dataclass(frozen=True)
class CurveTypePattern:
    """Permutation-invariant signature ``(a0; m1^n1, m2^n2, ...)``.

    ``entries`` lists (multiplicity, count) pairs with multiplicities
    strictly descending and zeros omitted.  Two classes differing by a
    permutation of the ``e_i`` coordinates have equal patterns.  Negative
    multiplicities (the blown-up points themselves, or stranger inputs)
    are retained and exposed via :attr:`has_negative`.
    """

    a0: int
    entries: tuple[tuple[int, int], ...]

    def __post_init__(self):
        mults = [m for m, _ in self.entries]
        if mults != sorted(mults, reverse=True) or len(set(mults)) != len(mults):
            raise ValueError(f"entries must have strictly descending multiplicities: {self.entries}")
        if any(m == 0 or n <= 0 for m, n in self.entries):
            raise ValueError(f"zero multiplicities or non-positive counts: {self.entries}")

    @property
    def has_negative(self) -> bool:
        return any(m < 0 for m, _ in self.entries)

    @property
    def total_count(self) -> int:
        return sum(n for _, n in self.entries)

    def multiplicities(self) -> tuple[int, ...]:
        """The multiset of nonzero b-values, descending, one slot each."""
        return tuple(m for m, n in self.entries for _ in range(n))

    def to_class(self, r: int) -> PicardClass:
        """Canonical representative at rank r: b descending, zero-padded."""
        _check_rank(r)
        mults = self.multiplicities()
        if len(mults) > r:
            raise RankError(f"pattern {self} needs {len(mults)} coordinates, rank is {r}")
        return PicardClass(self.a0, mults + (0,) * (r - len(mults)))

    def sort_key(self) -> tuple:
        return (self.a0, self.entries)

    def render(self) -> str:
        parts = [f"{m}^{n}" if n > 1 else f"{m}" for m, n in self.entries]
        return f"({self.a0};{','.join(parts)})" if parts else f"({self.a0};)"

    def __str__(self) -> str:
        return self.render()


def type_pattern(L: PicardClass) -> CurveTypePattern:
    """Pattern of L: b sorted descending, zeros dropped, equal values grouped."""
    vals = sorted((x for x in L.b if x != 0), reverse=True)
    entries = tuple((v, len(list(grp))) for v, grp in itertools.groupby(vals))
    return CurveTypePattern(L.a, entries)


@dataclass(frozen=True)
class SurfaceContext:
    """Fixed rank r together with the cached exceptional classes.

    Immutable after construction; safe to share between any number of
    concurrent callers.  Build via :func:`delpezzo.enumeration.surface_context`.
    """

    r: int
    exceptional_set: tuple[PicardClass, ...]
    canonical: PicardClass

    def __post_init__(self):
        _check_rank(self.r)
        if self.canonical != canonical_class(self.r):
            raise ValueError(f"wrong canonical class for rank {self.r}: {self.canonical}")
        expected = EXCEPTIONAL_CLASS_COUNTS[self.r]
        if len(self.exceptional_set) != expected:
            raise ValueError(
                f"rank {self.r} needs {expected} exceptional classes, got {len(self.exceptional_set)}"
            )
        if any(xi.r != self.r for xi in self.exceptional_set):
            raise LatticeMismatchError("exceptional classes of foreign rank in context")

    @cached_property
    def exceptional_index(self) -> frozenset:
        """Set view of the exceptional classes, for O(1) membership tests."""
        return frozenset(self.exceptional_set)

    @property
    def anticanonical(self) -> PicardClass:
        return -self.canonical
