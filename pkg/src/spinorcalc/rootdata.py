"""Exact weight-lattice and Weyl-group combinatorics for D5 and its GL5 Levi.

Weights live in epsilon-coordinates: 5-tuples of rationals that are either
all integers or all half-odd-integers (the two parity classes of the D5
weight lattice).  The Weyl vector is rho = (4, 3, 2, 1, 0).  W(D5) acts by
permutations composed with even numbers of sign changes; the Levi Weyl
group W(GL5) = S5 acts by permutations alone.  The 20 positive roots of D5
are e_i - e_j and e_i + e_j for i < j; GL5 keeps only the differences.

Everything here is exact rational arithmetic (fractions.Fraction); no
floating point enters anywhere.  All functions are pure; the memo caches
are observationally pure, so concurrent use is safe.
"""

from __future__ import annotations

import functools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, Literal, Optional

Flavor = Literal["D5", "GL5"]

RANK = 5
RHO = (Fraction(4), Fraction(3), Fraction(2), Fraction(1), Fraction(0))


def _coerce(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"cannot build an exact coordinate from {x!r}")


@dataclass(frozen=True)
class Weight:
    """A lattice point in epsilon-coordinates.

    Coordinates must all be integers or all half-odd-integers; mixing the
    two parity classes is a constructor-time error, since it always
    indicates a caller bug (no irreducible summand mixes them).
    """

    coords: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        cs = tuple(_coerce(c) for c in self.coords)
        if len(cs) != RANK:
            raise ValueError(f"expected {RANK} coordinates, got {len(cs)}")
        doubled = [2 * c for c in cs]
        if any(d.denominator != 1 for d in doubled):
            raise ValueError(f"coordinates must be integers or half-integers: {cs}")
        if len({d.numerator % 2 for d in doubled}) > 1:
            raise ValueError(f"mixed integer/half-integer coordinates: {cs}")
        object.__setattr__(self, "coords", cs)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: "Weight | Iterable") -> "Weight":
        oc = other.coords if isinstance(other, Weight) else tuple(_coerce(c) for c in other)
        return Weight(tuple(a + b for a, b in zip(self.coords, oc)))

    def __sub__(self, other: "Weight | Iterable") -> "Weight":
        oc = other.coords if isinstance(other, Weight) else tuple(_coerce(c) for c in other)
        return Weight(tuple(a - b for a, b in zip(self.coords, oc)))

    def __neg__(self) -> "Weight":
        return Weight(tuple(-c for c in self.coords))

    def shifted(self, t) -> "Weight":
        """Add the scalar t to every coordinate (a determinant twist)."""
        t = _coerce(t)
        return Weight(tuple(c + t for c in self.coords))

    def dual(self) -> "Weight":
        """Highest weight of the dual representation: negate and reverse."""
        return Weight(tuple(-c for c in reversed(self.coords)))

    def total(self) -> Fraction:
        return sum(self.coords, Fraction(0))

    # -- conversions ------------------------------------------------------

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.coords)

    def __getitem__(self, i: int) -> Fraction:
        return self.coords[i]

    @classmethod
    def from_text(cls, text: str) -> "Weight":
        """Parse the CLI syntax: comma-separated rationals, e.g. ``1/2,1/2,1/2,1/2,-1/2``."""
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != RANK:
            raise ValueError(f"expected {RANK} comma-separated rationals, got {len(parts)}")
        return cls(tuple(Fraction(p) for p in parts))

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.coords)


ZERO = Weight((0, 0, 0, 0, 0))
SPINOR = Weight((Fraction(1, 2),) * RANK)          # highest weight of the 16-dim half-spin rep
VECTOR = Weight((1, 0, 0, 0, 0))                   # highest weight of the 10-dim vector rep


def is_dominant(w: Weight, flavor: Flavor) -> bool:
    """Fundamental-chamber test: weakly decreasing; for D5 also c4 >= |c5|."""
    c = w.coords
    if any(c[i] < c[i + 1] for i in range(RANK - 1)):
        return False
    if flavor == "D5":
        return c[3] >= abs(c[4])
    if flavor == "GL5":
        return True
    raise ValueError(f"unknown flavor {flavor!r}")


def bbw_regularize(lam: Weight) -> Optional[tuple[int, Weight]]:
    """Rho-shifted regularization of a weight under W(D5).

    Let v = lam + rho.  If v is singular (two coordinates of equal absolute
    value, two zeros included) return None.  Otherwise return (length, dom)
    where dom = w.v is the unique D5-dominant orbit representative
    (absolute values sorted descending, with the last sign flipped when the
    number of sign changes used is odd) and length counts the positive
    roots alpha with <v, alpha> < 0.
    """
    v = [a + b for a, b in zip(lam.coords, RHO)]
    absv = [abs(x) for x in v]
    if len(set(absv)) < RANK:
        return None
    negatives = sum(1 for x in v if x < 0)
    dom = sorted(absv, reverse=True)
    if negatives % 2 == 1:
        dom[-1] = -dom[-1]
    length = 0
    for i, j in combinations(range(RANK), 2):
        if v[i] - v[j] < 0:
            length += 1
        if v[i] + v[j] < 0:
            length += 1
    return length, Weight(tuple(dom))


@functools.lru_cache(maxsize=None)
def _weyl_dim_cached(coords: tuple[Fraction, ...], flavor: Flavor) -> int:
    v = [a + b for a, b in zip(coords, RHO)]
    num = Fraction(1)
    den = Fraction(1)
    for i, j in combinations(range(RANK), 2):
        num *= v[i] - v[j]
        den *= RHO[i] - RHO[j]
        if flavor == "D5":
            num *= v[i] + v[j]
            den *= RHO[i] + RHO[j]
    d = num / den
    if d.denominator != 1 or d <= 0:
        raise ArithmeticError(f"Weyl dimension of {coords} came out as {d}")
    return int(d)


def weyl_dim(lam: Weight, flavor: Flavor) -> int:
    """Weyl dimension formula: prod <lam+rho, a> / <rho, a> over positive roots."""
    if not is_dominant(lam, flavor):
        raise ValueError(f"{lam} is not {flavor}-dominant")
    return _weyl_dim_cached(lam.coords, flavor)


@dataclass(frozen=True)
class DecompositionMultiset:
    """A multiset of GL5-dominant weights with positive multiplicities."""

    entries: tuple[tuple[Weight, int], ...]

    def __post_init__(self) -> None:
        seen = set()
        for w, m in self.entries:
            if not is_dominant(w, "GL5"):
                raise ValueError(f"{w} is not GL5-dominant")
            if m <= 0:
                raise ValueError(f"non-positive multiplicity {m} for {w}")
            if w in seen:
                raise ValueError(f"duplicate entry {w}")
            seen.add(w)
        ordered = tuple(sorted(self.entries, key=lambda e: e[0].coords, reverse=True))
        object.__setattr__(self, "entries", ordered)

    @classmethod
    def from_counter(cls, counts: "Counter[Weight] | dict[Weight, int]") -> "DecompositionMultiset":
        return cls(tuple((w, m) for w, m in counts.items() if m))

    def items(self) -> tuple[tuple[Weight, int], ...]:
        return self.entries

    def __iter__(self) -> Iterator[tuple[Weight, int]]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def total_dim(self, flavor: Flavor = "GL5") -> int:
        return sum(m * weyl_dim(w, flavor) for w, m in self.entries)


@functools.lru_cache(maxsize=None)
def _lr_products(lam: tuple[int, ...], mu: tuple[int, ...]) -> Counter:
    """Littlewood-Richardson expansion of two partitions, truncated to 5 rows.

    Enumerates chains of horizontal strips subject to the ballot condition:
    the boxes added for letter i+1 within the first r+1 rows never exceed
    the boxes of letter i within the first r rows.
    """
    out: Counter = Counter()
    letters = [m for m in mu if m > 0]

    def add_letter(shape: tuple[int, ...], prev_cum: Optional[tuple[int, ...]], idx: int) -> None:
        if idx == len(letters):
            out[shape] += 1
            return
        size = letters[idx]
        rows: list[int] = [0] * RANK

        def place(r: int, remaining: int) -> None:
            if r == RANK:
                if remaining == 0:
                    new_shape = tuple(shape[i] + rows[i] for i in range(RANK))
                    cum = []
                    acc = 0
                    for b in rows:
                        acc += b
                        cum.append(acc)
                    add_letter(new_shape, tuple(cum), idx + 1)
                return
            hi = remaining
            if r > 0:
                hi = min(hi, shape[r - 1] - shape[r])  # horizontal strip
            if prev_cum is not None:
                already = sum(rows[:r])
                cap = (prev_cum[r - 1] if r > 0 else 0) - already  # ballot
                hi = min(hi, cap)
            for b in range(hi + 1):
                rows[r] = b
                place(r + 1, remaining - b)
            rows[r] = 0

        place(0, size)

    add_letter(tuple(lam), None, 0)
    return out


def tensor_decompose(lam: Weight, mu: Weight) -> DecompositionMultiset:
    """GL5 tensor product decomposition (rational determinant twists allowed).

    Splits a determinant power off both factors so they become partitions,
    expands by the Littlewood-Richardson rule, discards anything with more
    than five rows, and restores the combined twist.
    """
    for w in (lam, mu):
        if not is_dominant(w, "GL5"):
            raise ValueError(f"{w} is not GL5-dominant")
    a = lam.coords[-1]
    b = mu.coords[-1]
    lam_p = tuple(int(c - a) for c in lam.coords)
    mu_p = tuple(int(c - b) for c in mu.coords)
    shift = a + b
    counts: Counter = Counter()
    for shape, m in _lr_products(lam_p, mu_p).items():
        counts[Weight(shape).shifted(shift)] += m
    return DecompositionMultiset.from_counter(counts)
