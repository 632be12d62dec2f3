"""Equivariant vector bundles on the ten-dimensional spinor variety and
their sheaf cohomology.

A bundle is a formal multiset of irreducible equivariant summands, each
named by its GL5-dominant highest weight.  Rather than committing to one
of the competing highest/lowest-weight conventions in the literature, the
weight dictionary is pinned by two base cases:

* ``O(1)``, the ample generator, is the line bundle of weight
  (1/2, 1/2, 1/2, 1/2, 1/2) and has 16 independent sections;
* ``dual(U)`` is the bundle of weight (1, 0, 0, 0, 0) with 10 sections.

Here ``U`` is the rank-5 tautological subbundle, of weight (0,0,0,0,-1);
its determinant is O(-2), and the canonical bundle of the tenfold is
O(-8).  Twisting by O(k) adds k/2 to every coordinate, dualizing negates
and reverses, and tensor products reduce to irreducibles through the
GL5 Littlewood-Richardson rule.

Cohomology of an irreducible summand is concentrated in a single degree:
the weight is rho-shifted and regularized; singular means no cohomology,
otherwise the degree is the number of positive roots made negative and
the dimension comes from the Weyl dimension formula for D5.
"""

from __future__ import annotations

import functools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Optional, Union

from .rootdata import (
    DecompositionMultiset,
    Weight,
    bbw_regularize,
    is_dominant,
    tensor_decompose,
    weyl_dim,
)

DIM = 10                 # dimension of the spinor tenfold
CANONICAL_TWIST = -8     # canonical bundle is O(-8)


@dataclass(frozen=True)
class CohomologyTable:
    """Finitely supported map degree -> dimension, with its Euler number."""

    entries: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        clean = tuple(sorted((d, n) for d, n in self.entries if n))
        for d, n in clean:
            if d < 0:
                raise ValueError(f"negative cohomological degree {d}")
            if n < 0:
                raise ValueError(f"negative dimension {n} in degree {d}")
        if len({d for d, _ in clean}) != len(clean):
            raise ValueError("duplicate degrees in cohomology table")
        object.__setattr__(self, "entries", clean)

    @classmethod
    def from_dict(cls, dims: dict[int, int]) -> "CohomologyTable":
        return cls(tuple(dims.items()))

    @classmethod
    def zero(cls) -> "CohomologyTable":
        return cls(())

    def dims(self) -> dict[int, int]:
        return dict(self.entries)

    def dim(self, degree: int) -> int:
        for d, n in self.entries:
            if d == degree:
                return n
        return 0

    @property
    def euler(self) -> int:
        return sum(n if d % 2 == 0 else -n for d, n in self.entries)

    @property
    def is_zero(self) -> bool:
        return not self.entries

    def scaled(self, m: int) -> "CohomologyTable":
        return CohomologyTable(tuple((d, m * n) for d, n in self.entries))

    def __add__(self, other: "CohomologyTable") -> "CohomologyTable":
        merged = Counter(dict(self.entries))
        merged.update(dict(other.entries))
        return CohomologyTable.from_dict(dict(merged))

    def reversed_around(self, top: int) -> "CohomologyTable":
        """The table with degree d sent to top - d (a Serre-duality helper)."""
        return CohomologyTable(tuple((top - d, n) for d, n in self.entries))

    def to_json(self) -> dict[str, int]:
        return {str(d): n for d, n in self.entries}

    def __str__(self) -> str:
        if not self.entries:
            return "{}"
        return "{" + ", ".join(f"{d}: {n}" for d, n in self.entries) + "}"


@dataclass(frozen=True)
class HomogBundle:
    """Formal sum of irreducible equivariant bundles, tagged by weight."""

    summands: tuple[tuple[Weight, int], ...]

    def __post_init__(self) -> None:
        counts: Counter = Counter()
        for w, m in self.summands:
            if not is_dominant(w, "GL5"):
                raise ValueError(f"summand weight {w} is not GL5-dominant")
            counts[w] += m
        clean = tuple(sorted(((w, m) for w, m in counts.items() if m),
                             key=lambda e: e[0].coords, reverse=True))
        if any(m < 0 for _, m in clean):
            raise ValueError("negative multiplicity")
        object.__setattr__(self, "summands", clean)

    @functools.cached_property
    def rank(self) -> int:
        return sum(m * weyl_dim(w, "GL5") for w, m in self.summands)

    def decomposition(self) -> DecompositionMultiset:
        return DecompositionMultiset(self.summands)

    def dual(self) -> "HomogBundle":
        return HomogBundle(tuple((w.dual(), m) for w, m in self.summands))

    def twist(self, k: int) -> "HomogBundle":
        t = Fraction(k, 2)
        return HomogBundle(tuple((w.shifted(t), m) for w, m in self.summands))

    def __mul__(self, other: "HomogBundle") -> "HomogBundle":
        counts: Counter = Counter()
        for w1, m1 in self.summands:
            for w2, m2 in other.summands:
                for w, m in tensor_decompose(w1, w2):
                    counts[w] += m1 * m2 * m
        return HomogBundle(tuple(counts.items()))

    def __add__(self, other: "HomogBundle") -> "HomogBundle":
        return HomogBundle(self.summands + other.summands)

    def scaled(self, m: int) -> "HomogBundle":
        return HomogBundle(tuple((w, m * n) for w, n in self.summands))

    def __str__(self) -> str:
        return " + ".join(f"{m}*({w})" if m != 1 else f"({w})" for w, m in self.summands)


def O(k: int = 0) -> HomogBundle:
    """The line bundle O(k)."""
    return HomogBundle(((Weight((Fraction(k, 2),) * 5), 1),))


def U() -> HomogBundle:
    """The rank-5 tautological subbundle."""
    return HomogBundle(((Weight((0, 0, 0, 0, -1)), 1),))


def irreducible(w: Weight) -> HomogBundle:
    return HomogBundle(((w, 1),))


# ---------------------------------------------------------------------------
# bundle expression grammar:
#   expr   := factor { "*" factor }
#   factor := atom [ "(" integer ")" ] | "dual" "(" expr ")" [ "(" integer ")" ]
#   atom   := "O" | "U"
# ---------------------------------------------------------------------------


class BundleExprError(ValueError):
    """Syntax error in a bundle expression, with the offending offset."""

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} at offset {position}")
        self.position = position


Tree = Union[tuple]


def parse_bundle_expr(text: str) -> Tree:
    """Parse a bundle expression into a tree of ('atom'|'dual'|'twist'|'tensor') nodes."""
    pos = 0
    n = len(text)

    def skip_ws() -> None:
        nonlocal pos
        while pos < n and text[pos].isspace():
            pos += 1

    def expect(ch: str) -> None:
        nonlocal pos
        skip_ws()
        if pos >= n or text[pos] != ch:
            raise BundleExprError(f"expected {ch!r}", pos)
        pos += 1

    def parse_int() -> int:
        nonlocal pos
        skip_ws()
        start = pos
        if pos < n and text[pos] in "+-":
            pos += 1
        while pos < n and text[pos].isdigit():
            pos += 1
        if pos == start or not text[start:pos].lstrip("+-"):
            raise BundleExprError("expected integer", start)
        return int(text[start:pos])

    def parse_factor() -> Tree:
        nonlocal pos
        skip_ws()
        if pos >= n:
            raise BundleExprError("expected a bundle factor", pos)
        if text.startswith("dual", pos):
            pos += 4
            expect("(")
            inner = parse_expr()
            expect(")")
            node: Tree = ("dual", inner)
        elif text[pos] in "OU":
            node = ("atom", text[pos])
            pos += 1
        else:
            raise BundleExprError(f"unexpected {text[pos]!r}", pos)
        skip_ws()
        if pos < n and text[pos] == "(":
            pos += 1
            k = parse_int()
            expect(")")
            node = ("twist", node, k)
        return node

    def parse_expr() -> Tree:
        nonlocal pos
        node = parse_factor()
        while True:
            skip_ws()
            if pos < n and text[pos] == "*":
                pos += 1
                node = ("tensor", node, parse_factor())
            else:
                return node

    tree = parse_expr()
    skip_ws()
    if pos != n:
        raise BundleExprError(f"unexpected trailing {text[pos]!r}", pos)
    return tree


def build_bundle(tree: Tree) -> HomogBundle:
    kind = tree[0]
    if kind == "atom":
        return O() if tree[1] == "O" else U()
    if kind == "dual":
        return build_bundle(tree[1]).dual()
    if kind == "twist":
        return build_bundle(tree[1]).twist(tree[2])
    if kind == "tensor":
        return build_bundle(tree[1]) * build_bundle(tree[2])
    raise ValueError(f"malformed bundle tree {tree!r}")


def make_bundle(expr: Union[str, Tree, HomogBundle]) -> HomogBundle:
    """Build a bundle from an expression string (or an already parsed tree)."""
    if isinstance(expr, HomogBundle):
        return expr
    if isinstance(expr, str):
        return build_bundle(parse_bundle_expr(expr))
    return build_bundle(expr)


# ---------------------------------------------------------------------------
# cohomology
# ---------------------------------------------------------------------------


@functools.lru_cache(maxsize=None)
def _irreducible_cohomology(coords: tuple[Fraction, ...]) -> Optional[tuple[int, int]]:
    reg = bbw_regularize(Weight(coords))
    if reg is None:
        return None
    length, dom = reg
    lam = dom - Weight((4, 3, 2, 1, 0))
    return length, weyl_dim(lam, "D5")


def cohomology(b: HomogBundle) -> CohomologyTable:
    """Sheaf cohomology on the tenfold, summand by summand."""
    dims: Counter = Counter()
    for w, m in b.summands:
        hit = _irreducible_cohomology(w.coords)
        if hit is not None:
            degree, dim = hit
            dims[degree] += m * dim
    table = CohomologyTable.from_dict(dict(dims))
    if any(d > DIM for d, _ in table.entries):
        raise ArithmeticError(f"cohomological degree above {DIM} for {b}")
    return table


def hilbert(b: HomogBundle, k: int) -> int:
    """Euler characteristic of b(k); a polynomial of degree <= 10 in k."""
    return cohomology(b.twist(k)).euler


def tenfold_degree() -> int:
    """10! times the leading coefficient of k -> chi(O(k)); equals 12."""
    acc = 0
    for j in range(DIM + 1):
        acc += (-1) ** (DIM - j) * comb(DIM, j) * hilbert(O(), j)
    return acc  # the 10th finite difference of a degree-10 polynomial is 10! a_10
