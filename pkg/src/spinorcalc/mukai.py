"""Euler pairings, numerical integral transforms, semiorthogonality
reports, class-level mutations, and the conic computations.

Everything works on Chern data over the truncated ring models.  The
pairing is chi(a, b) = integral of ch(a)^dual ch(b) td.  A kernel on a
product induces the transform

    a  |->  parity * push( pull(ch(a) * td(source)) * ch(kernel) ),

with the Todd class of the source riding along the pullback; shifts enter
only through the parity sign.  The convention is pinned by the adjunction
identities chi(transform(b), a) = chi(b, adjoint_transform(a)), which the
test suite checks over full bases, not by a literature choice.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Optional, Sequence, Union

from .intersect import (
    ChernData,
    CohClass,
    RingModel,
    chi,
    exp_class,
    hyperplane,
    integrate_left_fiber,
    integrate_right_fiber,
    lift_left,
    lift_right,
    model_curve,
    model_s,
    model_sdual,
    model_x,
    point_class,
    s_times_sdual,
    tautological_ch,
    todd,
    universal_ch,
    x_times_curve,
    x_times_sdual,
)

Q = Fraction


def _as_class(a: Union[ChernData, CohClass]) -> CohClass:
    return a.ch if isinstance(a, ChernData) else a


def euler(model: RingModel, a: Union[ChernData, CohClass], b: Union[ChernData, CohClass]) -> Q:
    """Euler pairing chi(a, b) on the model."""
    ca, cb = _as_class(a), _as_class(b)
    if ca.model is not model or cb.model is not model:
        raise ValueError("classes do not live on the stated model")
    return chi(model, ca, cb)


# ---------------------------------------------------------------------------
# kernels and transforms
# ---------------------------------------------------------------------------


Side = Literal["left", "right"]


@dataclass(frozen=True)
class KernelSpec:
    """A cohomological integral-transform kernel on a product model."""

    name: str
    product: RingModel
    source_side: Side
    kernel_ch: CohClass
    shift_parity: int

    def __post_init__(self) -> None:
        if self.kernel_ch.model is not self.product:
            raise ValueError("kernel class must live on the product model")
        if self.shift_parity not in (1, -1):
            raise ValueError("shift parity must be +1 or -1")

    @property
    def source(self) -> RingModel:
        return self.product.factors[0 if self.source_side == "left" else 1]

    @property
    def target(self) -> RingModel:
        return self.product.factors[1 if self.source_side == "left" else 0]


def transform(K: KernelSpec, a: Union[ChernData, CohClass]) -> CohClass:
    """Apply the numerical transform of the kernel to a class on its source."""
    ca = _as_class(a)
    if ca.model is not K.source:
        raise ValueError(f"class lives on {ca.model.name}, kernel source is {K.source.name}")
    f = ca * todd(K.source)
    if K.source_side == "left":
        w = lift_left(K.product, f) * K.kernel_ch
        out = integrate_left_fiber(K.product, w)
    else:
        w = lift_right(K.product, f) * K.kernel_ch
        out = integrate_right_fiber(K.product, w)
    return out.scale(K.shift_parity)


def _twist_exp(prod: RingModel, left_mult: int, right_mult: int) -> CohClass:
    left, right = prod.factors
    line = lift_left(prod, hyperplane(left)).scale(left_mult) \
        + lift_right(prod, hyperplane(right)).scale(right_mult)
    return exp_class(line)


@functools.lru_cache(maxsize=None)
def kernel_phi1() -> KernelSpec:
    """Transform from the dual-curve classes to the threefold: kernel E1."""
    prod = x_times_curve()
    return KernelSpec("phi1", prod, "right", universal_ch("XxC").ch, 1)


@functools.lru_cache(maxsize=None)
def kernel_phi1_left() -> KernelSpec:
    """Left adjoint of phi1: kernel E1(-2H_X - H_C) with an odd shift."""
    prod = x_times_curve()
    k = universal_ch("XxC").ch * _twist_exp(prod, -2, -1)
    return KernelSpec("phi1-left", prod, "left", k, -1)


@functools.lru_cache(maxsize=None)
def kernel_phi1_shriek() -> KernelSpec:
    """Right adjoint of phi1: kernel dual(E1)(H_C) with an odd shift."""
    prod = x_times_curve()
    k = universal_ch("XxC").ch.dual() * _twist_exp(prod, 0, 1)
    return KernelSpec("phi1-shriek", prod, "left", k, -1)


@functools.lru_cache(maxsize=None)
def kernel_phi2() -> KernelSpec:
    """Transform from the dual-K3 classes to the K3: kernel E2."""
    prod = s_times_sdual()
    return KernelSpec("phi2", prod, "right", universal_ch("SxS").ch, 1)


@functools.lru_cache(maxsize=None)
def kernel_phi2_left() -> KernelSpec:
    """Left adjoint of phi2: kernel E2(-H_S - H_Sd) with an even shift."""
    prod = s_times_sdual()
    k = universal_ch("SxS").ch * _twist_exp(prod, -1, -1)
    return KernelSpec("phi2-left", prod, "left", k, 1)


@functools.lru_cache(maxsize=None)
def kernel_e_tilde() -> KernelSpec:
    """The glued kernel on threefold x dual-K3, twisted by -H_X - H_Sd.

    Its character is ch(dual U_+) - ch(U_-), the cone of the tautological
    pairing map, so the transform splits into a chi(a, O)-multiple of
    U_-(-H_Sd) and a chi(a, U_+)-multiple of O(-H_Sd).
    """
    prod = x_times_sdual()
    ch_tilde = lift_left(prod, tautological_ch(model_x()).dual().ch) \
        - lift_right(prod, tautological_ch(model_sdual()).ch)
    return KernelSpec("E-tilde", prod, "left", ch_tilde * _twist_exp(prod, -1, -1), -1)


def _kernel_u_piece(which: Literal["sub", "quotient-dual"]) -> KernelSpec:
    """The two split pieces of the glued kernel, for the factorization check."""
    prod = x_times_sdual()
    if which == "sub":
        ch = lift_right(prod, tautological_ch(model_sdual()).ch)
    else:
        ch = lift_left(prod, tautological_ch(model_x()).dual().ch)
    return KernelSpec(f"u-piece-{which}", prod, "left", ch * _twist_exp(prod, -1, -1), -1)


KERNELS = {
    "phi1": kernel_phi1,
    "phi1-left": kernel_phi1_left,
    "phi1-shriek": kernel_phi1_shriek,
    "phi2": kernel_phi2,
    "phi2-left": kernel_phi2_left,
    "E-tilde": kernel_e_tilde,
}


# ---------------------------------------------------------------------------
# named classes
# ---------------------------------------------------------------------------


def class_o(model: RingModel) -> ChernData:
    return ChernData(1, CohClass.unit(model))


def class_point(model: RingModel) -> ChernData:
    return ChernData(0, point_class(model))


def class_u_plus() -> ChernData:
    return tautological_ch(model_x())


def class_u_plus_dual() -> ChernData:
    return tautological_ch(model_x()).dual()


def class_o_conic() -> ChernData:
    """Structure class of a conic: a degree-2 rational curve, chi(O) = 1.

    Arithmetic genus zero forces ch = 2L with no point correction.
    """
    return ChernData(0, CohClass.basis_class(model_x(), "L", 2))


@functools.lru_cache(maxsize=None)
def class_e1y() -> ChernData:
    """The rank-2 threefold bundle attached to a point of the dual curve."""
    out = transform(kernel_phi1(), class_point(model_curve()))
    return ChernData(2, out)


@functools.lru_cache(maxsize=None)
def class_e2y() -> ChernData:
    """The rank-2 K3 bundle attached to a point of the dual K3."""
    out = transform(kernel_phi2(), class_point(model_sdual()))
    return ChernData(2, out)


NAMED_CLASSES = {
    "O": lambda: class_o(model_x()),
    "O_X": lambda: class_o(model_x()),
    "U": class_u_plus,
    "U-plus": class_u_plus,
    "O_R": class_o_conic,
    "E1y": class_e1y,
    "pt_X": lambda: class_point(model_x()),
    "O_C": lambda: class_o(model_curve()),
    "pt": lambda: class_point(model_curve()),
    "O_S": lambda: class_o(model_s()),
    "E2y": class_e2y,
    "pt_S": lambda: class_point(model_s()),
    "O_Sd": lambda: class_o(model_sdual()),
    "pt_Sd": lambda: class_point(model_sdual()),
}


def named_class(name: str, model: Optional[RingModel] = None) -> ChernData:
    """Look up a named constant class, optionally checking its model."""
    if name not in NAMED_CLASSES:
        raise ValueError(f"unknown class {name!r}; known: {sorted(NAMED_CLASSES)}")
    data = NAMED_CLASSES[name]()
    if model is not None and data.model is not model:
        raise ValueError(f"class {name} lives on {data.model.name}, not {model.name}")
    return data


# ---------------------------------------------------------------------------
# Gram reports, mutations, the commuting-diagram check
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GramReport:
    """Pairing matrix of a collection with exceptionality/orthogonality flags.

    ``blocks`` partitions the collection into consecutive blocks; the
    semiorthogonality verdict asks every pairing from a later block into
    an earlier one to vanish.
    """

    labels: tuple[str, ...]
    matrix: tuple[tuple[Q, ...], ...]
    blocks: tuple[int, ...]
    exceptional: tuple[bool, ...]
    semiorthogonal: bool

    def to_json(self) -> dict:
        return {
            "labels": list(self.labels),
            "matrix": [[str(x) for x in row] for row in self.matrix],
            "blocks": list(self.blocks),
            "exceptional": list(self.exceptional),
            "semiorthogonal": self.semiorthogonal,
        }


def gram(collection: Sequence[tuple[str, ChernData]], model: RingModel,
         blocks: Optional[Sequence[int]] = None) -> GramReport:
    """Full Euler-pairing matrix with numerical SOD verdicts."""
    labels = tuple(label for label, _ in collection)
    datas = [data for _, data in collection]
    matrix = tuple(tuple(euler(model, a, b) for b in datas) for a in datas)
    sizes = tuple(blocks) if blocks is not None else tuple(1 for _ in datas)
    if sum(sizes) != len(datas):
        raise ValueError("block sizes must sum to the collection length")
    block_of = []
    for bi, s in enumerate(sizes):
        block_of.extend([bi] * s)
    semi = all(matrix[i][j] == 0
               for i in range(len(datas)) for j in range(len(datas))
               if block_of[i] > block_of[j])
    exceptional = tuple(matrix[i][i] == 1 for i in range(len(datas)))
    return GramReport(labels, matrix, sizes, exceptional, semi)


def mutate(a: ChernData, through: ChernData, model: RingModel,
           direction: Literal["left", "right"]) -> ChernData:
    """Class-level mutation: the chi-weighted reflection through an object.

    Right mutation uses chi(a, through), left mutation chi(through, a);
    mutating through an orthogonal object returns the class up to sign.
    """
    if direction == "right":
        c = euler(model, a, through)
    elif direction == "left":
        c = euler(model, through, a)
    else:
        raise ValueError("direction must be left or right")
    ch = through.ch.scale(c) - a.ch
    rank = c * through.rank - a.rank
    if rank.denominator != 1:
        raise ArithmeticError("mutation produced a non-integral rank")
    return ChernData(int(rank), ch)


class OrthogonalityError(ValueError):
    """A class failed the numerical orthogonality precondition."""


def commdiag_check(a: ChernData) -> bool:
    """Check the vanishing of the glued-kernel transform on an orthogonal class.

    Precondition: chi(a, U_+) = chi(a, O) = 0 (numerical membership in the
    left orthogonal of the exceptional pair).  Verifies that the two split
    pieces of the glued kernel evaluate to the predicted chi-multiples and
    that the glued transform itself vanishes identically.
    """
    m = model_x()
    chi_u = euler(m, a, class_u_plus())
    chi_o = euler(m, a, class_o(m))
    if chi_u != 0 or chi_o != 0:
        raise OrthogonalityError(
            f"class pairs to chi(a,U)={chi_u}, chi(a,O)={chi_o}; both must vanish")

    prod = x_times_sdual()
    sd = model_sdual()
    h_sd = hyperplane(sd)
    # Piece through U_-: -(chi(a, O)) * ch(U_-(-H)); piece through dual U_+:
    # -(chi(a, U_+)) * ch(O(-H)).  Serre duality on the threefold gives the signs.
    piece_sub = transform(_kernel_u_piece("sub"), a)
    expect_sub = (tautological_ch(sd).twisted(-1 * h_sd).ch).scale(chi_o)
    piece_quot = transform(_kernel_u_piece("quotient-dual"), a)
    expect_quot = exp_class(-1 * h_sd).scale(chi_u)
    if piece_sub != expect_sub or piece_quot != expect_quot:
        raise ArithmeticError("split pieces of the glued kernel missed their chi-multiples")
    return transform(kernel_e_tilde(), a).is_zero


def orthogonal_complement_basis() -> list[ChernData]:
    """A rational basis of the numerical left orthogonal of (U_+, O).

    Exact kernel computation of the 2 x 4 pairing matrix against the
    model basis of the threefold.
    """
    m = model_x()
    basis = [CohClass.basis_class(m, l) for l in m.basis]
    u = class_u_plus()
    o = class_o(m)
    rows = [[chi(m, v, u.ch) for v in basis], [chi(m, v, o.ch) for v in basis]]
    ker = _kernel_basis(rows)
    out = []
    for vec in ker:
        cls = CohClass(m, {l: c for l, c in zip(m.basis, vec)})
        rank = cls.coefficient("1")
        if rank.denominator != 1:
            vec = [c * rank.denominator for c in vec]
            cls = CohClass(m, {l: c for l, c in zip(m.basis, vec)})
        out.append(ChernData(int(cls.coefficient("1")), cls))
    return out


def _kernel_basis(rows: list[list[Q]]) -> list[list[Q]]:
    """Kernel of a small exact rational matrix by Gaussian elimination."""
    if not rows:
        return []
    n = len(rows[0])
    mat = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        mat[r] = [x / mat[r][c] for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    free = [c for c in range(n) if c not in pivots]
    ker = []
    for fc in free:
        vec = [Q(0)] * n
        vec[fc] = Q(1)
        for pr, pc in enumerate(pivots):
            vec[pc] = -mat[pr][fc]
        ker.append(vec)
    return ker


def matrix_rank(rows: list[list[Q]]) -> int:
    n = len(rows[0]) if rows else 0
    return n - len(_kernel_basis([list(r) for r in rows])) if rows else 0


def transform_matrix(K: KernelSpec) -> list[list[Q]]:
    """Matrix of the transform on the source model basis, rows = images."""
    src = K.source
    return [list(transform(K, CohClass.basis_class(src, l)).coeffs.get(l2, Q(0))
                 for l2 in K.target.basis)
            for l in src.basis]
