"""Restricted cochains of W in degrees 2 and 3, coboundaries, and H^0..H^2.

A restricted 2-cochain is a pair (phi, omega) where phi is an ordinary
2-form and omega: W -> K satisfies the compatibility condition tying its
values on sums to phi,

    omega(g + h) = omega(g) + omega(h)
                   + sum over sequences (g_1, ..., g_p), g_1 = g, g_2 = h,
                     g_i in {g, h}, of
                     (1 / #(g)) * phi([g_1, ..., g_{p-1}] ^ g_p),

together with omega(c*g) = c^p omega(g); #(g) counts the positions among
all p factors equal to g.  Such an omega is pinned down by its values on
the basis, so (phi, omega) is coordinatized by the C(p,2) coefficients of
phi plus the p basis values of omega, giving dim C^2 = p(p+1)/2.

Restricted 3-cochains (alpha, beta) work the same way with beta linear in
the first slot, p-semilinear in the second, and a correction sum tying
beta to alpha; coordinates are the C(p,3) coefficients of alpha plus the
p^2 values beta(e_i, e_j), giving dim C^3 = p(p+1)(p+2)/6.

The coboundaries are d1(psi) = (d1_cl(psi), psi o [p]) and
d2(phi, omega) = (d2_cl(phi), ind2(phi, omega)) with

    ind2(phi, omega)(g, h) = phi(g ^ h^{[p]}) - phi([g, h, ..., h] ^ h).

The correction sums are exponential in p (2^{p-2} sequences); general
omega/beta evaluation is therefore gated to small p (default 13).  All
dimension computations are pure linear algebra on the coordinate spaces
and run for every supported prime.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gfp import PrimeField
from .ordinary import (
    Cochain1,
    Cochain2Ord,
    Cochain3Ord,
    c2_zero,
    delta1_cl,
    delta1_matrix,
    delta2_cl,
    delta2_matrix,
    pair_position,
    virasoro_cocycle,
    wedge_normalize,
    wedge_pairs,
    wedge_triples,
)
from .witt import (
    WittElement,
    _inverse_vector,
    basis_element,
    bracket,
    normalize_index,
    pth_power_basis,
    right_bracket_matrix,
    zero,
)

DEFAULT_ENUM_LIMIT = 13


class EnumerationLimitError(RuntimeError):
    """A correction-sum enumeration was requested above the configured prime limit."""


class NotACocycleError(ValueError):
    """An operation requiring a restricted 2-cocycle got a non-cocycle."""


@dataclass(frozen=True)
class Cochain2Res:
    """Restricted 2-cochain (phi, omega) in coordinates: phi plus omega's basis values."""

    phi: Cochain2Ord
    omega_basis: tuple[int, ...]

    def __post_init__(self) -> None:
        p = self.phi.field.p
        if len(self.omega_basis) != p:
            raise ValueError(f"need {p} omega values, got {len(self.omega_basis)}")
        object.__setattr__(self, "omega_basis", tuple(v % p for v in self.omega_basis))

    @property
    def field(self) -> PrimeField:
        return self.phi.field

    def omega_value(self, i: int) -> int:
        """omega(e_i)."""
        return self.omega_basis[i + 1]

    def __add__(self, other: "Cochain2Res") -> "Cochain2Res":
        return Cochain2Res(
            self.phi + other.phi,
            tuple(a + b for a, b in zip(self.omega_basis, other.omega_basis)),
        )

    def __sub__(self, other: "Cochain2Res") -> "Cochain2Res":
        return Cochain2Res(
            self.phi - other.phi,
            tuple(a - b for a, b in zip(self.omega_basis, other.omega_basis)),
        )

    def __rmul__(self, scalar: int) -> "Cochain2Res":
        return Cochain2Res(scalar * self.phi, tuple(scalar * a for a in self.omega_basis))

    def is_zero(self) -> bool:
        return self.phi.is_zero() and not any(self.omega_basis)


@dataclass(frozen=True)
class Cochain3Res:
    """Restricted 3-cochain (alpha, beta): alpha plus the p x p table beta(e_i, e_j)."""

    alpha: Cochain3Ord
    beta_basis: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        p = self.alpha.field.p
        if len(self.beta_basis) != p or any(len(row) != p for row in self.beta_basis):
            raise ValueError(f"beta table must be {p} x {p}")
        object.__setattr__(
            self, "beta_basis", tuple(tuple(v % p for v in row) for row in self.beta_basis)
        )

    @property
    def field(self) -> PrimeField:
        return self.alpha.field

    def beta_value(self, i: int, j: int) -> int:
        """beta(e_i, e_j)."""
        return self.beta_basis[i + 1][j + 1]

    def is_zero(self) -> bool:
        return self.alpha.is_zero() and not any(any(row) for row in self.beta_basis)


def c2res_zero(field: PrimeField) -> Cochain2Res:
    return Cochain2Res(c2_zero(field), (0,) * field.p)


def omega_coordinate(field: PrimeField, i: int) -> Cochain2Res:
    """The cocycle (0, omega_i): omega_i picks the e_i coordinate to the p-th power."""
    if not -1 <= i <= field.p - 2:
        raise ValueError(f"basis index {i} out of range for p={field.p}")
    vals = [0] * field.p
    vals[i + 1] = 1
    return Cochain2Res(c2_zero(field), tuple(vals))


def virasoro_cochain(field: PrimeField) -> Cochain2Res:
    """The restricted cocycle (phi, omega) with cubic phi and omega = 0 on the basis."""
    return Cochain2Res(virasoro_cocycle(field), (0,) * field.p)


def _check_enum(p: int, enum_limit: int) -> None:
    if p > enum_limit:
        raise EnumerationLimitError(
            f"correction-sum enumeration has 2^{p - 2} terms; p={p} exceeds the "
            f"limit {enum_limit} (raise enum_limit to force it)"
        )


def _chain_leaves(g: WittElement, h: WittElement) -> tuple[np.ndarray, np.ndarray]:
    """All chain values [g_1, ..., g_{p-1}] with g_1 = g, g_2 = h, g_i in {g, h}.

    Returns (rows of chain coefficient vectors, count of g's used per row).
    Prefix sharing: each doubling step appends one factor, so the whole
    2^{p-3}-leaf tree costs a pair of matrix products per level.
    """
    p = g.p
    bg = right_bracket_matrix(g)
    bh = right_bracket_matrix(h)
    x = np.array([bracket(g, h).coeffs], dtype=np.int64)
    counts = np.array([1], dtype=np.int64)
    for _ in range(p - 3):
        x = np.vstack(((x @ bg) % p, (x @ bh) % p))
        counts = np.concatenate((counts + 1, counts))
    return x, counts


def star_correction(
    phi: Cochain2Ord, g: WittElement, h: WittElement, enum_limit: int = DEFAULT_ENUM_LIMIT
) -> int:
    """The sequence sum tying omega(g + h) to omega(g) + omega(h) for this phi.

    Sum over all (g_1, ..., g_p) with g_1 = g, g_2 = h and the rest free in
    {g, h} of (1/#(g)) phi([g_1, ..., g_{p-1}] ^ g_p), #(g) counting among
    all p factors.
    """
    if g.field.p != h.field.p or g.field.p != phi.field.p:
        raise ValueError("mismatched fields")
    p = g.p
    if phi.is_zero() or g.is_zero() or h.is_zero():
        return 0
    _check_enum(p, enum_limit)
    chains, counts = _chain_leaves(g, h)
    m = phi.to_matrix()
    inv = _inverse_vector(p)
    gv = np.array(g.coeffs, dtype=np.int64)
    hv = np.array(h.coeffs, dtype=np.int64)
    with_g = (chains @ m @ gv) % p  # last factor g_p = g: one more g
    with_h = (chains @ m @ hv) % p  # last factor g_p = h
    total = (inv[counts + 1] * with_g + inv[counts] * with_h).sum()
    return int(total % p)


def eval_omega(
    c: Cochain2Res,
    g: WittElement,
    enum_limit: int = DEFAULT_ENUM_LIMIT,
    fold_order=None,
) -> int:
    """omega(g), folding g's basis terms through the compatibility condition.

    The fold accumulates v <- v + a*e_i using
        omega(v + a*e_i) = omega(v) + a^p omega(e_i) + star_correction(phi, v, a*e_i).
    fold_order may permute the support; the value is fold-order invariant
    (exercised by tests), ascending order is the default.
    """
    field = c.field
    p = field.p
    support = g.support()
    order = support if fold_order is None else list(fold_order)
    if sorted(order) != support:
        raise ValueError("fold_order must be a permutation of the support")
    total = 0
    acc = zero(field)
    for i in order:
        a = g.coeff(i)
        term = basis_element(field, i, a)
        total += pow(a, p, p) * c.omega_value(i)
        if not acc.is_zero():
            total += star_correction(c.phi, acc, term, enum_limit=enum_limit)
        acc = acc + term
    return total % p


def delta1_res(psi: Cochain1) -> Cochain2Res:
    """d1(psi) = (d1_cl(psi), psi o [p]); the omega part is psi(e_0) at index 0."""
    field = psi.field
    omega = tuple(psi.value(pth_power_basis(field, i)) for i in range(-1, field.p - 1))
    return Cochain2Res(delta1_cl(psi), omega)


def ind2(c: Cochain2Res) -> np.ndarray:
    """The p x p table phi(e_a ^ e_b^{[p]}) - phi([e_a, e_b, ..., e_b] ^ e_b).

    The chain holds p-1 factors of e_b and stays a multiple of a single
    basis vector, so it reduces to the scalar recurrence in _basis_chain
    (checked against the generic bracket chain in the tests).  On W the
    table vanishes identically, which is what collapses the restricted
    kernel computation onto the ordinary one; it is recomputed honestly
    every time rather than assumed.
    """
    field = c.field
    p = field.p
    phi = c.phi
    table = np.zeros((p, p), dtype=np.int64)
    for a in range(-1, p - 1):
        for b in range(-1, p - 1):
            first = phi.value(a, 0) if b == 0 else 0
            coeff, m = _basis_chain(p, a, b)
            second = coeff * phi.value(m, b)
            table[a + 1, b + 1] = (first - second) % p
    return table


def delta2_res(c: Cochain2Res) -> Cochain3Res:
    """d2(phi, omega) = (d2_cl(phi), ind2(phi, omega))."""
    table = ind2(c)
    return Cochain3Res(delta2_cl(c.phi), tuple(tuple(int(v) for v in row) for row in table))


def is_cocycle(c: Cochain2Res) -> bool:
    return delta2_res(c).is_zero()


def starstar_correction(
    alpha: Cochain3Ord,
    g: WittElement,
    h1: WittElement,
    h2: WittElement,
    enum_limit: int = DEFAULT_ENUM_LIMIT,
) -> int:
    """The sequence sum tying beta(g, h1 + h2) to beta(g, h1) + beta(g, h2).

    Sum over (l_1, ..., l_p) in {1, 2}^p with l_1 = 1, l_2 = 2 of
    (1/#{i : l_i = 1}) alpha(g ^ [h_{l_1}, ..., h_{l_{p-1}}] ^ h_{l_p}).
    """
    p = alpha.field.p
    if alpha.is_zero() or g.is_zero() or h1.is_zero() or h2.is_zero():
        return 0
    _check_enum(p, enum_limit)
    chains, counts = _chain_leaves(h1, h2)
    dense = alpha.to_dense()
    gv = np.array(g.coeffs, dtype=np.int64)
    t = np.einsum("m,mij->ij", gv, dense) % p  # t[i, j] = alpha(g ^ e_{i-1} ^ e_{j-1})
    inv = _inverse_vector(p)
    v1 = (chains @ t @ np.array(h1.coeffs, dtype=np.int64)) % p
    v2 = (chains @ t @ np.array(h2.coeffs, dtype=np.int64)) % p
    total = (inv[counts + 1] * v1 + inv[counts] * v2).sum()
    return int(total % p)


def eval_beta(
    c: Cochain3Res, g: WittElement, h: WittElement, enum_limit: int = DEFAULT_ENUM_LIMIT
) -> int:
    """beta(g, h): linear in g, folded over h's basis terms with the correction sum."""
    field = c.field
    p = field.p

    def beta_on_basis(j: int) -> int:
        return sum(g.coeff(m) * c.beta_value(m, j) for m in g.support()) % p

    total = 0
    acc = zero(field)
    for j in h.support():
        a = h.coeff(j)
        term = basis_element(field, j, a)
        total += pow(a, p, p) * beta_on_basis(j)
        if not acc.is_zero():
            total -= starstar_correction(c.alpha, g, acc, term, enum_limit=enum_limit)
        acc = acc + term
    return total % p


# ---------------------------------------------------------------------------
# Coordinates and matrices


def c2_dim(p: int) -> int:
    """Coordinate dimension of restricted 2-cochains: C(p,2) + p."""
    return p * (p - 1) // 2 + p


def c3_dim(p: int) -> int:
    """Coordinate dimension of restricted 3-cochains: C(p,3) + p^2."""
    return p * (p - 1) * (p - 2) // 6 + p * p


def c2_to_vector(c: Cochain2Res) -> np.ndarray:
    return np.concatenate([c.phi.to_vector(), np.array(c.omega_basis, dtype=np.int64)])


def c2_from_vector(field: PrimeField, vec) -> Cochain2Res:
    vec = np.asarray(vec, dtype=np.int64) % field.p
    n = field.p * (field.p - 1) // 2
    if vec.shape != (n + field.p,):
        raise ValueError(f"expected a vector of length {n + field.p}")
    phi = Cochain2Ord(field, tuple(int(v) for v in vec[:n]))
    return Cochain2Res(phi, tuple(int(v) for v in vec[n:]))


def delta1_res_matrix(field: PrimeField) -> np.ndarray:
    """Matrix of d1: p columns into C(p,2) + p coordinates."""
    p = field.p
    bottom = np.zeros((p, p), dtype=np.int64)
    bottom[1, 1] = 1  # omega row of e_0, column of e^0: e^0(e_0^{[p]}) = 1
    return np.vstack([delta1_matrix(field), bottom])


def _basis_chain(p: int, a: int, b: int) -> tuple[int, int]:
    """(coefficient, index) of [e_a, e_b, ..., e_b] with p-1 factors of e_b."""
    coeff = 1
    m = a
    for _ in range(p - 1):
        coeff = coeff * (b - m) % p
        m = normalize_index(m + b, p)
        if coeff == 0:
            break
    return coeff, m


def delta2_res_matrix(field: PrimeField) -> np.ndarray:
    """Matrix of d2 on coordinates: C(p,3) + p^2 rows, C(p,2) + p columns.

    The alpha rows are the ordinary d2 matrix on the phi columns; the beta
    rows hold ind2 of each phi coordinate vector (omega columns contribute
    nothing to either block).
    """
    p = field.p
    pos = pair_position(p)
    n2, n3 = len(wedge_pairs(p)), len(wedge_triples(p))
    beta = np.zeros((p * p, n2), dtype=np.int64)
    for a in range(-1, p - 1):
        for b in range(-1, p - 1):
            row = (a + 1) * p + (b + 1)
            if b == 0:
                w = wedge_normalize(a, 0)
                if w is not None:
                    i, j, sign = w
                    beta[row, pos[(i, j)]] += sign
            coeff, m = _basis_chain(p, a, b)
            if coeff:
                w = wedge_normalize(m, b)
                if w is not None:
                    i, j, sign = w
                    beta[row, pos[(i, j)]] -= coeff * sign
    beta %= p
    top = np.hstack([delta2_matrix(field), np.zeros((n3, p), dtype=np.int64)])
    bottom = np.hstack([beta, np.zeros((p * p, p), dtype=np.int64)])
    return np.vstack([top, bottom])


@dataclass(frozen=True)
class RestrictedH2:
    """ker/im dimensions of the degree-2 computation with class representatives."""

    ker_dim: int
    im_dim: int
    h2_dim: int
    representatives: tuple[Cochain2Res, ...]


def restricted_h2(field: PrimeField) -> RestrictedH2:
    """dim ker d2, dim im d1, dim H^2 and explicit cocycle representatives.

    The representatives are the cubic-coefficient cocycle paired with the
    zero basis omega (absent at p = 3) followed by the coordinate cocycles
    (0, omega_i); they are verified to be cocycles, independent modulo
    im d1, and to span ker d2 together with im d1, so they represent a
    basis of H^2 with no coboundary shift needed.
    """
    p = field.p
    d2 = delta2_res_matrix(field)
    d1 = delta1_res_matrix(field)
    ker = field.kernel_basis(d2)
    im_dim = field.rank(d1)
    h2_dim = len(ker) - im_dim
    reps: list[Cochain2Res] = []
    if p > 3:
        reps.append(virasoro_cochain(field))
    reps.extend(omega_coordinate(field, i) for i in range(-1, p - 1))
    rep_vectors = [c2_to_vector(r) for r in reps]
    for v in rep_vectors:
        if ((d2 @ v) % p).any():
            raise ArithmeticError("representative candidate is not a cocycle")
    im_cols = [d1[:, t] for t in range(p)]
    stacked = np.vstack(im_cols + rep_vectors)
    if field.rank(stacked) != im_dim + len(reps) or im_dim + len(reps) != len(ker):
        raise ArithmeticError("representatives do not complete im d1 to ker d2")
    return RestrictedH2(len(ker), im_dim, h2_dim, tuple(reps))


@dataclass(frozen=True)
class OrdinaryClass:
    """Image of a restricted class in ordinary degree-2 cohomology.

    is_zero says whether the phi part is an ordinary coboundary;
    virasoro_coefficient is its coefficient on the cubic generator modulo
    coboundaries (0 when the class is zero).
    """

    is_zero: bool
    virasoro_coefficient: int


def project_class_to_ordinary(c: Cochain2Res) -> OrdinaryClass:
    """Class of the phi part in ordinary H^2; input must be a restricted cocycle."""
    if not is_cocycle(c):
        raise NotACocycleError("projection is defined on cocycles only")
    field = c.field
    d1 = delta1_matrix(field)
    cols = [d1[:, t] for t in range(field.p)]
    target = c.phi.to_vector()
    if field.solve_membership(cols, target) is not None:
        return OrdinaryClass(True, 0)
    if field.p == 3:
        raise ArithmeticError("every cocycle phi is a coboundary at p = 3")
    gen = virasoro_cocycle(field).to_vector()
    coeffs = field.solve_membership(cols + [gen], target)
    if coeffs is None:
        raise ArithmeticError("cocycle phi is outside coboundaries + generator span")
    return OrdinaryClass(False, coeffs[-1])
