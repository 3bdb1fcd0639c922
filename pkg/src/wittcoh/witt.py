"""The modular Witt algebra over GF(p).

W = Der(A) for A = GF(p)[x]/(x^p - 1) has basis e_{-1}, ..., e_{p-2} with
e_i = x^{i+1} d/dx and bracket [e_i, e_j] = (j - i) e_{i+j}, the index sum
taken mod p and normalized back into the window {-1, ..., p-2}.

W carries a restricted structure: e_0^{[p]} = e_0, e_i^{[p]} = 0 for
i != 0, and the p-th power of a general element is determined from the
basis values by the summand expansion

    (g + h)^{[p]} = g^{[p]} + h^{[p]} + sum_{i=1}^{p-1} s_i(g, h),

where i * s_i(g, h) is the coefficient of lambda^{i-1} in the iterated
bracket [g, lambda*g + h, ..., lambda*g + h] with p - 1 bracket
applications (brackets taken from the right, so [x, a] is one
application of a to x).

Two independent p-th power algorithms are provided: the fold over basis
terms driven by that expansion, and (p-1)-fold composition of the
underlying derivation with itself, using that the p-th power of D = f*d/dx
is the derivation sending x to D^{p-1}(f).  Agreement of the two routes is
a strong consistency check and is exercised heavily by the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .gfp import PrimeField

# Above this many coefficient products a bracket switches to the cached
# structure-tensor contraction; below it, sparse loops win.
_DENSE_BRACKET_THRESHOLD = 64


class ProportionalityError(ArithmeticError):
    """A p-th power failed to be a scalar multiple of its argument."""


def normalize_index(m: int, p: int) -> int:
    """Reduce an integer mod p into the basis-index window {-1, ..., p-2}."""
    return (m + 1) % p - 1


@dataclass(frozen=True)
class WittElement:
    """Element of W as a coefficient vector; coeffs[i + 1] multiplies e_i."""

    field: PrimeField
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        p = self.field.p
        if len(self.coeffs) != p:
            raise ValueError(f"need {p} coefficients, got {len(self.coeffs)}")
        object.__setattr__(self, "coeffs", tuple(c % p for c in self.coeffs))

    @property
    def p(self) -> int:
        return self.field.p

    def coeff(self, i: int) -> int:
        """Coefficient of e_i, for i in {-1, ..., p-2}."""
        if not -1 <= i <= self.p - 2:
            raise ValueError(f"basis index {i} out of range for p={self.p}")
        return self.coeffs[i + 1]

    def support(self) -> list[int]:
        """Basis indices with nonzero coefficient, ascending."""
        return [t - 1 for t, c in enumerate(self.coeffs) if c]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other: "WittElement") -> "WittElement":
        _check_same_field(self, other)
        return WittElement(self.field, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "WittElement") -> "WittElement":
        _check_same_field(self, other)
        return WittElement(self.field, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "WittElement":
        return WittElement(self.field, tuple(-a for a in self.coeffs))

    def __rmul__(self, scalar: int) -> "WittElement":
        return WittElement(self.field, tuple(scalar * a for a in self.coeffs))

    def __repr__(self) -> str:
        terms = []
        for i in self.support():
            c = self.coeff(i)
            terms.append(f"e{i}" if c == 1 else f"{c}*e{i}")
        return " + ".join(terms) if terms else "0"


def zero(field: PrimeField) -> WittElement:
    return WittElement(field, (0,) * field.p)


def basis_element(field: PrimeField, i: int, coefficient: int = 1) -> WittElement:
    """coefficient * e_i."""
    if not -1 <= i <= field.p - 2:
        raise ValueError(f"basis index {i} out of range for p={field.p}")
    coeffs = [0] * field.p
    coeffs[i + 1] = coefficient % field.p
    return WittElement(field, tuple(coeffs))


def from_dict(field: PrimeField, terms: dict[int, int]) -> WittElement:
    """Element from a {basis index: coefficient} mapping."""
    coeffs = [0] * field.p
    for i, c in terms.items():
        if not -1 <= i <= field.p - 2:
            raise ValueError(f"basis index {i} out of range for p={field.p}")
        coeffs[i + 1] = (coeffs[i + 1] + c) % field.p
    return WittElement(field, tuple(coeffs))


def random_element(field: PrimeField, rng, nonzero: bool = False) -> WittElement:
    while True:
        g = WittElement(field, tuple(rng.randrange(field.p) for _ in range(field.p)))
        if not nonzero or not g.is_zero():
            return g


def _check_same_field(x: WittElement, y: WittElement) -> None:
    if x.field.p != y.field.p:
        raise ValueError(f"elements live over different fields (p={x.field.p} vs p={y.field.p})")


@lru_cache(maxsize=None)
def _bracket_tensor(p: int) -> np.ndarray:
    """T[s, t, m] with [e_{s-1}, e_{t-1}] = sum_m T[s, t, m] e_{m-1}."""
    t = np.zeros((p, p, p), dtype=np.int64)
    for s in range(p):
        for u in range(p):
            t[s, u, (s + u - 1) % p] = (u - s) % p
    return t


def bracket(x: WittElement, y: WittElement) -> WittElement:
    """Lie bracket, the bilinear extension of [e_i, e_j] = (j - i) e_{i+j}."""
    _check_same_field(x, y)
    p = x.p
    sx = [(s, a) for s, a in enumerate(x.coeffs) if a]
    sy = [(t, b) for t, b in enumerate(y.coeffs) if b]
    if len(sx) * len(sy) >= _DENSE_BRACKET_THRESHOLD:
        xv = np.array(x.coeffs, dtype=np.int64)
        yv = np.array(y.coeffs, dtype=np.int64)
        res = np.einsum("s,t,stm->m", xv, yv, _bracket_tensor(p)) % p
        return WittElement(x.field, tuple(int(v) for v in res))
    res = [0] * p
    for s, a in sx:
        for t, b in sy:
            m = (s + t - 1) % p
            res[m] = (res[m] + a * b * (t - s)) % p
    return WittElement(x.field, tuple(res))


def bracket_chain(first: WittElement, rest) -> WittElement:
    """Left-nested iterated bracket [[..[[g1, g2], g3], ..], gj]."""
    rest = list(rest)
    if not rest:
        raise ValueError("bracket chain needs at least two factors")
    acc = first
    for g in rest:
        acc = bracket(acc, g)
    return acc


def pth_power_basis(field: PrimeField, i: int) -> WittElement:
    """e_i^{[p]}: e_0 for i = 0 and zero otherwise."""
    if not -1 <= i <= field.p - 2:
        raise ValueError(f"basis index {i} out of range for p={field.p}")
    return basis_element(field, 0) if i == 0 else zero(field)


# A LambdaVector is a polynomial in lambda with W coefficients, stored as a
# list indexed by lambda-degree (at most p entries).
LambdaVector = list


def right_bracket_matrix(y: WittElement) -> np.ndarray:
    """Matrix B with (x @ B) = [x, y] on coefficient row vectors."""
    yv = np.array(y.coeffs, dtype=np.int64)
    return np.einsum("t,stm->sm", yv, _bracket_tensor(y.p)) % y.p


@lru_cache(maxsize=None)
def _inverse_vector(p: int) -> np.ndarray:
    """inv[i] = i^{-1} mod p for i >= 1 (slot 0 unused)."""
    inv = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        inv[a] = pow(a, p - 2, p)
    return inv


def _lambda_rows(gv: np.ndarray, hv: np.ndarray, p: int) -> np.ndarray:
    """Coefficient rows (by lambda-degree) of [g, lambda*g + h, ...], p-1 applications.

    Bracketing a lambda-polynomial with lambda*g + h sends degree k to
    degree k (the h part) and k+1 (the g part), so one application is two
    matrix products on the stacked rows.
    """
    tensor = _bracket_tensor(p)
    bg = np.einsum("t,stm->sm", gv, tensor) % p
    bh = np.einsum("t,stm->sm", hv, tensor) % p
    rows = gv.reshape(1, p)
    for _ in range(p - 1):
        grown = np.vstack([rows @ bh, np.zeros((1, p), dtype=np.int64)])
        grown[1:] += rows @ bg
        rows = grown % p
    return rows


def lambda_chain(g: WittElement, h: WittElement) -> LambdaVector:
    """The lambda-polynomial [g, lambda*g + h, ..., lambda*g + h], p-1 applications."""
    _check_same_field(g, h)
    gv = np.array(g.coeffs, dtype=np.int64)
    hv = np.array(h.coeffs, dtype=np.int64)
    rows = _lambda_rows(gv, hv, g.p)
    return [WittElement(g.field, tuple(int(v) for v in row)) for row in rows]


def jacobson_s(g: WittElement, h: WittElement) -> list[WittElement]:
    """The summands s_1, ..., s_{p-1}; i * s_i is a lambda-coefficient of lambda_chain."""
    field = g.field
    terms = lambda_chain(g, h)
    return [field.inv(i) * terms[i - 1] for i in range(1, field.p)]


def pth_power(g: WittElement, term_order=None) -> WittElement:
    """p-th power by folding the summand expansion over g's basis terms.

    Each fold step applies the sum axiom to (accumulated, next term), the
    summand total taken straight off the lambda-degree rows.  term_order
    may be any permutation of g.support(); the result does not depend on
    it (checked by tests), ascending order is the default.
    """
    field = g.field
    p = field.p
    support = g.support()
    order = support if term_order is None else list(term_order)
    if sorted(order) != support:
        raise ValueError("term_order must be a permutation of the support")
    inv = _inverse_vector(p)
    acc = np.zeros(p, dtype=np.int64)
    acc_power = np.zeros(p, dtype=np.int64)
    started = False
    for i in order:
        a = g.coeff(i)
        term = np.zeros(p, dtype=np.int64)
        term[i + 1] = a
        term_power = np.zeros(p, dtype=np.int64)
        if i == 0:
            term_power[1] = pow(a, p, p)
        if not started:
            acc, acc_power, started = term, term_power, True
            continue
        rows = _lambda_rows(acc, term, p)
        correction = (inv[1:p, None] * rows[: p - 1]).sum(axis=0)
        acc_power = (acc_power + term_power + correction) % p
        acc = (acc + term) % p
    return WittElement(field, tuple(int(v) for v in acc_power))


@dataclass(frozen=True)
class CyclicPoly:
    """Element of A = GF(p)[x]/(x^p - 1); coeffs[k] multiplies x^k."""

    field: PrimeField
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        p = self.field.p
        if len(self.coeffs) != p:
            raise ValueError(f"need {p} coefficients, got {len(self.coeffs)}")
        object.__setattr__(self, "coeffs", tuple(c % p for c in self.coeffs))

    def derivative(self) -> "CyclicPoly":
        """d/dx, well defined on A since d/dx(x^p - 1) = 0 in characteristic p."""
        p = self.field.p
        res = [0] * p
        for k, c in enumerate(self.coeffs):
            if k and c:
                res[k - 1] = (k * c) % p
        return CyclicPoly(self.field, tuple(res))

    def __mul__(self, other: "CyclicPoly") -> "CyclicPoly":
        # Cyclic convolution with x^p = 1; O(p^2) is plenty at these sizes.
        p = self.field.p
        res = [0] * p
        for s, a in enumerate(self.coeffs):
            if a:
                for t, b in enumerate(other.coeffs):
                    if b:
                        res[(s + t) % p] = (res[(s + t) % p] + a * b) % p
        return CyclicPoly(self.field, tuple(res))

    def is_zero(self) -> bool:
        return not any(self.coeffs)


def to_cyclic_poly(g: WittElement) -> CyclicPoly:
    """The coefficient polynomial f with g = f * d/dx (e_i maps to x^{i+1})."""
    p = g.field.p
    coeffs = [0] * p
    for i in g.support():
        coeffs[(i + 1) % p] = g.coeff(i)
    return CyclicPoly(g.field, tuple(coeffs))


def from_cyclic_poly(f: CyclicPoly) -> WittElement:
    """Inverse of to_cyclic_poly: x^k maps to e_{k-1}."""
    p = f.field.p
    coeffs = [0] * p
    for k, c in enumerate(f.coeffs):
        coeffs[k] = c  # x^k -> e_{k-1}, which sits at position (k - 1) + 1 = k
    return WittElement(f.field, tuple(coeffs))


def pth_power_via_derivation(g: WittElement) -> WittElement:
    """Independent p-th power: apply D: q -> f * dq/dx to f a total of p-1 times."""
    f = to_cyclic_poly(g)
    q = f
    for _ in range(g.p - 1):
        q = f * q.derivative()
    return from_cyclic_poly(q)


def gamma(g: WittElement) -> int:
    """The scalar with g^{[p]} = gamma(g) * g; defined for nonzero g."""
    if g.is_zero():
        raise ValueError("gamma is defined for nonzero elements only")
    field = g.field
    power = pth_power(g)
    i = g.support()[0]
    scalar = (power.coeff(i) * field.inv(g.coeff(i))) % field.p
    if power != scalar * g:
        raise ProportionalityError(f"p-th power of {g!r} is not proportional to it")
    return scalar
