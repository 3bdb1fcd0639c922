"""One-dimensional restricted central extensions E = W + K*c of the Witt algebra.

A restricted 2-cocycle (phi, omega) twists the bracket and the p-th power:

    [g + a*c, h + b*c] = [g, h] + phi(g, h) c
    (g + a*c)^{[p]}    = g^{[p]} + omega(g) c

with c central and c^{[p]} = 0.  Conversely a splitting sigma: W -> E
recovers a cocycle through the defect

    phi(g, h) = [sigma(g), sigma(h)] - sigma([g, h])
    omega(g)  = sigma(g)^{[p]} - sigma(g^{[p]})

and changing the splitting shifts the cocycle by a coboundary, so only the
cohomology class matters.

The extension stores explicit structure-constant and p-map tables over the
basis e_{-1}, ..., e_{p-2}, c; all bracket arithmetic inside E goes
through the tables (never back through the source cocycle), so the axiom
verifier genuinely exercises the built object, and a corrupted table is
caught by the Jacobi scan.  The p-th power of a general element needs
omega off the basis, which is where the source cocycle's fold comes in;
that the result satisfies the p-th power sum axiom inside E is then a
theorem the verifier confirms rather than an assumption.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass

import numpy as np

from .gfp import PrimeField
from .ordinary import Cochain1, Cochain2Ord, wedge_pairs
from .restricted import (
    DEFAULT_ENUM_LIMIT,
    Cochain2Res,
    NotACocycleError,
    c2_to_vector,
    delta1_res_matrix,
    eval_omega,
    is_cocycle,
    project_class_to_ordinary,
    omega_coordinate,
    virasoro_cochain,
)
from .witt import WittElement, basis_element, pth_power, zero


class NotASplittingError(ValueError):
    """A claimed splitting map does not project back to the identity on W."""


@dataclass(frozen=True)
class ExtElement:
    """Element g + a*c of the extension."""

    witt: WittElement
    central: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "central", self.central % self.witt.field.p)

    @property
    def field(self) -> PrimeField:
        return self.witt.field

    def is_zero(self) -> bool:
        return self.witt.is_zero() and self.central == 0

    def __add__(self, other: "ExtElement") -> "ExtElement":
        return ExtElement(self.witt + other.witt, self.central + other.central)

    def __sub__(self, other: "ExtElement") -> "ExtElement":
        return ExtElement(self.witt - other.witt, self.central - other.central)

    def __rmul__(self, scalar: int) -> "ExtElement":
        return ExtElement(scalar * self.witt, scalar * self.central)

    def coeffs(self) -> np.ndarray:
        """Coefficient vector over the extension basis (e_{-1}, ..., e_{p-2}, c)."""
        return np.array(list(self.witt.coeffs) + [self.central], dtype=np.int64)

    def __repr__(self) -> str:
        parts = []
        if not self.witt.is_zero():
            parts.append(repr(self.witt))
        if self.central:
            parts.append("c" if self.central == 1 else f"{self.central}*c")
        return " + ".join(parts) if parts else "0"


class CentralExtension:
    """W + K*c with bracket and p-map tables built from a restricted 2-cocycle.

    Basis positions 0..p-1 hold e_{-1}..e_{p-2}, position p holds c.
    bracket_table[u, v, w] is the coefficient of basis w in [b_u, b_v];
    pmap_basis[u] is the coefficient vector of b_u^{[p]}.
    """

    def __init__(self, source: Cochain2Res, bracket_table: np.ndarray, pmap_basis: np.ndarray):
        self.source = source
        self.field = source.field
        n = self.field.p + 1
        if bracket_table.shape != (n, n, n) or pmap_basis.shape != (n, n):
            raise ValueError("table shapes do not match the extension dimension")
        self.bracket_table = bracket_table % self.field.p
        self.pmap_basis = pmap_basis % self.field.p
        self.bracket_table.setflags(write=False)
        self.pmap_basis.setflags(write=False)

    @property
    def p(self) -> int:
        return self.field.p

    def element(self, witt: WittElement, central: int = 0) -> ExtElement:
        return ExtElement(witt, central)

    def from_coeffs(self, vec) -> ExtElement:
        vec = np.asarray(vec, dtype=np.int64) % self.p
        return ExtElement(WittElement(self.field, tuple(int(v) for v in vec[: self.p])), int(vec[self.p]))

    def basis(self, u: int) -> ExtElement:
        """Basis element by table position: 0..p-1 are e_{-1}..e_{p-2}, p is c."""
        vec = np.zeros(self.p + 1, dtype=np.int64)
        vec[u] = 1
        return self.from_coeffs(vec)

    def bracket(self, x: ExtElement, y: ExtElement) -> ExtElement:
        """Table-driven bracket."""
        res = np.einsum("u,v,uvw->w", x.coeffs(), y.coeffs(), self.bracket_table) % self.p
        return self.from_coeffs(res)

    def pth_power(self, x: ExtElement, enum_limit: int = DEFAULT_ENUM_LIMIT) -> ExtElement:
        """(g + a*c)^{[p]} = g^{[p]} + omega(g) c; the central part of x drops out."""
        g = x.witt
        return ExtElement(pth_power(g), eval_omega(self.source, g, enum_limit=enum_limit))

    def with_bracket_entry_zeroed(self, i: int, j: int) -> "CentralExtension":
        """Copy with [e_i, e_j] (and its antisymmetric mirror) forced to zero.

        Negative control for the axiom verifier; the result is not a Lie
        algebra whenever the original entry was nonzero.
        """
        table = self.bracket_table.copy()
        table[i + 1, j + 1, :] = 0
        table[j + 1, i + 1, :] = 0
        return CentralExtension(self.source, table, self.pmap_basis.copy())


def build_extension(c: Cochain2Res, check: bool = True) -> CentralExtension:
    """Populate the bracket and p-map tables of W + K*c from the cocycle c."""
    if check and not is_cocycle(c):
        raise NotACocycleError("extension construction requires a restricted 2-cocycle")
    field = c.field
    p = field.p
    n = p + 1
    table = np.zeros((n, n, n), dtype=np.int64)
    for u in range(p):
        for v in range(p):
            i, j = u - 1, v - 1
            m = (i + j + 1) % p
            table[u, v, m] = (j - i) % p
            table[u, v, p] = c.phi.value(i, j)
    pmap = np.zeros((n, n), dtype=np.int64)
    for u in range(p):
        if u == 1:  # e_0^{[p]} = e_0
            pmap[u, 1] = 1
        pmap[u, p] = c.omega_value(u - 1)
    return CentralExtension(c, table, pmap)


def canonical_splitting(ext: CentralExtension) -> list[ExtElement]:
    """sigma(e_i) = e_i with no central component."""
    return [ext.element(basis_element(ext.field, i)) for i in range(-1, ext.p - 1)]


def extract_cocycle(ext: CentralExtension, sigma: list[ExtElement]) -> Cochain2Res:
    """Cocycle of the extension under the splitting sigma (given on the basis).

    sigma must be a linear section of the projection, i.e. the W part of
    sigma(e_i) must be e_i; with the canonical splitting this inverts
    build_extension coordinatewise.
    """
    field = ext.field
    p = ext.p
    if len(sigma) != p:
        raise NotASplittingError(f"need {p} basis images, got {len(sigma)}")
    for i, s in enumerate(sigma):
        if s.witt != basis_element(field, i - 1):
            raise NotASplittingError(f"sigma does not project to the identity at e_{i - 1}")

    def sigma_of(w: WittElement) -> ExtElement:
        acc = ExtElement(zero(field), 0)
        for i in w.support():
            acc = acc + w.coeff(i) * sigma[i + 1]
        return acc

    phi_vals = []
    for i, j in wedge_pairs(p):
        defect = ext.bracket(sigma[i + 1], sigma[j + 1]) - sigma_of(
            (j - i) * basis_element(field, (i + j + 1) % p - 1)
        )
        if not defect.witt.is_zero():
            raise NotASplittingError("bracket defect left W, the table is not an extension of W")
        phi_vals.append(defect.central)
    omega_vals = []
    for i in range(-1, p - 1):
        power = ext.pth_power(sigma[i + 1])
        target = sigma_of(basis_element(field, 0)) if i == 0 else ExtElement(zero(field), 0)
        diff = power - target
        if not diff.witt.is_zero():
            raise NotASplittingError("p-map defect left W")
        omega_vals.append(diff.central)
    return Cochain2Res(Cochain2Ord(field, tuple(phi_vals)), tuple(omega_vals))


@dataclass(frozen=True)
class AxiomCheck:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class AxiomReport:
    checks: tuple[AxiomCheck, ...]

    @property
    def all_pass(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self) -> list[AxiomCheck]:
        return [c for c in self.checks if not c.passed]


def _jacobi_scan(ext: CentralExtension) -> str:
    """Empty string when every basis triple satisfies Jacobi, else the first witness."""
    p = ext.p
    t = ext.bracket_table
    first = np.einsum("uvs,swm->uvwm", t, t) % p
    total = (first + first.transpose(1, 2, 0, 3) + first.transpose(2, 0, 1, 3)) % p
    bad = np.argwhere(total.any(axis=3))
    if bad.size == 0:
        return ""
    u, v, w = (int(x) for x in bad[0])
    return f"Jacobi fails on basis triple positions ({u}, {v}, {w})"


def verify_restricted_axioms(
    ext: CentralExtension,
    trials: int = 10,
    seed: int = 0,
    enum_limit: int = DEFAULT_ENUM_LIMIT,
) -> AxiomReport:
    """Check antisymmetry, Jacobi, centrality of c and the three p-map axioms.

    Antisymmetry, Jacobi, centrality and the adjoint axiom run exhaustively
    over the table basis; the scalar and sum axioms run on basis pairs plus
    `trials` seeded random elements (random p-th powers need the gated
    omega fold, so those parts are skipped above enum_limit when the source
    has a nonzero phi part).
    """
    field = ext.field
    p = ext.p
    rng = random.Random(seed)
    checks: list[AxiomCheck] = []
    table = ext.bracket_table

    anti = ((table + table.transpose(1, 0, 2)) % p).any() or table[
        np.arange(p + 1), np.arange(p + 1), :
    ].any()
    checks.append(AxiomCheck("antisymmetry", not anti))

    witness = _jacobi_scan(ext)
    checks.append(AxiomCheck("jacobi", witness == "", witness))

    central_ok = not table[:, p, :].any() and not table[p, :, :].any() and not ext.pmap_basis[p].any()
    checks.append(AxiomCheck("central_element", central_ok))

    enum_ok = p <= enum_limit or ext.source.phi.is_zero()

    def ext_pth(x: ExtElement) -> ExtElement:
        return ext.pth_power(x, enum_limit=enum_limit)

    def random_ext(nonzero: bool = False) -> ExtElement:
        while True:
            x = ext.from_coeffs([rng.randrange(p) for _ in range(p + 1)])
            if not nonzero or not x.is_zero():
                return x

    # Scalar axiom: (l*x)^{[p]} = l^p x^{[p]}.
    if enum_ok:
        ok, detail = True, ""
        for _ in range(trials):
            lam = rng.randrange(p)
            x = random_ext()
            if ext_pth(lam * x) != pow(lam, p, p) * ext_pth(x):
                ok, detail = False, f"fails for lambda={lam}, x={x!r}"
                break
        checks.append(AxiomCheck("scalar_power", ok, detail))
    else:
        checks.append(AxiomCheck("scalar_power", True, "skipped: enumeration gated"))

    # Right-bracket matrices: (v @ right_of(x)) is [v, x] on coefficient vectors.
    def right_of(xv: np.ndarray) -> np.ndarray:
        return np.einsum("svm,v->sm", table, xv) % p

    # Adjoint axiom: [y, x^{[p]}] = [y, x, ..., x] with p factors of x.
    # For basis x the chain over every y at once is a matrix power of the
    # right-bracket matrix, so the exhaustive scan is a handful of matmuls.
    ok, detail = True, ""
    for u in range(p + 1):
        bu = table[:, u, :]
        chain_all = np.eye(p + 1, dtype=np.int64)
        for _ in range(p):
            chain_all = (chain_all @ bu) % p
        direct = right_of(ext.pmap_basis[u])
        if (chain_all != direct).any():
            v = int(np.argwhere((chain_all != direct).any(axis=1))[0][0])
            ok, detail = False, f"fails on basis positions ({v}, {u})"
            break
    if ok and enum_ok:
        for _ in range(trials):
            x, y = random_ext(True), random_ext(True)
            bx = right_of(x.coeffs())
            chain = y.coeffs()
            for _ in range(p):
                chain = (chain @ bx) % p
            if (chain != (y.coeffs() @ right_of(ext_pth(x).coeffs())) % p).any():
                ok, detail = False, f"fails for x={x!r}, y={y!r}"
                break
    checks.append(AxiomCheck("adjoint_power", ok, detail))

    # Sum axiom: (x+y)^{[p]} = x^{[p]} + y^{[p]} + sum_i s_i(x, y), the s_i
    # extracted from the lambda-expansion of the iterated bracket inside E.
    inv_weights = np.array([field.inv(i) for i in range(1, p)], dtype=np.int64)

    def ext_summands_total(xv: np.ndarray, yv: np.ndarray) -> np.ndarray:
        bx, by = right_of(xv), right_of(yv)
        rows = xv.reshape(1, p + 1)
        for _ in range(p - 1):
            grown = np.vstack([rows @ by, np.zeros((1, p + 1), dtype=np.int64)])
            grown[1:] += rows @ bx
            rows = grown % p
        return (inv_weights[:, None] * rows[: p - 1]).sum(axis=0) % p

    if enum_ok:
        ok, detail = True, ""
        # On the basis the extension's own p-map rows are the powers, so the
        # exhaustive sweep only pays the general fold on the sums x + y.
        basis_power = [ext.from_coeffs(ext.pmap_basis[u]) for u in range(p + 1)]
        pairs = [
            (ext.basis(u), ext.basis(v), basis_power[u], basis_power[v])
            for u in range(p + 1)
            for v in range(p + 1)
        ]
        for _ in range(trials):
            x, y = random_ext(True), random_ext(True)
            pairs.append((x, y, ext_pth(x), ext_pth(y)))
        for x, y, xp, yp in pairs:
            lhs = ext_pth(x + y)
            rhs = xp + yp + ext.from_coeffs(ext_summands_total(x.coeffs(), y.coeffs()))
            if lhs != rhs:
                ok, detail = False, f"fails for x={x!r}, y={y!r}"
                break
        checks.append(AxiomCheck("sum_expansion", ok, detail))
    else:
        checks.append(AxiomCheck("sum_expansion", True, "skipped: enumeration gated"))

    return AxiomReport(tuple(checks))


def cohomologous(a: Cochain2Res, b: Cochain2Res) -> tuple[bool, Cochain1 | None]:
    """Whether a - b is a restricted coboundary; the witness psi has d1(psi) = a - b."""
    if not is_cocycle(a) or not is_cocycle(b):
        raise NotACocycleError("cohomology comparison is defined on cocycles only")
    field = a.field
    d1 = delta1_res_matrix(field)
    cols = [d1[:, t] for t in range(field.p)]
    coeffs = field.solve_membership(cols, c2_to_vector(a) - c2_to_vector(b))
    if coeffs is None:
        return False, None
    return True, Cochain1(field, tuple(coeffs))


class Classification(enum.Enum):
    SPLIT = "split"
    ORDINARY_LEVI_ONLY = "ordinary-levi-only"
    NON_LEVI = "non-levi"


def classify_extension(c: Cochain2Res) -> Classification:
    """Split if the class vanishes; otherwise sorted by whether the phi part is
    an ordinary coboundary (then the extension splits as an ordinary Lie
    algebra but not as a restricted one) or not (no Levi complement either way)."""
    if not is_cocycle(c):
        raise NotACocycleError("classification is defined on cocycles only")
    field = c.field
    d1 = delta1_res_matrix(field)
    cols = [d1[:, t] for t in range(field.p)]
    if field.solve_membership(cols, c2_to_vector(c)) is not None:
        return Classification.SPLIT
    if project_class_to_ordinary(c).is_zero:
        return Classification.ORDINARY_LEVI_ONLY
    return Classification.NON_LEVI


def omega_extension(field: PrimeField, i: int) -> CentralExtension:
    """The extension of the coordinate cocycle (0, omega_i)."""
    return build_extension(omega_coordinate(field, i))


def virasoro_extension(field: PrimeField) -> CentralExtension:
    """The modular Virasoro algebra: the extension of the cubic-coefficient cocycle."""
    return build_extension(virasoro_cochain(field))
