"""Symplectic vector spaces over Q.

Orthogonals, subspace classification, coisotropic reduction and the linear
(constant-coefficient) Poisson machinery.

Sign convention, fixed once for the whole package: Hamiltonian vectors solve

    omega(X_f, .) = df          (no minus sign)

Every derived sign (Poisson bivectors included) follows from this choice.

Products of symplectic spaces carry a sign vector sigma in {+1,-1}^k and the
form is the block sum of sigma_i * omega_i; a bar (sign flip) is sigma = -1.
Isotropy is invariant under global negation of the form, so checks normalize
nothing and simply use the signed form they are given.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .exactla import (
    DimensionMismatch,
    ExactLinalgError,
    Matrix,
    Q,
    QuotientSpace,
    Subspace,
    Vector,
    intersect,
    kernel,
    quotient,
    solve,
    subspace_sum,
)


class NotCoisotropic(ExactLinalgError):
    """Reduction requested along a subspace that is not coisotropic."""


class NotSymplectic(ExactLinalgError):
    """A matrix fails to be a valid (invertible, skew) symplectic form."""


@dataclass(frozen=True)
class SymplecticSpace:
    """Q^dim with an invertible skew form omega(u, v) = u^T . omega . v."""

    dim: int
    omega: Matrix

    def __post_init__(self):
        if self.omega.rows != self.dim or self.omega.cols != self.dim:
            raise DimensionMismatch("form shape differs from dimension")
        if self.omega.transpose() != -self.omega:
            raise NotSymplectic("form is not skew-symmetric")
        if self.dim and self.omega.rank() != self.dim:
            raise NotSymplectic("form is degenerate")

    @staticmethod
    def standard(n_pairs: int) -> "SymplecticSpace":
        """Standard form with coordinates ordered (q1, p1, ..., qn, pn)."""
        block = Matrix.from_rows([[0, 1], [-1, 0]])
        return SymplecticSpace(2 * n_pairs, Matrix.block_diag([block] * n_pairs))

    @staticmethod
    def point() -> "SymplecticSpace":
        return SymplecticSpace(0, Matrix(0, 0, ()))

    def bar(self) -> "SymplecticSpace":
        return SymplecticSpace(self.dim, -self.omega)

    def form(self, u: Sequence, v: Sequence) -> Q:
        return sum((a * b for a, b in zip(u, self.omega.apply(v))), Q(0))

    def to_json(self) -> dict:
        return {"dim": self.dim, "omega": self.omega.to_json()}

    @staticmethod
    def from_json(data: dict) -> "SymplecticSpace":
        return SymplecticSpace(int(data["dim"]), Matrix.from_json(data["omega"]))


def product_space(factors: Sequence[SymplecticSpace],
                  signs: Sequence[int] | None = None) -> SymplecticSpace:
    """Product carrying the block sum of sign-weighted forms."""
    if signs is None:
        signs = [1] * len(factors)
    if len(signs) != len(factors):
        raise DimensionMismatch("one sign per factor required")
    blocks = [f.omega.scale(Q(s)) for f, s in zip(factors, signs)]
    return SymplecticSpace(sum(f.dim for f in factors), Matrix.block_diag(blocks))


class SubspaceKind(enum.Enum):
    ISOTROPIC = "isotropic"
    COISOTROPIC = "coisotropic"
    LAGRANGIAN = "lagrangian"
    SYMPLECTIC = "symplectic"
    GENERIC = "generic"


def omega_orthogonal(space: SymplecticSpace, w: Subspace) -> Subspace:
    """{v : omega(v, x) = 0 for all x in w}."""
    if w.ambient_dim != space.dim:
        raise DimensionMismatch("subspace lives in a different space")
    if w.dim == 0:
        return Subspace.full(space.dim)
    # v in orthogonal  <=>  (basis . omega^T) v = 0, and omega^T = -omega.
    return kernel(w.basis * space.omega.transpose())


def classify(space: SymplecticSpace, w: Subspace) -> SubspaceKind:
    if w.ambient_dim != space.dim:
        raise DimensionMismatch("subspace lives in a different space")
    perp = omega_orthogonal(space, w)
    iso = perp.contains_subspace(w)
    coiso = w.contains_subspace(perp)
    if iso and coiso:
        return SubspaceKind.LAGRANGIAN
    if iso:
        return SubspaceKind.ISOTROPIC
    if coiso:
        return SubspaceKind.COISOTROPIC
    if w.dim > 0 and intersect(w, perp).dim == 0:
        return SubspaceKind.SYMPLECTIC
    return SubspaceKind.GENERIC


def is_lagrangian(space: SymplecticSpace, w: Subspace) -> bool:
    return classify(space, w) is SubspaceKind.LAGRANGIAN


@dataclass(frozen=True)
class ReducedSpace:
    """Coisotropic reduction C/C^perp with its induced symplectic form.

    ``projection`` maps ambient coordinates onto reduced coordinates; its
    kernel intersected with C is exactly C^perp.  ``section`` is a right
    inverse landing in C.
    """

    space: SymplecticSpace
    projection: Matrix
    section: Matrix
    coisotropic: Subspace
    radical: Subspace  # C^perp


def reduce_coisotropic(space: SymplecticSpace, c: Subspace) -> ReducedSpace:
    """Symplectic reduction along a coisotropic subspace."""
    perp = omega_orthogonal(space, c)
    if not c.contains_subspace(perp):
        raise NotCoisotropic("subspace is not coisotropic")
    q, proj = quotient(c, perp)
    # Induced form on representatives: omega_red = section^T . omega . section.
    omega_red = q.section.transpose() * space.omega * q.section
    reduced = SymplecticSpace(q.dim, omega_red)
    return ReducedSpace(reduced, proj, q.section, c, perp)


class SandwichVerdict(enum.Enum):
    """Outcome of the reduction-route Lagrangian test."""

    OK = "ok"
    HYPOTHESIS_FAILED = "hypothesis-failed"
    REDUCED_NOT_LAGRANGIAN = "reduced-not-lagrangian"


@dataclass(frozen=True)
class SandwichResult:
    ok: bool
    verdict: SandwichVerdict

    def __bool__(self) -> bool:
        return self.ok


def lagrangian_via_reduction(space: SymplecticSpace, c: Subspace,
                             l: Subspace) -> SandwichResult:
    """Lagrangian test for l through the reduction of the coisotropic c.

    True iff c^perp <= l <= c and the image of l in the reduction is
    Lagrangian there.  A True answer implies l is Lagrangian in the ambient
    space; that implication is cross-checked against the direct test.
    """
    if classify(space, c) not in (SubspaceKind.COISOTROPIC, SubspaceKind.LAGRANGIAN):
        return SandwichResult(False, SandwichVerdict.HYPOTHESIS_FAILED)
    perp = omega_orthogonal(space, c)
    if not (l.contains_subspace(perp) and c.contains_subspace(l)):
        return SandwichResult(False, SandwichVerdict.HYPOTHESIS_FAILED)
    red = reduce_coisotropic(space, c)
    image = l.linear_image(red.projection)
    if not is_lagrangian(red.space, image):
        return SandwichResult(False, SandwichVerdict.REDUCED_NOT_LAGRANGIAN)
    if not is_lagrangian(space, l):
        raise AssertionError("reduction route disagrees with the direct test")
    return SandwichResult(True, SandwichVerdict.OK)


def hamiltonian_vector(space: SymplecticSpace, df: Sequence) -> Vector:
    """The unique X with omega(X, v) = df(v) for all v."""
    df = [Q(x) if not isinstance(x, Q) else x for x in df]
    if len(df) != space.dim:
        raise DimensionMismatch("covector length differs from dimension")
    # omega(X, .) = X^T omega = df  <=>  omega^T X = df  <=>  -omega X = df.
    x = solve(-space.omega, df)
    assert x is not None  # omega invertible
    return x


@dataclass(frozen=True)
class PoissonBivector:
    """Constant bivector; bracket {a, b} = a^T . pi . b on linear functionals."""

    dim: int
    pi: Matrix

    def __post_init__(self):
        if self.pi.rows != self.dim or self.pi.cols != self.dim:
            raise DimensionMismatch("bivector shape differs from dimension")
        if self.pi.transpose() != -self.pi:
            raise NotSymplectic("bivector is not skew-symmetric")

    def bracket(self, alpha: Sequence, beta: Sequence) -> Q:
        return sum((a * b for a, b in zip(alpha, self.pi.apply(beta))), Q(0))

    def to_json(self) -> dict:
        return {"dim": self.dim, "pi": self.pi.to_json()}


class CompletenessError(ExactLinalgError):
    """The two fibrations are not mutually symplectically orthogonal."""


class NotSurjective(ExactLinalgError):
    """A map required to be surjective is not."""


def libermann_poisson(space: SymplecticSpace, s: Matrix, t: Matrix) -> PoissonBivector:
    """Poisson structure induced on the base of a complete pair of fibrations.

    s and t are surjective linear maps from the space onto the base whose
    fibers are mutually symplectically orthogonal: omega vanishes on
    ker(s) x ker(t).  (For a zero-dimensional base the condition is vacuous.)
    The result is the unique constant bivector with
    {s*a, s*b}_omega = s*(Pi(a, b)) for all linear functionals a, b on the
    base; concretely Pi(a, b) = omega(X_{s*a}, X_{s*b}).
    """
    if s.cols != space.dim or t.cols != space.dim:
        raise DimensionMismatch("fibration domain differs from the space")
    if s.rows != t.rows:
        raise DimensionMismatch("the two fibrations target different bases")
    base_dim = s.rows
    if s.rank() != base_dim or t.rank() != base_dim:
        raise NotSurjective("fibration is not surjective")
    if base_dim == 0:
        return PoissonBivector(0, Matrix(0, 0, ()))
    if not omega_orthogonal(space, kernel(t)).contains_subspace(kernel(s)):
        raise CompletenessError("omega does not vanish on ker(s) x ker(t)")
    # X_{s*e_i} for each base coordinate functional; s*e_i = i-th row of s.
    fields = [hamiltonian_vector(space, s.row(i)) for i in range(base_dim)]
    pi_rows = [[space.form(fields[i], fields[j]) for j in range(base_dim)]
               for i in range(base_dim)]
    pi_m = Matrix.from_rows(pi_rows) if base_dim else Matrix(0, 0, ())
    # Cross-check each bracket value against the closed form -s.omega^-1.s^T.
    if base_dim:
        closed = -(s * space.omega.inverse() * s.transpose())
        if closed != pi_m:
            raise AssertionError("Poisson-map identity violated")
    return PoissonBivector(base_dim, pi_m)


def darboux_basis(space: SymplecticSpace) -> Matrix:
    """Columns form a symplectic basis: D^T . omega . D is the standard form.

    Greedy Gram-Schmidt over Q; always succeeds for an invertible skew form.
    """
    n = space.dim
    remaining = [tuple(Q(1 if i == j else 0) for j in range(n)) for i in range(n)]
    pairs: list[Vector] = []
    basis_so_far: list[Vector] = []

    def reduce_against(v):
        # Make v omega-orthogonal to all chosen pairs.
        v = list(v)
        for k in range(0, len(basis_so_far), 2):
            q_vec, p_vec = basis_so_far[k], basis_so_far[k + 1]
            a = space.form(v, p_vec)
            b = space.form(q_vec, v)
            v = [x - a * qq - b * pp for x, qq, pp in zip(v, q_vec, p_vec)]
        return tuple(v)

    while len(basis_so_far) < n:
        q_vec = None
        for cand in remaining:
            red = reduce_against(cand)
            if any(x != 0 for x in red):
                q_vec = red
                break
        assert q_vec is not None
        p_vec = None
        for cand in remaining:
            red = reduce_against(cand)
            val = space.form(q_vec, red)
            if val != 0:
                p_vec = tuple(x / val for x in red)
                break
        assert p_vec is not None  # nondegeneracy
        basis_so_far.extend([q_vec, p_vec])
    cols = basis_so_far
    return Matrix.from_rows(cols).transpose()
