"""Linear relations between symplectic spaces over Q.

A relation A -> B is a subspace of the product coordinate space (source
coordinates followed by target coordinates).  Composition, transpose and
products are plain subspace computations and never fail on well-typed
inputs; canonicality (graph Lagrangian in the sign-twisted product) is a
separate, exact test.

Also here: the reduction relations of a coisotropic subspace, canonical
lifts/projections through a reduction, and exact random generators for
symplectic matrices, Lagrangians and coisotropic subspaces used by the
property suites.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .exactla import (
    DimensionMismatch,
    ExactLinalgError,
    Matrix,
    Q,
    Subspace,
    intersect,
)
from .symplectic import (
    SubspaceKind,
    SymplecticSpace,
    classify,
    darboux_basis,
    product_space,
    reduce_coisotropic,
)


class NotCanonical(ExactLinalgError):
    """A relation required to be canonical (Lagrangian graph) is not."""


@dataclass(frozen=True)
class LinearRelation:
    source: SymplecticSpace
    target: SymplecticSpace
    graph: Subspace

    def __post_init__(self):
        if self.graph.ambient_dim != self.source.dim + self.target.dim:
            raise DimensionMismatch("graph does not live in source x target")

    @property
    def dim(self) -> int:
        return self.graph.dim

    def to_json(self) -> dict:
        return {"source_dim": self.source.dim,
                "target_dim": self.target.dim,
                "graph_basis": self.graph.basis.to_json()}

    def __repr__(self) -> str:
        return (f"LinearRelation({self.source.dim} -> {self.target.dim}, "
                f"graph dim {self.dim})")


def identity_rel(space: SymplecticSpace) -> LinearRelation:
    n = space.dim
    rows = [[Q(0)] * (2 * n) for _ in range(n)]
    for i in range(n):
        rows[i][i] = Q(1)
        rows[i][n + i] = Q(1)
    return LinearRelation(space, space, Subspace.from_rows(2 * n, rows))


def graph_of_map(m: Matrix, source: SymplecticSpace,
                 target: SymplecticSpace) -> LinearRelation:
    """The relation {(x, m x)}."""
    if m.cols != source.dim or m.rows != target.dim:
        raise DimensionMismatch("map shape does not match the spaces")
    rows = []
    for i in range(source.dim):
        e = [Q(0)] * source.dim
        e[i] = Q(1)
        rows.append(tuple(e) + m.col(i))
    return LinearRelation(source, target,
                          Subspace.from_rows(source.dim + target.dim, rows))


def state_rel(space: SymplecticSpace, sub: Subspace) -> LinearRelation:
    """A subspace of `space` as a relation from the point space."""
    return LinearRelation(SymplecticSpace.point(), space, sub)


def full_state(space: SymplecticSpace) -> LinearRelation:
    return state_rel(space, Subspace.full(space.dim))


def swap_rel(space: SymplecticSpace) -> LinearRelation:
    """(x, y) |-> (y, x) on space x space."""
    n = space.dim
    prod = product_space([space, space])
    rows = []
    for i in range(2 * n):
        e = [Q(0)] * (4 * n)
        e[i] = Q(1)
        e[2 * n + ((i + n) % (2 * n))] = Q(1)
        rows.append(e)
    return LinearRelation(prod, prod, Subspace.from_rows(4 * n, rows))


def compose(r: LinearRelation, s: LinearRelation) -> LinearRelation:
    """Relation composition, first r then s (middle space must match)."""
    if r.target != s.source:
        raise DimensionMismatch("middle spaces differ")
    a, b, c = r.source.dim, r.target.dim, s.target.dim
    n = a + b + c
    # {(x, y, z) : (x, y) in r}  cap  {(x, y, z) : (y, z) in s}
    left_rows = [row + (Q(0),) * c for row in r.graph.basis.entries]
    for k in range(c):
        e = [Q(0)] * n
        e[a + b + k] = Q(1)
        left_rows.append(tuple(e))
    right_rows = [(Q(0),) * a + row for row in s.graph.basis.entries]
    for k in range(a):
        e = [Q(0)] * n
        e[k] = Q(1)
        right_rows.append(tuple(e))
    joint = intersect(Subspace.from_rows(n, left_rows),
                      Subspace.from_rows(n, right_rows))
    # project out the middle block
    proj_rows = [row[:a] + row[a + b:] for row in joint.basis.entries]
    return LinearRelation(r.source, s.target, Subspace.from_rows(a + c, proj_rows))


def transpose(r: LinearRelation) -> LinearRelation:
    a, b = r.source.dim, r.target.dim
    rows = [row[a:] + row[:a] for row in r.graph.basis.entries]
    return LinearRelation(r.target, r.source, Subspace.from_rows(a + b, rows))


def rel_product(r: LinearRelation, s: LinearRelation) -> LinearRelation:
    """(r x s): A x C -> B x D."""
    a, b = r.source.dim, r.target.dim
    c, d = s.source.dim, s.target.dim
    n = a + c + b + d
    rows = []
    for row in r.graph.basis.entries:
        rows.append(row[:a] + (Q(0),) * c + row[a:] + (Q(0),) * d)
    for row in s.graph.basis.entries:
        rows.append((Q(0),) * a + row[:c] + (Q(0),) * b + row[c:])
    src = product_space([r.source, s.source])
    tgt = product_space([r.target, s.target])
    return LinearRelation(src, tgt, Subspace.from_rows(n, rows))


@dataclass(frozen=True)
class CanonicalityReport:
    is_lagrangian: bool
    kind: SubspaceKind
    signs: tuple[int, int]

    def __bool__(self) -> bool:
        return self.is_lagrangian


def is_canonical(r: LinearRelation,
                 signs: tuple[int, int] = (-1, 1)) -> CanonicalityReport:
    """Lagrangian test of the graph under sign-weighted source/target forms.

    Default signs (-1, +1) twist the source, the usual convention for
    canonical relations; isotropy is invariant under flipping both signs.
    """
    signed = product_space([r.source, r.target], signs=list(signs))
    kind = classify(signed, r.graph)
    return CanonicalityReport(kind is SubspaceKind.LAGRANGIAN, kind, tuple(signs))


def reduction_relations(space: SymplecticSpace,
                        w: Subspace) -> tuple[LinearRelation, LinearRelation]:
    """The relations I: reduction -> space and P = I^T for a coisotropic w.

    I = {([x], x) : x in w}; P I is the identity of the reduction and I P is
    the equivalence relation identifying points of w in the same class.
    """
    red = reduce_coisotropic(space, w)   # raises NotCoisotropic
    rows = [tuple(red.projection.apply(x)) + tuple(x) for x in w.basis.entries]
    i_rel = LinearRelation(red.space, space,
                           Subspace.from_rows(red.space.dim + space.dim, rows))
    return i_rel, transpose(i_rel)


def canonical_lift(space: SymplecticSpace, w: Subspace,
                   lbar: LinearRelation) -> LinearRelation:
    """I . lbar . P : the canonical lift of a relation on the reduction."""
    i_rel, p_rel = reduction_relations(space, w)
    if lbar.source != i_rel.source or lbar.target != i_rel.source:
        raise DimensionMismatch("relation does not live on the reduction")
    if not is_canonical(lbar):
        raise NotCanonical("relation on the reduction is not canonical")
    return compose(compose(p_rel, lbar), i_rel)


def canonical_projection(space: SymplecticSpace, w: Subspace,
                         l: LinearRelation) -> LinearRelation:
    """P . l . I : the canonical projection of a relation on the space."""
    if l.source != space or l.target != space:
        raise DimensionMismatch("relation does not live on the space")
    if not is_canonical(l):
        raise NotCanonical("relation on the space is not canonical")
    i_rel, p_rel = reduction_relations(space, w)
    return compose(compose(i_rel, l), p_rel)


# ---------------------------------------------------------------------------
# Exact random generators (deterministic given the Random instance).
# Random symplectic matrices are products of elementary symplectic factors
# with small rational entries, which keeps all downstream arithmetic exact
# and cheap; Lagrangians/coisotropics are images of the standard ones.

def _interleave_perm(n_pairs: int) -> list[int]:
    """block position of each interleaved position: q_i -> i, p_i -> n+i."""
    out = []
    for i in range(n_pairs):
        out.append(i)
        out.append(n_pairs + i)
    return out


def random_symplectic_matrix(n_pairs: int, rng: random.Random,
                             factors: int = 6) -> Matrix:
    """Random element of Sp(2n, Q) in the interleaved (q1,p1,...) basis."""
    n = n_pairs
    dim = 2 * n
    if n == 0:
        return Matrix(0, 0, ())
    m_blk = Matrix.identity(dim)
    for _ in range(factors):
        kind = rng.randint(0, 2)
        if kind in (0, 1):
            s = [[Q(0)] * n for _ in range(n)]
            for i in range(n):
                for j in range(i, n):
                    v = Q(rng.randint(-2, 2))
                    s[i][j] = v
                    s[j][i] = v
            s_m = Matrix.from_rows(s)
            if kind == 0:   # [[I, S], [0, I]]
                top = Matrix.identity(n).hstack(s_m)
                bot = Matrix.zero(n, n).hstack(Matrix.identity(n))
            else:           # [[I, 0], [S, I]]
                top = Matrix.identity(n).hstack(Matrix.zero(n, n))
                bot = s_m.hstack(Matrix.identity(n))
            g = top.vstack(bot)
        else:               # [[A, 0], [0, A^-T]] with unit-triangular A
            a = [[Q(1) if i == j else Q(0) for j in range(n)] for i in range(n)]
            for i in range(n):
                for j in range(i + 1, n):
                    a[i][j] = Q(rng.randint(-2, 2))
            a_m = Matrix.from_rows(a)
            inv_t = a_m.inverse().transpose()
            g = Matrix.block_diag([a_m, inv_t])
        m_blk = m_blk * g
    # move from block (q..q p..p) to interleaved (q1 p1 q2 p2 ...) coordinates
    perm = _interleave_perm(n)
    t_rows = []
    for b in range(dim):
        row = [Q(0)] * dim
        row[perm.index(b)] = Q(1)
        t_rows.append(row)
    t = Matrix.from_rows(t_rows)  # v_blk = t . v_int
    return t.transpose() * m_blk * t


def random_lagrangian(space: SymplecticSpace, rng: random.Random) -> Subspace:
    """Random Lagrangian subspace of any symplectic space over Q."""
    n = space.dim // 2
    if space.dim == 0:
        return Subspace.zero(0)
    d = darboux_basis(space)
    m = random_symplectic_matrix(n, rng)
    full = d * m
    rows = [full.col(2 * i) for i in range(n)]
    return Subspace.from_rows(space.dim, rows)


def random_coisotropic(space: SymplecticSpace, rng: random.Random,
                       rank: int | None = None) -> Subspace:
    """Random coisotropic subspace of dimension n + rank (0 <= rank <= n)."""
    n = space.dim // 2
    if rank is None:
        rank = rng.randint(0, n)
    if not 0 <= rank <= n:
        raise ValueError("rank out of range")
    if space.dim == 0:
        return Subspace.zero(0)
    d = darboux_basis(space)
    m = random_symplectic_matrix(n, rng)
    full = d * m
    rows = [full.col(2 * i) for i in range(n)]          # all q directions
    rows += [full.col(2 * i + 1) for i in range(rank)]  # first `rank` p's
    return Subspace.from_rows(space.dim, rows)


def random_canonical_relation(source: SymplecticSpace, target: SymplecticSpace,
                              rng: random.Random) -> LinearRelation:
    """Random canonical relation: a Lagrangian graph in the twisted product."""
    signed = product_space([source, target], signs=[-1, 1])
    return LinearRelation(source, target, random_lagrangian(signed, rng))
