"""Finite graph correspondences and the block-unitary calculus over them.

A nonnegative integer V-by-W matrix R determines a finite bimodule over the
function algebras on V and W: block (v, w) is a complex space of dimension
R[v][w], spanned by the edges (v, alpha, w) with 0 <= alpha < R[v][w].  The
commutative algebra actions force every bimodule map to preserve blocks, so a
unitary between two such correspondences is simply one complex unitary matrix
per block.

Tensor products are taken over composable edge paths.  Basis vectors of any
iterated tensor product are flat edge paths, ordered inside each block by the
path's (node, alpha) itinerary; the order depends only on the path and never
on the bracketing, which makes every associativity isomorphism the identity
permutation.  All the coherence bookkeeping in this module rests on that one
convention.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import DomainError, ShapeError
from .exact import IntMatrix, is_essential, is_nonnegative, mat_mul
from .exact import identity as int_identity

#: An edge (source label, alpha, target label); basis vectors are edge paths.
Edge = tuple
Path = tuple
#: Sort key of a path inside its block: ((target position, alpha), ...) per edge.
Key = tuple

DEFAULT_TOL = 1e-9


class GraphCorrespondence:
    """The edge bimodule of an integer matrix, or a tensor product of such.

    Immutable.  ``dims`` records the block dimensions; ``block_basis`` gives
    the ordered edge-path basis of each block.
    """

    __slots__ = ("left_index", "right_index", "dims", "_basis", "_keys")

    def __init__(self, left_index, right_index, dims: IntMatrix, basis, keys):
        self.left_index = tuple(left_index)
        self.right_index = tuple(right_index)
        self.dims = dims
        self._basis = basis
        self._keys = keys

    # -- structure ---------------------------------------------------------

    def block_dim(self, i: int, j: int) -> int:
        return self.dims[i, j]

    def block_basis(self, i: int, j: int) -> tuple[Path, ...]:
        return self._basis.get((i, j), ())

    def block_keys(self, i: int, j: int) -> tuple[Key, ...]:
        return self._keys.get((i, j), ())

    def blocks(self):
        """(i, j) pairs of nonempty blocks, row-major."""
        for i in range(len(self.left_index)):
            for j in range(len(self.right_index)):
                if self.dims[i, j] > 0:
                    yield (i, j)

    @property
    def total_dim(self) -> int:
        return sum(x for row in self.dims.entries for x in row)

    @property
    def basis(self) -> tuple[Path, ...]:
        """All basis paths, blocks in row-major order."""
        out = []
        for ij in self.blocks():
            out.extend(self._basis[ij])
        return tuple(out)

    def same_shape(self, other: "GraphCorrespondence") -> bool:
        return (
            self.left_index == other.left_index
            and self.right_index == other.right_index
            and self.dims == other.dims
        )

    def __eq__(self, other):
        if not isinstance(other, GraphCorrespondence):
            return NotImplemented
        return self.same_shape(other) and self._basis == other._basis

    def __repr__(self):
        return (
            f"GraphCorrespondence({len(self.left_index)}x{len(self.right_index)}, "
            f"total dim {self.total_dim})"
        )


def from_matrix(r: IntMatrix, v: Optional[Sequence] = None, w: Optional[Sequence] = None) -> GraphCorrespondence:
    """The edge correspondence of a nonnegative integer matrix.

    Block (v, w) gets the ordered basis (v, 0, w), (v, 1, w), ...; zero rows
    and columns are allowed here (only object correspondences must be
    essential).
    """
    if not is_nonnegative(r):
        raise DomainError("correspondence matrices must be nonnegative")
    v = tuple(v) if v is not None else tuple(range(r.rows))
    w = tuple(w) if w is not None else tuple(range(r.cols))
    if len(v) != r.rows or len(w) != r.cols:
        raise ShapeError("index label lists must match the matrix shape")
    basis = {}
    keys = {}
    for i, vi in enumerate(v):
        for j, wj in enumerate(w):
            d = r[i, j]
            if d > 0:
                basis[(i, j)] = tuple(((vi, alpha, wj),) for alpha in range(d))
                keys[(i, j)] = tuple(((j, alpha),) for alpha in range(d))
    return GraphCorrespondence(v, w, r, basis, keys)


def tensor(x: GraphCorrespondence, y: GraphCorrespondence) -> GraphCorrespondence:
    """Interior tensor product over the shared middle index set.

    Block (v, w) is spanned by the composable path pairs, flattened and
    sorted by their (node, alpha) itinerary; its dimension is the (v, w)
    entry of the product of the two dims matrices.
    """
    if x.right_index != y.left_index:
        raise ShapeError("tensor factors must share their middle index set")
    dims = mat_mul(x.dims, y.dims)
    basis = {}
    keys = {}
    nu = len(x.right_index)
    for i in range(len(x.left_index)):
        for j in range(len(y.right_index)):
            if dims[i, j] == 0:
                continue
            items = []
            for u in range(nu):
                xb = x.block_basis(i, u)
                if not xb:
                    continue
                yb = y.block_basis(u, j)
                if not yb:
                    continue
                xk = x.block_keys(i, u)
                yk = y.block_keys(u, j)
                for p, kp in zip(xb, xk):
                    for q, kq in zip(yb, yk):
                        items.append((kp + kq, p + q))
            items.sort(key=lambda kv: kv[0])
            keys[(i, j)] = tuple(k for k, _ in items)
            basis[(i, j)] = tuple(p for _, p in items)
    return GraphCorrespondence(x.left_index, y.right_index, dims, basis, keys)


# ---------------------------------------------------------------------------
# Block unitaries
# ---------------------------------------------------------------------------


class BlockUnitary:
    """A block-preserving linear map between two same-shaped correspondences.

    ``blocks[(i, j)]`` maps block (i, j) of the source to block (i, j) of the
    target, columns indexed by source basis vectors.  Unitarity is not
    enforced at construction (corrupted maps must be representable); use
    :func:`unitarity_defect` to measure it.
    """

    __slots__ = ("source", "target", "blocks")

    def __init__(self, source: GraphCorrespondence, target: GraphCorrespondence, blocks):
        if not source.same_shape(target):
            raise ShapeError("source and target of a block unitary must have equal dims")
        self.source = source
        self.target = target
        self.blocks = {}
        for ij in source.blocks():
            d = source.block_dim(*ij)
            try:
                m = np.asarray(blocks[ij], dtype=complex)
            except KeyError:
                raise ShapeError(f"missing block {ij}") from None
            if m.shape != (d, d):
                raise ShapeError(f"block {ij} must be {d}x{d}, got {m.shape}")
            self.blocks[ij] = m

    def block(self, i: int, j: int) -> np.ndarray:
        return self.blocks[(i, j)]

    def adjoint(self) -> "BlockUnitary":
        """Blockwise conjugate transpose; the inverse when unitary."""
        return BlockUnitary(
            self.target, self.source, {ij: m.conj().T for ij, m in self.blocks.items()}
        )

    def replace_block(self, i: int, j: int, m) -> "BlockUnitary":
        blocks = dict(self.blocks)
        blocks[(i, j)] = np.asarray(m, dtype=complex)
        return BlockUnitary(self.source, self.target, blocks)

    def __repr__(self):
        return f"BlockUnitary({len(self.blocks)} blocks, total dim {self.source.total_dim})"


def identity_unitary(c: GraphCorrespondence) -> BlockUnitary:
    return BlockUnitary(c, c, {ij: np.eye(c.block_dim(*ij)) for ij in c.blocks()})


def canonical_identification(src: GraphCorrespondence, tgt: GraphCorrespondence) -> BlockUnitary:
    """The identity-in-coordinates unitary between two same-shaped correspondences.

    This is the canonical move identifying, e.g., the tensor product of two
    edge correspondences with the edge correspondence of the product matrix:
    the k-th basis path of each block is sent to the k-th.
    """
    if not src.same_shape(tgt):
        raise ShapeError("canonical identification needs equal dims")
    return BlockUnitary(src, tgt, {ij: np.eye(src.block_dim(*ij)) for ij in src.blocks()})


def unitarity_defect(u: BlockUnitary) -> float:
    """Largest blockwise deviation of U*U and UU* from the identity."""
    worst = 0.0
    for m in u.blocks.values():
        eye = np.eye(m.shape[0])
        worst = max(
            worst,
            np.linalg.norm(m.conj().T @ m - eye, ord=2),
            np.linalg.norm(m @ m.conj().T - eye, ord=2),
        )
    return worst


def is_unitary(u: BlockUnitary, tol: float = DEFAULT_TOL) -> bool:
    return bool(unitarity_defect(u) <= tol)


def unitary_distance(u1: BlockUnitary, u2: BlockUnitary) -> float:
    """Largest blockwise operator-norm difference of two same-shaped maps."""
    if not (u1.source.same_shape(u2.source) and u1.target.same_shape(u2.target)):
        raise ShapeError("cannot compare block maps of different shapes")
    worst = 0.0
    for ij, m in u1.blocks.items():
        worst = max(worst, np.linalg.norm(m - u2.blocks[ij], ord=2))
    return worst


def compose_unitaries(u1: BlockUnitary, u2: BlockUnitary) -> BlockUnitary:
    """Apply ``u1`` first, then ``u2`` (blockwise matrix product u2 @ u1)."""
    if not u1.target.same_shape(u2.source):
        raise ShapeError("cannot compose: middle correspondences differ in shape")
    return BlockUnitary(
        u1.source, u2.target, {ij: u2.blocks[ij] @ m for ij, m in u1.blocks.items()}
    )


def tensor_unitaries(u1: BlockUnitary, u2: BlockUnitary) -> BlockUnitary:
    """The map sending each basis pair p (x) q to u1(p) (x) u2(q).

    On every block of the tensor correspondence this is a Kronecker product
    per middle node, rearranged into the canonical sorted path basis.
    """
    x, xp = u1.source, u1.target
    y, yp = u2.source, u2.target
    if x.right_index != y.left_index:
        raise ShapeError("tensor factors must share their middle index set")
    src = tensor(x, y)
    tgt = tensor(xp, yp)
    blocks = {}
    for (i, j) in src.blocks():
        d = src.block_dim(i, j)
        out = np.zeros((d, d), dtype=complex)
        pos_src = {k: idx for idx, k in enumerate(src.block_keys(i, j))}
        pos_tgt = {k: idx for idx, k in enumerate(tgt.block_keys(i, j))}
        for u in range(len(x.right_index)):
            if x.block_dim(i, u) == 0 or y.block_dim(u, j) == 0:
                continue
            kron = np.kron(u1.block(i, u), u2.block(u, j))
            src_pos = [
                pos_src[kp + kq]
                for kp in x.block_keys(i, u)
                for kq in y.block_keys(u, j)
            ]
            tgt_pos = [
                pos_tgt[kp + kq]
                for kp in xp.block_keys(i, u)
                for kq in yp.block_keys(u, j)
            ]
            out[np.ix_(tgt_pos, src_pos)] = kron
        blocks[(i, j)] = out
    return BlockUnitary(src, tgt, blocks)


def canonical_assoc(x: GraphCorrespondence, y: GraphCorrespondence, z: GraphCorrespondence) -> BlockUnitary:
    """Associativity isomorphism ((x . y) . z) -> (x . (y . z)).

    With path bases sorted by itinerary the two sides coincide vector for
    vector, so this is always the identity permutation.
    """
    left = tensor(tensor(x, y), z)
    right = tensor(x, tensor(y, z))
    if left != right:
        raise AssertionError("path bases of the two bracketings diverged")
    return canonical_identification(left, right)


def random_block_unitary(
    src: GraphCorrespondence, rng: np.random.Generator, target: Optional[GraphCorrespondence] = None
) -> BlockUnitary:
    """Haar-distributed unitary blocks; deterministic for a fixed generator."""
    tgt = src if target is None else target
    blocks = {}
    for ij in src.blocks():
        d = src.block_dim(*ij)
        z = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        q, r = np.linalg.qr(z)
        phases = np.diag(r).copy()
        phases /= np.abs(phases)
        blocks[ij] = q * phases
    return BlockUnitary(src, tgt, blocks)


# ---------------------------------------------------------------------------
# Objects and 1-arrows
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ObjectPair:
    """An object of the calculus: a vertex set V with an essential V-by-V
    correspondence over it."""

    algebra_index: tuple
    x: GraphCorrespondence

    def __post_init__(self):
        if self.x.left_index != self.algebra_index or self.x.right_index != self.algebra_index:
            raise ShapeError("object correspondence must be indexed by the object's vertex set")
        if not is_essential(self.x.dims):
            raise DomainError("object correspondence must have essential dims")

    def __eq__(self, other):
        if not isinstance(other, ObjectPair):
            return NotImplemented
        return self.algebra_index == other.algebra_index and self.x == other.x


def object_pair(a: IntMatrix, labels: Optional[Sequence] = None) -> ObjectPair:
    """Object with vertex matrix ``a``; labels default to 0..n-1."""
    labels = tuple(labels) if labels is not None else tuple(range(a.rows))
    return ObjectPair(labels, from_matrix(a, labels, labels))


@dataclass(frozen=True, eq=False)
class OneArrow:
    """An arrow (target) <- (source): a correspondence F from the target's
    vertex set to the source's, with a unitary intertwiner

        phi : Y (x) F  ->  F (x) X

    between the two dynamics.  Construction checks that phi's endpoints are
    exactly the canonical tensor products.
    """

    source: ObjectPair
    target: ObjectPair
    f: GraphCorrespondence
    phi: BlockUnitary

    def __post_init__(self):
        if self.f.left_index != self.target.algebra_index:
            raise ShapeError("arrow correspondence must be indexed by the target on the left")
        if self.f.right_index != self.source.algebra_index:
            raise ShapeError("arrow correspondence must be indexed by the source on the right")
        if self.phi.source != tensor(self.target.x, self.f):
            raise ShapeError("phi must start at Y (x) F with the canonical basis")
        if self.phi.target != tensor(self.f, self.source.x):
            raise ShapeError("phi must end at F (x) X with the canonical basis")

    def __eq__(self, other):
        return self is other


def identity_arrow(obj: ObjectPair) -> OneArrow:
    """The unit arrow: F is the edge correspondence of the identity matrix,
    phi the canonical permutation between X (x) I and I (x) X."""
    n = len(obj.algebra_index)
    unit = from_matrix(int_identity(n), obj.algebra_index, obj.algebra_index)
    phi = canonical_identification(tensor(obj.x, unit), tensor(unit, obj.x))
    return OneArrow(obj, obj, unit, phi)


def power_correspondence(obj: ObjectPair, m: int) -> GraphCorrespondence:
    """The m-fold tensor power of the object correspondence; m = 0 gives the
    identity-matrix correspondence."""
    if m < 0:
        raise DomainError("tensor powers need a nonnegative exponent")
    if m == 0:
        n = len(obj.algebra_index)
        return from_matrix(int_identity(n), obj.algebra_index, obj.algebra_index)
    acc = obj.x
    for _ in range(m - 1):
        acc = tensor(acc, obj.x)
    return acc


def power_arrow(obj: ObjectPair, m: int) -> OneArrow:
    """The arrow [X^(x)m, 1]; phi is the identity permutation because both
    X (x) X^(x)m and X^(x)m (x) X carry the same sorted path basis."""
    if m == 0:
        return identity_arrow(obj)
    f = power_correspondence(obj, m)
    phi = canonical_identification(tensor(obj.x, f), tensor(f, obj.x))
    return OneArrow(obj, obj, f, phi)


def compose_one_arrows(g: OneArrow, f: OneArrow) -> OneArrow:
    """Composite of (C,Z) <- (B,Y) after (B,Y) <- (A,X).

    The underlying correspondence is G (x) F and the intertwiner is
    (1_G (x) phi_F) after (phi_G (x) 1_F), with all associators identity.
    """
    if g.source != f.target:
        raise ShapeError("arrows are not composable: middle objects differ")
    gf = tensor(g.f, f.f)
    step1 = tensor_unitaries(g.phi, identity_unitary(f.f))
    step2 = tensor_unitaries(identity_unitary(g.f), f.phi)
    return OneArrow(f.source, g.target, gf, compose_unitaries(step1, step2))


def two_arrow_residual(psi: BlockUnitary, f: OneArrow, g: OneArrow) -> float:
    """Operator-norm defect of the intertwining square for psi : F -> G.

    Zero exactly when (psi (x) 1_X) after phi_F equals phi_G after
    (1_Y (x) psi).
    """
    if f.source != g.source or f.target != g.target:
        raise ShapeError("two-arrow check needs parallel arrows")
    if not (psi.source.same_shape(f.f) and psi.target.same_shape(g.f)):
        raise ShapeError("psi endpoints must match the arrows' correspondences")
    x = f.source.x
    y = f.target.x
    lhs = compose_unitaries(f.phi, tensor_unitaries(psi, identity_unitary(x)))
    rhs = compose_unitaries(tensor_unitaries(identity_unitary(y), psi), g.phi)
    return unitary_distance(lhs, rhs)


def check_two_arrow(psi: BlockUnitary, f: OneArrow, g: OneArrow, tol: float = DEFAULT_TOL) -> bool:
    """Whether psi makes the intertwining square commute within ``tol``."""
    return bool(two_arrow_residual(psi, f, g) <= tol)


def conjugate_arrow(arrow: OneArrow, u: BlockUnitary) -> OneArrow:
    """Rewire an arrow through a unitary u : F -> F'.

    The returned arrow [F', (u (x) 1_X) phi (1_Y (x) u)*] is parallel to the
    input and u is a 2-arrow between them by construction.
    """
    if not u.source.same_shape(arrow.f):
        raise ShapeError("u must start at the arrow's correspondence")
    x = arrow.source.x
    y = arrow.target.x
    phi = compose_unitaries(
        compose_unitaries(tensor_unitaries(identity_unitary(y), u.adjoint()), arrow.phi),
        tensor_unitaries(u, identity_unitary(x)),
    )
    return OneArrow(arrow.source, arrow.target, u.target, phi)


def left_unitor(c: GraphCorrespondence) -> BlockUnitary:
    """I (x) F -> F, the canonical unit identification (identity blocks)."""
    n = len(c.left_index)
    unit = from_matrix(int_identity(n), c.left_index, c.left_index)
    return canonical_identification(tensor(unit, c), c)


def right_unitor(c: GraphCorrespondence) -> BlockUnitary:
    """F (x) I -> F, the canonical unit identification (identity blocks)."""
    n = len(c.right_index)
    unit = from_matrix(int_identity(n), c.right_index, c.right_index)
    return canonical_identification(tensor(c, unit), c)
