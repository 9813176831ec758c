"""Edge correspondences, tensor products, and the block-unitary calculus.

A nonnegative integer matrix R becomes a finite bimodule X(R): block (v, w)
is a complex space of dimension R[v][w] spanned by edges (v, alpha, w).
Tensor products run over composable edge paths, and every structure map is a
block unitary.  Basis paths are sorted by their itinerary, which makes all
associativity identifications literal identity matrices.
"""

import numpy as np

from shiftcalc import (
    canonical_assoc,
    check_two_arrow,
    compose_one_arrows,
    conjugate_arrow,
    from_matrix,
    from_rows,
    identity_arrow,
    mat_mul,
    object_pair,
    power_arrow,
    random_block_unitary,
    right_unitor,
    tensor,
    two_arrow_residual,
    unitarity_defect,
)

# X([[2]]) is a single 2-dimensional block with edges (0,0,0), (0,1,0).
x2 = from_matrix(from_rows([[2]]))
print("basis of X([2]):", x2.basis)

# Tensor dimensions multiply like the matrices: dim X(R) (x) X(S) = RS.
r, s = from_rows([[1, 1]]), from_rows([[1], [1]])
t = tensor(from_matrix(r), from_matrix(s))
print("dims of X(R) (x) X(S):", t.dims, "= R*S:", mat_mul(r, s))
print("its basis paths:", t.basis)

# Associativity is the identity permutation by construction.
fib = from_matrix(from_rows([[1, 1], [1, 0]]))
assoc = canonical_assoc(fib, fib, fib)
print("associator blocks are identities:",
      all(np.array_equal(m, np.eye(len(m))) for m in assoc.blocks.values()))

# Objects and arrows: an object is an essential square matrix; an arrow
# [F, phi] carries a correspondence together with a unitary intertwiner
# phi : Y (x) F -> F (x) X between the dynamics on the two sides.
obj = object_pair(from_rows([[1, 1], [1, 1]]))
unit = identity_arrow(obj)
square = power_arrow(obj, 2)
print("unit arrow dims:", unit.f.dims)
print("X^(x)2 dims:", square.f.dims)

# Composition with the unit arrow changes nothing up to the canonical
# unitor, which is a 2-arrow (an invertible intertwining unitary).
composed = compose_one_arrows(square, unit)
residual = two_arrow_residual(right_unitor(square.f), composed, square)
print("unit law residual:", residual)

# Conjugating an arrow by any block unitary u produces a parallel arrow with
# u as the connecting 2-arrow; 2-arrows are always invertible.
rng = np.random.default_rng(1)
u = random_block_unitary(square.f, rng)
other = conjugate_arrow(square, u)
print("u is a 2-arrow:", check_two_arrow(u, square, other))
print("u* is the inverse 2-arrow:", check_two_arrow(u.adjoint(), other, square))
print("conjugated intertwiner stays unitary:", unitarity_defect(other.phi) < 1e-12)
