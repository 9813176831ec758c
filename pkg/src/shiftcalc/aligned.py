"""Concrete shifts between correspondence objects and their alignment.

A concrete shift of lag m between objects (A, X) and (B, Y) is a six-tuple
(M, N, Phi_M, Phi_N, Psi_X, Psi_Y) of correspondences and unitaries

    Phi_M : X (x) M -> M (x) Y        Phi_N : Y (x) N -> N (x) X
    Psi_X : M (x) N -> X^(x)m         Psi_Y : N (x) M -> Y^(x)m

and it is *aligned* when the two triple-tensor coherence equations hold:

    (Psi_X (x) 1_X)(1_M (x) Phi_N)(Phi_M (x) 1_N) = 1_X (x) Psi_X
    (Psi_Y (x) 1_Y)(1_N (x) Phi_M)(Phi_N (x) 1_M) = 1_Y (x) Psi_Y

Equivalently, Psi_X and Psi_Y are 2-arrows from the composite arrows to the
tensor-power arrows.  ``verify_aligned`` evaluates both formulations and
insists they agree, so each implementation checks the other.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .corr import (
    DEFAULT_TOL,
    BlockUnitary,
    ObjectPair,
    OneArrow,
    canonical_identification,
    compose_one_arrows,
    compose_unitaries,
    from_matrix,
    identity_unitary,
    object_pair,
    power_arrow,
    power_correspondence,
    tensor,
    tensor_unitaries,
    two_arrow_residual,
    unitarity_defect,
    unitary_distance,
)
from .errors import CompositionError, ContractError, DomainError, ShapeError, ShiftcalcError
from .witnesses import SEWitness, identity_witness, verify_se


@dataclass(frozen=True, eq=False)
class AlignedShiftData:
    """The six-tuple of a concrete shift, with exact shape bookkeeping.

    ``m_arrow`` is [M, Phi_M] pointing from (B, Y) to (A, X) and ``n_arrow``
    is [N, Phi_N] pointing back.  Construction validates that every map has
    precisely the canonical tensor-product endpoints, which also forces
    dims(M) dims(N) = A^m and dims(N) dims(M) = B^m.
    """

    x_obj: ObjectPair
    y_obj: ObjectPair
    m_arrow: OneArrow
    n_arrow: OneArrow
    psi_x: BlockUnitary
    psi_y: BlockUnitary
    lag: int

    def __post_init__(self):
        if self.lag < 1:
            raise DomainError("shift lag must be a positive integer")
        if self.m_arrow.source != self.y_obj or self.m_arrow.target != self.x_obj:
            raise ShapeError("m_arrow must point from the Y object to the X object")
        if self.n_arrow.source != self.x_obj or self.n_arrow.target != self.y_obj:
            raise ShapeError("n_arrow must point from the X object to the Y object")
        if self.psi_x.source != tensor(self.m_arrow.f, self.n_arrow.f):
            raise ShapeError("psi_x must start at M (x) N with the canonical basis")
        if self.psi_x.target != power_correspondence(self.x_obj, self.lag):
            raise ShapeError("psi_x must end at the lag-th tensor power of X")
        if self.psi_y.source != tensor(self.n_arrow.f, self.m_arrow.f):
            raise ShapeError("psi_y must start at N (x) M with the canonical basis")
        if self.psi_y.target != power_correspondence(self.y_obj, self.lag):
            raise ShapeError("psi_y must end at the lag-th tensor power of Y")


def verify_concrete_shift(d: AlignedShiftData, tol: float = DEFAULT_TOL) -> bool:
    """True iff all four structure maps are blockwise unitary within ``tol``.

    The domain/codomain bookkeeping is already enforced by construction.
    """
    maps = (d.m_arrow.phi, d.n_arrow.phi, d.psi_x, d.psi_y)
    return all(unitarity_defect(u) <= tol for u in maps)


def alignment_residuals(d: AlignedShiftData) -> tuple[float, float]:
    """Operator-norm defects of the two coherence equations (X side, Y side)."""
    x = d.x_obj.x
    y = d.y_obj.x
    m_corr = d.m_arrow.f
    n_corr = d.n_arrow.f

    lhs_x = compose_unitaries(
        compose_unitaries(
            tensor_unitaries(d.m_arrow.phi, identity_unitary(n_corr)),
            tensor_unitaries(identity_unitary(m_corr), d.n_arrow.phi),
        ),
        tensor_unitaries(d.psi_x, identity_unitary(x)),
    )
    rhs_x = tensor_unitaries(identity_unitary(x), d.psi_x)

    lhs_y = compose_unitaries(
        compose_unitaries(
            tensor_unitaries(d.n_arrow.phi, identity_unitary(m_corr)),
            tensor_unitaries(identity_unitary(n_corr), d.m_arrow.phi),
        ),
        tensor_unitaries(d.psi_y, identity_unitary(y)),
    )
    rhs_y = tensor_unitaries(identity_unitary(y), d.psi_y)

    return unitary_distance(lhs_x, rhs_x), unitary_distance(lhs_y, rhs_y)


def two_arrow_residuals(d: AlignedShiftData) -> tuple[float, float]:
    """Alignment measured through the 2-arrow formulation.

    Psi_X must intertwine [M (x) N, Phi_M . Phi_N] with [X^(x)m, 1], and
    Psi_Y the mirrored composite with [Y^(x)m, 1].
    """
    composite_x = compose_one_arrows(d.m_arrow, d.n_arrow)
    composite_y = compose_one_arrows(d.n_arrow, d.m_arrow)
    rx = two_arrow_residual(d.psi_x, composite_x, power_arrow(d.x_obj, d.lag))
    ry = two_arrow_residual(d.psi_y, composite_y, power_arrow(d.y_obj, d.lag))
    return rx, ry


def verify_aligned(d: AlignedShiftData, tol: float = DEFAULT_TOL) -> bool:
    """Check both coherence equations within ``tol``.

    Evaluates the triple-tensor equations and, redundantly, the 2-arrow
    squares; a verdict is only returned when the two formulations agree, so
    either implementation catches a defect in the other.
    """
    if not verify_concrete_shift(d, tol):
        raise ContractError("verify_aligned requires a verified concrete shift")
    direct = bool(max(alignment_residuals(d)) <= tol)
    via_two_arrows = bool(max(two_arrow_residuals(d)) <= tol)
    if direct != via_two_arrows:
        raise ShiftcalcError(
            "internal consistency failure: the two alignment formulations disagree"
        )
    return direct


def build_from_se(
    w: SEWitness,
    phi_m: Optional[BlockUnitary] = None,
    phi_n: Optional[BlockUnitary] = None,
    psi_x: Optional[BlockUnitary] = None,
    psi_y: Optional[BlockUnitary] = None,
) -> AlignedShiftData:
    """Concrete shift induced by a verified witness (A, B, R, S, m).

    M and N are the edge correspondences of R and S.  Each omitted unitary
    defaults to the canonical identification that matches sorted path bases
    in order -- legitimate because the witness equations make the block
    dimensions agree (e.g. X(A) (x) X(R) and X(R) (x) X(B) both have dims
    AR = RB).  Whether the defaults are *aligned* is not assumed anywhere;
    run ``verify_aligned`` to find out.
    """
    if not verify_se(w):
        raise ContractError("build_from_se requires a verified witness")
    x_obj = object_pair(w.a)
    y_obj = object_pair(w.b)
    m_corr = from_matrix(w.r, x_obj.algebra_index, y_obj.algebra_index)
    n_corr = from_matrix(w.s, y_obj.algebra_index, x_obj.algebra_index)

    if phi_m is None:
        phi_m = canonical_identification(tensor(x_obj.x, m_corr), tensor(m_corr, y_obj.x))
    if phi_n is None:
        phi_n = canonical_identification(tensor(y_obj.x, n_corr), tensor(n_corr, x_obj.x))
    if psi_x is None:
        psi_x = canonical_identification(
            tensor(m_corr, n_corr), power_correspondence(x_obj, w.lag)
        )
    if psi_y is None:
        psi_y = canonical_identification(
            tensor(n_corr, m_corr), power_correspondence(y_obj, w.lag)
        )

    m_arrow = OneArrow(y_obj, x_obj, m_corr, phi_m)
    n_arrow = OneArrow(x_obj, y_obj, n_corr, phi_n)
    return AlignedShiftData(x_obj, y_obj, m_arrow, n_arrow, psi_x, psi_y, w.lag)


def trivial_shift(a) -> AlignedShiftData:
    """The lag-1 self-shift of an essential matrix, from its identity witness."""
    return build_from_se(identity_witness(a))


def reverse_shift(d: AlignedShiftData) -> AlignedShiftData:
    """Swap the two sides of a verified concrete shift."""
    if not verify_concrete_shift(d):
        raise ContractError("reverse_shift requires a verified concrete shift")
    return AlignedShiftData(
        d.y_obj, d.x_obj, d.n_arrow, d.m_arrow, d.psi_y, d.psi_x, d.lag
    )


def slide_past_powers(arrow: OneArrow, n: int) -> BlockUnitary:
    """The iterated intertwiner Y^(x)n (x) F -> F (x) X^(x)n.

    Applies phi_F once per tensor factor, sliding F leftwards one step at a
    time; for n = 1 this is phi_F itself.  The result is the canonical
    2-arrow between [Y^(x)n, 1] (x) [F, phi_F] and [F, phi_F] (x) [X^(x)n, 1].
    """
    if n < 0:
        raise DomainError("slide exponent must be nonnegative")
    x_corr = arrow.source.x
    y_corr = arrow.target.x
    if n == 0:
        zero_y = power_correspondence(arrow.target, 0)
        zero_x = power_correspondence(arrow.source, 0)
        return canonical_identification(tensor(zero_y, arrow.f), tensor(arrow.f, zero_x))
    acc = None
    for k in range(1, n + 1):
        step = arrow.phi
        if k > 1:
            right = power_correspondence(arrow.source, k - 1)
            step = tensor_unitaries(step, identity_unitary(right))
        if n - k > 0:
            left = power_correspondence(arrow.target, n - k)
            step = tensor_unitaries(identity_unitary(left), step)
        acc = step if acc is None else compose_unitaries(acc, step)
    return acc


def compose_shifts(
    d1: AlignedShiftData, d2: AlignedShiftData, tol: float = DEFAULT_TOL
) -> AlignedShiftData:
    """Chain aligned shifts (X ~ Y, lag m) and (Y ~ Z, lag n) into X ~ Z.

    The new correspondences are M1 (x) M2 and N2 (x) N1; the new Psi maps are
    assembled from the constituents' Psi maps plus the slide intertwiners, so
    alignment is inherited within the composition's tolerance budget.
    """
    if d1.y_obj != d2.x_obj:
        raise CompositionError("shifts are not chainable: middle objects differ")
    if not verify_aligned(d1, tol) or not verify_aligned(d2, tol):
        raise ContractError("compose_shifts requires aligned inputs")

    m1, n1 = d1.m_arrow, d1.n_arrow
    m2, n2 = d2.m_arrow, d2.n_arrow
    m_arrow = compose_one_arrows(m1, m2)
    n_arrow = compose_one_arrows(n2, n1)

    # M1 (x) M2 (x) N2 (x) N1 -> M1 (x) Y^n (x) N1 -> M1 (x) N1 (x) X^n -> X^(m+n)
    psi_x = compose_unitaries(
        compose_unitaries(
            tensor_unitaries(
                tensor_unitaries(identity_unitary(m1.f), d2.psi_x),
                identity_unitary(n1.f),
            ),
            tensor_unitaries(identity_unitary(m1.f), slide_past_powers(n1, d2.lag)),
        ),
        tensor_unitaries(
            d1.psi_x, identity_unitary(power_correspondence(d1.x_obj, d2.lag))
        ),
    )
    # N2 (x) N1 (x) M1 (x) M2 -> N2 (x) Y^m (x) M2 -> N2 (x) M2 (x) Z^m -> Z^(n+m)
    psi_y = compose_unitaries(
        compose_unitaries(
            tensor_unitaries(
                tensor_unitaries(identity_unitary(n2.f), d1.psi_y),
                identity_unitary(m2.f),
            ),
            tensor_unitaries(identity_unitary(n2.f), slide_past_powers(m2, d1.lag)),
        ),
        tensor_unitaries(
            d2.psi_y, identity_unitary(power_correspondence(d2.y_obj, d1.lag))
        ),
    )
    return AlignedShiftData(
        d1.x_obj, d2.y_obj, m_arrow, n_arrow, psi_x, psi_y, d1.lag + d2.lag
    )


def conjugate_shift(d: AlignedShiftData, u: BlockUnitary, v: BlockUnitary) -> AlignedShiftData:
    """Conjugate all six maps coherently by automorphisms u of M and v of N.

    The rewiring

        Phi_M' = (u (x) 1_Y) Phi_M (1_X (x) u)*      Psi_X' = Psi_X (u (x) v)*
        Phi_N' = (v (x) 1_X) Phi_N (1_Y (x) v)*      Psi_Y' = Psi_Y (v (x) u)*

    cancels out of both coherence equations, so it preserves alignment
    exactly; it is the standard way to manufacture aligned shifts with
    non-permutation unitaries.
    """
    if not (u.source == d.m_arrow.f and u.target == d.m_arrow.f):
        raise ShapeError("u must be an automorphism of M")
    if not (v.source == d.n_arrow.f and v.target == d.n_arrow.f):
        raise ShapeError("v must be an automorphism of N")
    x = d.x_obj.x
    y = d.y_obj.x
    phi_m = compose_unitaries(
        compose_unitaries(
            tensor_unitaries(identity_unitary(x), u.adjoint()), d.m_arrow.phi
        ),
        tensor_unitaries(u, identity_unitary(y)),
    )
    phi_n = compose_unitaries(
        compose_unitaries(
            tensor_unitaries(identity_unitary(y), v.adjoint()), d.n_arrow.phi
        ),
        tensor_unitaries(v, identity_unitary(x)),
    )
    psi_x = compose_unitaries(tensor_unitaries(u, v).adjoint(), d.psi_x)
    psi_y = compose_unitaries(tensor_unitaries(v, u).adjoint(), d.psi_y)
    m_arrow = OneArrow(d.y_obj, d.x_obj, d.m_arrow.f, phi_m)
    n_arrow = OneArrow(d.x_obj, d.y_obj, d.n_arrow.f, phi_n)
    return AlignedShiftData(d.x_obj, d.y_obj, m_arrow, n_arrow, psi_x, psi_y, d.lag)
