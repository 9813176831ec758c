"""Explicit homotopies of arrows through paths in finite unitary groups.

The space of block unitaries on a finite correspondence is a product of
finite-dimensional unitary groups, hence path connected: any two unitaries
are joined by the geodesic U(t) = U0 exp(tH) with H a blockwise matrix
logarithm of U0* U1.  A homotopy of arrows is represented fiberwise: a fixed
correspondence, a sampled unitary path for the intertwiner component, and
endpoint 2-arrows tying the t = 0 and t = 1 fibers to the two given arrows.

Verification is sampled, not symbolic: the generator gives the path in closed
form, the sample list is what gets checked.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.linalg

from .aligned import AlignedShiftData, build_from_se
from .corr import (
    DEFAULT_TOL,
    BlockUnitary,
    GraphCorrespondence,
    ObjectPair,
    OneArrow,
    canonical_identification,
    compose_one_arrows,
    compose_unitaries,
    identity_unitary,
    power_arrow,
    power_correspondence,
    tensor,
    tensor_unitaries,
    two_arrow_residual,
    unitarity_defect,
)
from .errors import ContractError, DomainError, ShapeError
from .witnesses import SEWitness, verify_se


@dataclass(frozen=True, eq=False)
class UnitaryPath:
    """A path of block unitaries from ``source`` to ``target``.

    ``samples`` lists (t, unitary) with strictly increasing t from 0 to 1.
    When ``generator`` is present it holds the blockwise skew-Hermitian H
    with U(t) = U(0) exp(tH); concatenated paths carry samples only.
    """

    source: BlockUnitary
    target: BlockUnitary
    samples: tuple
    generator: Optional[dict]

    def __post_init__(self):
        if len(self.samples) < 2:
            raise ShapeError("a path needs at least its two endpoint samples")
        ts = [t for t, _ in self.samples]
        if ts[0] != 0.0 or ts[-1] != 1.0 or any(a >= b for a, b in zip(ts, ts[1:])):
            raise ShapeError("sample times must increase strictly from 0 to 1")


def connect_unitaries(u0: BlockUnitary, u1: BlockUnitary, steps: int) -> UnitaryPath:
    """Geodesic path between two same-shaped block unitaries.

    Per block, H = log(U0* U1) is taken through the spectral decomposition
    with eigenvalue arguments in (-pi, pi] (an eigenvalue at exactly -1 gets
    +pi; this fixed branch is a representation choice, discontinuous only on
    that measure-zero set).  Samples are taken at t = k/(steps-1).
    """
    if steps < 2:
        raise DomainError("need at least two samples")
    if u0.source != u1.source or u0.target != u1.target:
        raise ShapeError("endpoints must share source and target correspondences")

    rotations = {}
    generator = {}
    for ij, m0 in u0.blocks.items():
        w = m0.conj().T @ u1.blocks[ij]
        t_mat, z = scipy.linalg.schur(w, output="complex")
        theta = np.angle(np.diag(t_mat))
        rotations[ij] = (z, theta)
        generator[ij] = (z * (1j * theta)) @ z.conj().T

    samples = []
    for k in range(steps):
        t = k / (steps - 1)
        blocks = {
            ij: u0.blocks[ij] @ ((z * np.exp(1j * theta * t)) @ z.conj().T)
            for ij, (z, theta) in rotations.items()
        }
        samples.append((t, BlockUnitary(u0.source, u0.target, blocks)))
    return UnitaryPath(u0, u1, tuple(samples), generator)


def reverse_path(p: UnitaryPath) -> UnitaryPath:
    """Time reversal t -> 1 - t; the generator flips sign relative to the new
    starting point."""
    samples = tuple((1.0 - t, u) for t, u in reversed(p.samples))
    generator = None
    if p.generator is not None:
        generator = {ij: -h for ij, h in p.generator.items()}
    return UnitaryPath(p.target, p.source, samples, generator)


def concatenate_paths(p1: UnitaryPath, p2: UnitaryPath) -> UnitaryPath:
    """Run p1 on [0, 1/2] and p2 on [1/2, 1]; sample-only (no generator)."""
    first = tuple((t / 2, u) for t, u in p1.samples)
    second = tuple((0.5 + t / 2, u) for t, u in p2.samples if t > 0.0)
    return UnitaryPath(p1.source, p2.target, first + second, None)


@dataclass(frozen=True, eq=False)
class ArrowHomotopy:
    """A fiberwise homotopy between two parallel arrows.

    The fiber at time t is the arrow [fiber, U(t)]; ``h0`` and ``h1`` are the
    endpoint 2-arrows onto ``f_arrow`` and ``g_arrow``.
    """

    f_arrow: OneArrow
    g_arrow: OneArrow
    fiber: GraphCorrespondence
    path: UnitaryPath
    h0: BlockUnitary
    h1: BlockUnitary

    def __post_init__(self):
        if self.f_arrow.source != self.g_arrow.source or self.f_arrow.target != self.g_arrow.target:
            raise ShapeError("homotopy endpoints must be parallel arrows")
        y_corr = self.f_arrow.target.x
        x_corr = self.f_arrow.source.x
        if self.path.source.source != tensor(y_corr, self.fiber):
            raise ShapeError("path unitaries must start at Y (x) fiber")
        if self.path.source.target != tensor(self.fiber, x_corr):
            raise ShapeError("path unitaries must end at fiber (x) X")
        if not (self.h0.source.same_shape(self.fiber) and self.h0.target.same_shape(self.f_arrow.f)):
            raise ShapeError("h0 must map the fiber onto the first arrow's correspondence")
        if not (self.h1.source.same_shape(self.fiber) and self.h1.target.same_shape(self.g_arrow.f)):
            raise ShapeError("h1 must map the fiber onto the second arrow's correspondence")

    def fiber_arrow(self, index: int) -> OneArrow:
        """The arrow carried by the sample at the given index."""
        return OneArrow(
            self.f_arrow.source,
            self.f_arrow.target,
            self.fiber,
            self.path.samples[index][1],
        )


def homotopy_failure(h: ArrowHomotopy, tol: float = DEFAULT_TOL) -> Optional[str]:
    """Description of the first defect found, or None if the homotopy checks out."""
    for idx, (t, u) in enumerate(h.path.samples):
        defect = unitarity_defect(u)
        if defect > tol:
            return f"sample {idx} (t={t:g}) is not unitary: defect {defect:.3e}"
    for name, psi in (("h0", h.h0), ("h1", h.h1)):
        defect = unitarity_defect(psi)
        if defect > tol:
            return f"endpoint 2-arrow {name} is not unitary: defect {defect:.3e}"
    r0 = two_arrow_residual(h.h0, h.fiber_arrow(0), h.f_arrow)
    if r0 > tol:
        return f"h0 fails the 2-arrow square at t=0: residual {r0:.3e}"
    r1 = two_arrow_residual(h.h1, h.fiber_arrow(len(h.path.samples) - 1), h.g_arrow)
    if r1 > tol:
        return f"h1 fails the 2-arrow square at t=1: residual {r1:.3e}"
    return None


def verify_homotopy(h: ArrowHomotopy, tol: float = DEFAULT_TOL) -> bool:
    """True iff every sample is unitary and both endpoint squares commute
    within ``tol``."""
    return homotopy_failure(h, tol) is None


def constant_homotopy(arrow: OneArrow) -> ArrowHomotopy:
    """The reflexivity homotopy: the fiber is the arrow itself at every time."""
    samples = ((0.0, arrow.phi), (1.0, arrow.phi))
    zero_gen = {ij: np.zeros_like(m) for ij, m in arrow.phi.blocks.items()}
    path = UnitaryPath(arrow.phi, arrow.phi, samples, zero_gen)
    ident = identity_unitary(arrow.f)
    return ArrowHomotopy(arrow, arrow, arrow.f, path, ident, ident)


def reverse_homotopy(h: ArrowHomotopy) -> ArrowHomotopy:
    """Symmetry: reverse time and swap the endpoint data."""
    return ArrowHomotopy(
        h.g_arrow, h.f_arrow, h.fiber, reverse_path(h.path), h.h1, h.h0
    )


def concatenate_homotopies(h1: ArrowHomotopy, h2: ArrowHomotopy) -> ArrowHomotopy:
    """Transitivity: glue homotopies f ~ g and g ~ k along their g ends.

    The second path is transported onto the first fiber through the
    connecting unitary c = h2.h0* after h1.h1, which matches the seam fibers
    exactly, so only sampled data survives (no closed-form generator).
    """
    if h1.g_arrow is not h2.f_arrow and h1.g_arrow != h2.f_arrow:
        raise ShapeError("homotopies must share their middle arrow")
    x_corr = h1.f_arrow.source.x
    y_corr = h1.f_arrow.target.x
    connect = compose_unitaries(h1.h1, h2.h0.adjoint())  # fiber1 -> fiber2
    pre = tensor_unitaries(identity_unitary(y_corr), connect)
    post = tensor_unitaries(connect.adjoint(), identity_unitary(x_corr))
    transported = []
    for t, u in h2.path.samples:
        transported.append((t, compose_unitaries(compose_unitaries(pre, u), post)))
    p2 = UnitaryPath(transported[0][1], transported[-1][1], tuple(transported), None)
    path = concatenate_paths(h1.path, p2)
    h1_end = compose_unitaries(connect, h2.h1)
    return ArrowHomotopy(h1.f_arrow, h2.g_arrow, h1.fiber, path, h1.h0, h1_end)


def homotopy_to_identity(
    phi: BlockUnitary, obj: ObjectPair, m: int, steps: int = 16
) -> ArrowHomotopy:
    """Homotope the arrow [X^(x)m, phi] to the identity arrow [X^(x)m, 1].

    Works fiberwise over the interval: the fiber correspondence is constant
    X^(x)m and the intertwiner follows the geodesic from the identity
    permutation to phi; both endpoint 2-arrows are the identity.
    """
    fiber = power_correspondence(obj, m)
    src = tensor(obj.x, fiber)
    tgt = tensor(fiber, obj.x)
    if phi.source != src or phi.target != tgt:
        raise ShapeError("phi must intertwine X (x) X^m with X^m (x) X canonically")
    start = canonical_identification(src, tgt)
    path = connect_unitaries(start, phi, steps)
    f_arrow = power_arrow(obj, m)
    g_arrow = OneArrow(obj, obj, fiber, phi)
    ident = identity_unitary(fiber)
    return ArrowHomotopy(f_arrow, g_arrow, fiber, path, ident, ident)


def homotopy_shift_equivalence_from_se(
    w: SEWitness, steps: int = 16
) -> tuple[AlignedShiftData, ArrowHomotopy, ArrowHomotopy]:
    """Realize a verified witness as a homotopy shift equivalence.

    Builds the canonical concrete shift, conjugates each composite arrow
    down to a tensor-power arrow through its Psi map, homotopes the
    resulting unitary to the identity permutation, and reassembles the two
    homotopies

        [M (x) N, Phi_M . Phi_N] ~ [X^(x)m, 1]
        [N (x) M, Phi_N . Phi_M] ~ [Y^(x)m, 1]

    whose endpoint 2-arrows are the identity and the inverse Psi.
    """
    if not verify_se(w):
        raise ContractError("homotopy construction requires a verified witness")
    shift = build_from_se(w)
    hom_x = _side_homotopy(
        shift.x_obj, shift.m_arrow, shift.n_arrow, shift.psi_x, w.lag, steps
    )
    hom_y = _side_homotopy(
        shift.y_obj, shift.n_arrow, shift.m_arrow, shift.psi_y, w.lag, steps
    )
    return shift, hom_x, hom_y


def _side_homotopy(
    obj: ObjectPair,
    first: OneArrow,
    second: OneArrow,
    psi: BlockUnitary,
    m: int,
    steps: int,
) -> ArrowHomotopy:
    composite = compose_one_arrows(first, second)
    x_corr = obj.x
    # Conjugate the composite intertwiner onto the tensor-power fiber.
    phi = compose_unitaries(
        compose_unitaries(
            tensor_unitaries(identity_unitary(x_corr), psi.adjoint()), composite.phi
        ),
        tensor_unitaries(psi, identity_unitary(x_corr)),
    )
    base = homotopy_to_identity(phi, obj, m, steps)
    # Retarget the t = 1 end at the composite arrow through psi^{-1}.
    return ArrowHomotopy(
        base.f_arrow, composite, base.fiber, base.path, base.h0, psi.adjoint()
    )
