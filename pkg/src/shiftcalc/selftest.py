"""Built-in verification battery, runnable in the field via `shiftcalc selftest`.

Each check is a scaled-down version of one acceptance property, driven by
bundled fixtures and fixed seeds, so a deployment can confirm the whole stack
(exact layer, invariants, block calculus, alignment, homotopies) in a few
seconds without the development test suite.
"""

from __future__ import annotations

import random

import numpy as np

from .aligned import (
    AlignedShiftData,
    alignment_residuals,
    build_from_se,
    compose_shifts,
    conjugate_shift,
    reverse_shift,
    trivial_shift,
    two_arrow_residuals,
    verify_aligned,
    verify_concrete_shift,
)
from .corr import (
    check_two_arrow,
    compose_one_arrows,
    conjugate_arrow,
    from_matrix,
    identity_arrow,
    power_arrow,
    random_block_unitary,
    right_unitor,
    tensor,
    two_arrow_residual,
)
from .exact import from_rows, mat_mul
from .homotopy import homotopy_shift_equivalence_from_se, verify_homotopy
from .invariants import (
    ONE_MINUS_T,
    ONE_MINUS_T_SQUARED,
    ONE_PLUS_T,
    bowen_franks_general,
    compare,
)
from .witnesses import (
    SEWitness,
    failing_equation,
    fold_chain,
    random_sse_chain,
    search_se,
    verify_se,
)

FULL_SHIFT_2 = from_rows([[2]])
FULL_SHIFT_PAIR = from_rows([[1, 1], [1, 1]])
GOLDEN_WITNESS = SEWitness(
    FULL_SHIFT_2, FULL_SHIFT_PAIR, from_rows([[1, 1]]), from_rows([[1], [1]]), 1
)


def _random_essential(rng: random.Random, max_size: int = 3, max_entry: int = 2):
    n = rng.randint(1, max_size)
    rows = [[rng.randint(0, max_entry) for _ in range(n)] for _ in range(n)]
    for i in range(n):
        if not any(rows[i]):
            rows[i][rng.randrange(n)] = 1
    for j in range(n):
        if not any(rows[i][j] for i in range(n)):
            rows[rng.randrange(n)][j] = 1
    return from_rows(rows)


def check_witness_verification() -> bool:
    if not verify_se(GOLDEN_WITNESS):
        return False
    for mat_name in ("r", "s"):
        base = getattr(GOLDEN_WITNESS, mat_name)
        for i in range(base.rows):
            for j in range(base.cols):
                bumped = base.to_lists()
                bumped[i][j] += 1
                fields = {
                    "a": GOLDEN_WITNESS.a,
                    "b": GOLDEN_WITNESS.b,
                    "r": GOLDEN_WITNESS.r,
                    "s": GOLDEN_WITNESS.s,
                }
                fields[mat_name] = from_rows(bumped)
                w = SEWitness(fields["a"], fields["b"], fields["r"], fields["s"], 1)
                if failing_equation(w) is None:
                    return False
    return True


def check_chain_composition() -> bool:
    rng = random.Random(20240917)
    for trial in range(10):
        base = _random_essential(rng)
        chain = random_sse_chain(base, rng.randint(1, 3), seed=rng.randrange(10**6))
        folded = fold_chain(chain)
        if not verify_se(folded):
            return False
        if compare(folded.a, folded.b).distinguished:
            return False
        for p in (ONE_MINUS_T, ONE_PLUS_T, ONE_MINUS_T_SQUARED):
            if bowen_franks_general(folded.a, p) != bowen_franks_general(folded.b, p):
                return False
    return True


def check_invariant_separation() -> bool:
    two, three = from_rows([[2]]), from_rows([[3]])
    v1 = compare(two, three)
    if v1.primary != "nonzero_char_poly":
        return False
    v2 = compare(three, from_rows([[1, 2], [2, 1]]))
    return v2.distinguished and "bowen_franks" in v2.separating


def check_tensor_dims() -> bool:
    rng = random.Random(5)
    for _ in range(25):
        rows, mid, cols = (rng.randint(1, 3) for _ in range(3))
        r = from_rows([[rng.randint(0, 3) for _ in range(mid)] for _ in range(rows)])
        s = from_rows([[rng.randint(0, 3) for _ in range(cols)] for _ in range(mid)])
        t = tensor(from_matrix(r), from_matrix(s))
        if t.dims != mat_mul(r, s):
            return False
        paths = sum(
            1
            for i in range(rows)
            for u in range(mid)
            for j in range(cols)
            for _ in range(r[i, u] * s[u, j])
        )
        if t.total_dim != paths:
            return False
    return True


def check_bicategory_laws(tol: float = 1e-8) -> bool:
    rng = np.random.default_rng(99)
    shift = build_from_se(GOLDEN_WITNESS)
    for _ in range(10):
        arrow = shift.n_arrow
        u = random_block_unitary(arrow.f, rng)
        other = conjugate_arrow(arrow, u)
        if not check_two_arrow(u, arrow, other, tol):
            return False
        if not check_two_arrow(u.adjoint(), other, arrow, tol):
            return False
        # Unit law: [Y,1] (x) [F,phi] and [F,phi] (x) [X,1] are 2-isomorphic via phi.
        left = compose_one_arrows(power_arrow(arrow.target, 1), arrow)
        right = compose_one_arrows(arrow, power_arrow(arrow.source, 1))
        if two_arrow_residual(arrow.phi, left, right) > tol:
            return False
        unit = compose_one_arrows(arrow, identity_arrow(arrow.source))
        if two_arrow_residual(right_unitor(arrow.f), unit, arrow) > tol:
            return False
    return True


def check_alignment_transitivity(tol: float = 8e-9) -> bool:
    rng = np.random.default_rng(123)
    for _ in range(5):
        base = trivial_shift(FULL_SHIFT_PAIR)
        u = random_block_unitary(base.m_arrow.f, rng)
        v = random_block_unitary(base.n_arrow.f, rng)
        d1 = conjugate_shift(base, u, v)
        d2 = reverse_shift(d1)
        composed = compose_shifts(d1, d2)
        if not verify_aligned(composed, tol):
            return False
    return True


def check_alignment_formulations(tol: float = 1e-8) -> bool:
    rng = np.random.default_rng(321)
    shift = build_from_se(GOLDEN_WITNESS)
    candidates = [shift, conjugate_shift(
        shift,
        random_block_unitary(shift.m_arrow.f, rng),
        random_block_unitary(shift.n_arrow.f, rng),
    )]
    # Deliberately misaligned: phase a single basis vector of psi_x.
    phase = np.diag([np.exp(0.7j), 1.0])
    twisted = shift.psi_x.replace_block(0, 0, phase @ shift.psi_x.block(0, 0))
    candidates.append(
        AlignedShiftData(
            shift.x_obj, shift.y_obj, shift.m_arrow, shift.n_arrow,
            twisted, shift.psi_y, shift.lag,
        )
    )
    for d in candidates:
        if not verify_concrete_shift(d):
            return False
        direct = max(alignment_residuals(d))
        via = max(two_arrow_residuals(d))
        if abs(direct - via) > tol:
            return False
    return True


def check_homotopy_roundtrip() -> bool:
    _, hx, hy = homotopy_shift_equivalence_from_se(GOLDEN_WITNESS, steps=8)
    return verify_homotopy(hx) and verify_homotopy(hy)


def check_search_recovery() -> bool:
    found = search_se(FULL_SHIFT_2, FULL_SHIFT_PAIR, 1, 1)
    if found is None or not verify_se(found):
        return False
    return search_se(FULL_SHIFT_2, from_rows([[3]]), 1, 5) is None


CHECKS = (
    ("witness-verification", check_witness_verification),
    ("chain-composition", check_chain_composition),
    ("invariant-separation", check_invariant_separation),
    ("tensor-dims-oracle", check_tensor_dims),
    ("bicategory-laws", check_bicategory_laws),
    ("alignment-transitivity", check_alignment_transitivity),
    ("alignment-formulations", check_alignment_formulations),
    ("homotopy-roundtrip", check_homotopy_roundtrip),
    ("search-recovery", check_search_recovery),
)


def run_selftest() -> list[tuple[str, bool]]:
    """Run every bundled check; returns (name, passed) pairs."""
    return [(name, bool(fn())) for name, fn in CHECKS]
