"""Computable shift-equivalence invariants of essential matrices.

These invariants can refute shift equivalence but never certify it: a
difference in any of them separates the matrices, while agreement merely
returns an inconclusive verdict (positive certificates are the business of
the witness module).

Cokernel groups are reported as invariant-factor lists in canonical form:
factors equal to 1 are dropped and each free summand appears as a trailing 0,
so two lists are equal iff the groups are isomorphic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import DomainError
from .exact import (
    IntMatrix,
    IntPolynomial,
    char_poly,
    identity,
    is_essential,
    mat_pow,
    mat_sub,
    poly,
    poly_eval_matrix,
    poly_strip_t,
    rank,
    smith_normal_form,
)

#: Order in which invariants are compared and named in verdicts.
INVARIANT_NAMES = ("nonzero_char_poly", "bowen_franks", "eventual_rank", "det_away_from_zero")


@dataclass(frozen=True)
class DimensionInvariants:
    """The computable shadow of the dimension data of an essential matrix.

    ``nonzero_char_poly`` is the characteristic polynomial with every factor
    of t removed; ``bowen_franks`` is the canonical invariant-factor list of
    coker(I - A); ``eventual_rank`` is the rank of A^n for n the matrix size.
    """

    nonzero_char_poly: IntPolynomial
    bowen_franks: tuple[int, ...]
    eventual_rank: int
    det_away_from_zero: int


@dataclass(frozen=True)
class ComparisonVerdict:
    """Outcome of comparing two invariant batteries.

    ``separating`` lists every invariant that differs, in the canonical
    order; empty means inconclusive.  ``primary`` names the first of them.
    """

    separating: tuple[str, ...]

    @property
    def distinguished(self) -> bool:
        return bool(self.separating)

    @property
    def primary(self) -> Optional[str]:
        return self.separating[0] if self.separating else None

    def __str__(self):
        if not self.distinguished:
            return "Inconclusive"
        return f"Distinguished({', '.join(self.separating)})"


def cokernel_invariant_factors(m: IntMatrix) -> tuple[int, ...]:
    """Canonical invariant factors of coker(m): drop 1s, keep a trailing 0
    per free summand."""
    snf = smith_normal_form(m)
    factors = [d for d in snf.diag if d != 1]
    free = m.rows - len(snf.diag) + sum(1 for d in snf.diag if d == 0)
    # Square input: rows == len(diag), so free counts exactly the zero diag
    # entries; keep the general formula for rectangular cokernels.
    torsion = [d for d in factors if d != 0]
    return tuple(torsion + [0] * free)


def compute_invariants(a: IntMatrix) -> DimensionInvariants:
    """The full invariant battery for an essential matrix."""
    if not is_essential(a):
        raise DomainError("invariants are defined for essential matrices")
    stripped, _ = poly_strip_t(char_poly(a))
    bf = cokernel_invariant_factors(mat_sub(identity(a.rows), a))
    ev_rank = rank(mat_pow(a, a.rows))
    det_away = (-1) ** stripped.degree * stripped.constant_term()
    return DimensionInvariants(stripped, bf, ev_rank, det_away)


def compare(a: IntMatrix, b: IntMatrix) -> ComparisonVerdict:
    """Compare the invariant batteries of two essential matrices.

    Distinguished verdicts name every differing invariant; shift-equivalent
    matrices always compare inconclusive.
    """
    inv_a = compute_invariants(a)
    inv_b = compute_invariants(b)
    fields = (
        inv_a.nonzero_char_poly == inv_b.nonzero_char_poly,
        inv_a.bowen_franks == inv_b.bowen_franks,
        inv_a.eventual_rank == inv_b.eventual_rank,
        inv_a.det_away_from_zero == inv_b.det_away_from_zero,
    )
    separating = tuple(
        name for name, equal in zip(INVARIANT_NAMES, fields) if not equal
    )
    return ComparisonVerdict(separating)


def bowen_franks_general(a: IntMatrix, p: IntPolynomial) -> tuple[int, ...]:
    """Invariant factors of coker(p(A)) for a polynomial with p(0) = +-1.

    The unit constant term makes the group invariant under shift
    equivalence, refining the plain I - A cokernel.
    """
    if p.constant_term() not in (1, -1):
        raise DomainError("generalized Bowen-Franks groups need p(0) in {1, -1}")
    return cokernel_invariant_factors(poly_eval_matrix(p, a))


#: The polynomial 1 - t, giving the classical cokernel group.
ONE_MINUS_T = poly([1, -1])
#: 1 + t and 1 - t^2, the refinements used by the cross-check suite.
ONE_PLUS_T = poly([1, 1])
ONE_MINUS_T_SQUARED = poly([1, 0, -1])
