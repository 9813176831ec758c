"""Shift-equivalence witnesses: verify, compose, reverse, search.

Two square nonnegative integer matrices A and B are shift equivalent with
lag m when rectangles R, S satisfy A^m = RS, B^m = SR, BS = SA, AR = RB.
This script walks through the exact witness calculus on the classic pair:
the full 2-shift [2] and the 2x2 all-ones matrix.
"""

from shiftcalc import (
    SEWitness,
    compose_se,
    failing_equation,
    fold_chain,
    from_rows,
    identity_witness,
    random_sse_chain,
    reverse_se,
    search_se,
    verify_se,
)

# The classic lag-1 witness: [2] ~ [[1,1],[1,1]] via a row and a column.
a = from_rows([[2]])
b = from_rows([[1, 1], [1, 1]])
w = SEWitness(a, b, from_rows([[1, 1]]), from_rows([[1], [1]]), lag=1)
print("witness verifies:", verify_se(w))

# Perturb one entry of R and the verifier names the first broken equation.
broken = SEWitness(a, b, from_rows([[2, 1]]), w.s, lag=1)
print("perturbed witness fails at:", failing_equation(broken))

# The relation is symmetric (swap R and S) and transitive (multiply them).
print("reverse verifies:", verify_se(reverse_se(w)))
round_trip = compose_se(w, reverse_se(w))
print("round trip: lag", round_trip.lag, "R =", round_trip.r, "S =", round_trip.s)

# Every matrix has a trivial self-witness (A, A, I, A, 1).
print("identity witness verifies:", verify_se(identity_witness(b)))

# Bounded search re-discovers the witness above from scratch: it solves the
# linear equations AR = RB, BS = SA over a box first, then checks the
# factorizations.  Absence of a witness inside a box is a valid answer too.
found = search_se(a, b, lag=1, entry_bound=1)
print("search found R =", found.r, " S =", found.s)
print("search for [2] ~ [3]:", search_se(a, from_rows([[3]]), 1, 5))

# Random strong-shift-equivalence chains: every step is a lag-1 witness built
# from a row or column splitting, so it verifies by construction.  Folding a
# chain produces one witness whose lag is the chain length.
chain = random_sse_chain(from_rows([[1, 1], [1, 0]]), steps=3, seed=7)
print("chain sizes:", [s.a.rows for s in chain.steps], "->", chain.steps[-1].b.rows)
folded = fold_chain(chain)
print("folded witness: lag", folded.lag, "verifies:", verify_se(folded))
