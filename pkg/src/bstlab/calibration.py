"""Pinned constants for every asymptotic claim in the package.

Each O(.) bound in the structures is asserted at test time with a fixed
constant.  The constants below were calibrated once on the test suites in
this repository and are not tuned per run.
"""

# Rotation locality of the near-root split: every rotation it performs
# happens within this many binary levels of the subtree root.
D_SPLIT = 8

# Rotation locality inside a zipper path representation: split work plus
# the zipper scaffolding above the bottom tree's root.
D_LOCAL = D_SPLIT + 4

# Incremental transfer speed: steps advanced per node cut from a top path
# (hybrid) or emitted from a zipper (zipper tree), and per push/pop on the
# hybrid stack.  One step is one elementary operation (a rotation or a
# cursor move).  At bench scales ll(n) is 4..5 and the extraction's
# constant factors exceed SPEED_EXTRACT * ll(n) operations, so the forced
# completion that guards the top-path length fires regularly; the
# incremental speed dominates as n grows.
SPEED_EXTRACT = 4

# Elementary operations per step (a rotation or a cursor move each count 1).
STEP_OPS = 1

# Worst-case single access: cost <= C_WC * ceil(log2(n+1)).
C_WC = 30

# The hybrid tree pays a larger constant on accesses that flip the
# preferred side below the target (three extraction passes plus two
# joins); its worst-case bound carries its own calibrated constant.
C_WC_HYBRID = 64

# Competitive accounting: total cost <= C_COMP * (IB(X) + n + m) * ll(n).
C_COMP = 12

# Height lemma: depth of x in a hybrid/zipper tree <= C_DEPTH * (d_P(x)+1).
C_DEPTH = 8

# build_from_path work (rotations) <= C_BUILD * k.
C_BUILD = 3

# Hybrid stack: push/pop step bound, multipop step bound, amortized bound.
C_OP = 96
C_MP = 60
C_AM = 64


def lg(n: int) -> int:
    """ceil(log2(n+1)): number of levels of a minimum-height tree on n keys."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return n.bit_length()


def ll(n: int) -> int:
    """Integer stand-in for log log n, valid down to n = 1."""
    inner = max(2, lg(n))
    return max(1, (inner - 1).bit_length())
