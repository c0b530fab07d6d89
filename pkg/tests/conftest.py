import random

import pytest

from bstlab.arena import NIL
from bstlab.model import MeteredTree, RELAXED


class BareTree(MeteredTree):
    """A standalone tree for exercising the red-black machinery directly."""

    def __init__(self, mode=RELAXED):
        super().__init__(mode)


def chain_tree(path, mode=RELAXED):
    """Build a physical path chain from [(key, depth), ...] in path order.

    Each node becomes the single child of its predecessor, on the side its
    key dictates.  Returns (tree, handles).
    """
    t = BareTree(mode)
    a = t.arena
    hs = []
    for key, depth in path:
        h = a.alloc(key, depth)
        if hs:
            p = hs[-1]
            if key < a.key[p]:
                a.left[p] = h
            else:
                a.right[p] = h
            a.parent[h] = p
        hs.append(h)
    t.root = hs[0]
    for h in reversed(hs):
        a.recompute(h)
    return t, hs


def random_path(rng, k, lo=0, hi=1 << 30, d0=0):
    """Random reference-tree path of k nodes: consecutive depths, keys
    nested like a BST search path.  Key choices always leave room for the
    remaining nodes on one side."""
    out = []
    for i in range(k):
        remaining = k - i - 1
        go_right = rng.random() < 0.5
        if go_right and hi - lo <= remaining:
            go_right = False
        if not go_right and hi - lo <= remaining:
            go_right = True
        if go_right:
            key = rng.randrange(lo, hi - remaining)
            out.append((key, d0 + i))
            lo = key + 1
        else:
            key = rng.randrange(lo + remaining, hi)
            out.append((key, d0 + i))
            hi = key
    return out


def random_rb_tree(rng, k, mode=RELAXED):
    """Random red-black path tree built through build_from_path."""
    from bstlab.redblack import build_from_path

    path = random_path(rng, k)
    t, hs = chain_tree(path, mode)
    cur, trace = t.begin_access()
    sub = build_from_path(t, cur, hs)
    return t, sub


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
