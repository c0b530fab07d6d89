"""Shared construction helpers for the path-decomposed structures.

Initial trees are assembled directly in the arena (construction is not an
access, so it is not metered); every later change goes through the cursor.
All three structures allocate handle i for the i-th smallest key, so arena
handles coincide with reference-tree indices.
"""

from .arena import NIL
from .model import LEFT, RIGHT
from .reference import ReferenceTree


def alloc_keyset(tree, P: ReferenceTree):
    a = tree.arena
    for i in range(P.n):
        h = a.alloc(i, P.depth[i])
    return list(range(P.n))


def build_balanced_rb(tree, nodes_by_key):
    """Link `nodes_by_key` into a complete BST; deepest-level nodes are red
    when the tree is not perfect.  Returns the subtree root handle."""
    a = tree.arena
    k = len(nodes_by_key)
    maxd = k.bit_length() - 1      # floor(log2 k)
    perfect = (k + 1) & k == 0     # k == 2^m - 1

    def rec(lo, hi, depth):
        if lo >= hi:
            return NIL
        mid = (lo + hi) // 2
        h = nodes_by_key[mid]
        a.red[h] = (not perfect) and depth == maxd
        l = rec(lo, mid, depth + 1)
        r = rec(mid + 1, hi, depth + 1)
        a.left[h], a.right[h] = l, r
        if l != NIL:
            a.parent[l] = h
        if r != NIL:
            a.parent[r] = h
        a.recompute(h)
        return h

    root = rec(0, k, 0)
    a.parent[root] = NIL
    return root


def hang_marked(tree, parent, side, child):
    """Attach a marked subtree root inside the key gap adjacent to parent on
    `side`: descend to the free slot and link."""
    a = tree.arena
    v = a.left[parent] if side == LEFT else a.right[parent]
    if v == NIL:
        if side == LEFT:
            a.left[parent] = child
        else:
            a.right[parent] = child
        a.parent[child] = parent
        return parent
    opp_left = side == RIGHT  # walk toward the gap
    while True:
        nxt = a.left[v] if opp_left else a.right[v]
        if nxt == NIL:
            break
        v = nxt
    if opp_left:
        a.left[v] = child
    else:
        a.right[v] = child
    a.parent[child] = v
    return v


def classify_zigzag(tree, path_nodes, below_key=None):
    """Split a run of path nodes into (zig_list, zag_list), both in path
    order.  A node is a zig when everything deeper on the path lies to its
    right; the last node compares against `below_key` (the key range that
    continues below) and defaults to zig."""
    a = tree.arena
    zig, zag = [], []
    for i, h in enumerate(path_nodes):
        if i + 1 < len(path_nodes):
            nxt = a.key[path_nodes[i + 1]]
        elif below_key is not None:
            nxt = below_key
        else:
            nxt = a.key[h] + 1
        (zig if nxt > a.key[h] else zag).append(h)
    return zig, zag


def link_zipper_group(tree, zig, zag):
    """Wire one zipper: the deepest zig is the group root, the rest of the
    zig list is its left subtree as a right-leaning chain headed by the
    shallowest zig; the deepest zag is the root's right child with the rest
    of the zag list as a left-leaning chain headed by the shallowest zag.

    Returns (group_root, rest_parent, rest_side): where the next part of
    the path (lower zipper or bottom tree) hangs."""
    a = tree.arena

    def chain(nodes, side):
        for u, v in zip(nodes, nodes[1:]):
            if side == RIGHT:
                a.right[u] = v
            else:
                a.left[u] = v
            a.parent[v] = u
        return nodes[0] if nodes else NIL

    if zig:
        root = zig[-1]
        zrest = chain(zig[:-1], RIGHT)
        a.left[root] = zrest
        if zrest != NIL:
            a.parent[zrest] = root
        if zag:
            r = zag[-1]
            a.right[root] = r
            a.parent[r] = root
            grest = chain(zag[:-1], LEFT)
            a.right[r] = grest
            if grest != NIL:
                a.parent[grest] = r
            return root, r, LEFT
        return root, root, RIGHT
    root = zag[-1]
    grest = chain(zag[:-1], LEFT)
    a.right[root] = grest
    if grest != NIL:
        a.parent[grest] = root
    return root, root, LEFT


def decompose(tree):
    """Partition of the key set into depth-ordered paths, one per marked
    component.  The test oracle against ReferenceTree.preferred_paths."""
    a = tree.arena
    out = []
    stack = [tree.root]
    while stack:
        top = stack.pop()
        comp = []
        inner = [top]
        while inner:
            h = inner.pop()
            comp.append(h)
            for c in (a.left[h], a.right[h]):
                if c != NIL:
                    if a.marked[c]:
                        stack.append(c)
                    else:
                        inner.append(c)
        comp.sort(key=lambda h: a.depth[h])
        out.append(comp)
    return out


def decomposition_matches(tree, P: ReferenceTree) -> bool:
    ours = {tuple(p) for p in decompose(tree)}
    ref = {tuple(p) for p in P.preferred_paths()}
    return ours == ref


def component_root_of(tree, h):
    """Marked root of the path representation containing h."""
    a = tree.arena
    while a.parent[h] != NIL and not a.marked[h]:
        h = a.parent[h]
    return h
