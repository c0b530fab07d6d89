"""Red-black auxiliary tree operations, all expressed as cursor walks and
single rotations so every structural change is visible to the model meter.

Trees here are binarized (2,4)-trees: a black node together with its red
children forms one (2,4)-node, and the black height of a subtree equals
its (2,4)-height.  Marked children are roots of other path representations
and count as external leaves: they only ever hang at positions where a nil
is expected, and all walks, validity checks and augmentations stop at them.

Operations act on the subtree hanging at a given root handle.  The caller's
anchor (parent link of that root) is updated automatically by rotations;
helpers re-read the current subtree root through the anchor.

# Invariants (checked by validate_rb):
# 1. In-order keys strictly increase.
# 2. No red node has a red unmarked child; the subtree root is black.
# 3. Equal black count on every root-to-external path (marked = external).
# 4. mind/maxd/bh fields match a full recomputation.
"""

from .arena import NIL
from .model import LEFT, RIGHT, PARENT

EMPTY = None  # explicit empty-bottom marker returned by cut_tango


def real(a, h):
    return h != NIL and not a.marked[h]


def _anchor(t, sub):
    p = t.arena.parent[sub]
    if p == NIL:
        return (NIL, LEFT)
    return (p, LEFT if t.arena.left[p] == sub else RIGHT)


def _sub_of(t, anchor):
    p, side = anchor
    if p == NIL:
        return t.root
    return t.arena.left[p] if side == LEFT else t.arena.right[p]


# ---------------------------------------------------------------------------
# test oracles (unmetered full scans)
# ---------------------------------------------------------------------------

def to_key_list(t, sub):
    a = t.arena
    return [a.key[h] for h in a.inorder(sub)]


def validate_rb(t, sub, check_aug=True):
    """True plus reason string; treats marked children as external leaves."""
    a = t.arena
    if sub == NIL:
        return True, ""
    if a.red[sub]:
        return False, f"root {sub} is red"
    msg = []

    def walk(h):
        lo = hi = a.depth[h]
        bhs = []
        for c in (a.left[h], a.right[h]):
            if real(a, c):
                if a.red[h] and a.red[c]:
                    msg.append(f"red-red at {h}->{c}")
                cb, cl, ch = walk(c)
                bhs.append(cb)
                lo = min(lo, cl)
                hi = max(hi, ch)
            else:
                bhs.append(0)
        if bhs[0] != bhs[1]:
            msg.append(f"black height mismatch under {h}: {bhs}")
        b = max(bhs) + (0 if a.red[h] else 1)
        if check_aug and (a.mind[h] != lo or a.maxd[h] != hi or a.bh[h] != b):
            msg.append(f"stale augmentation at {h}")
        return b, lo, hi

    walk(sub)
    keys = to_key_list(t, sub)
    if any(x >= y for x, y in zip(keys, keys[1:])):
        msg.append("in-order keys not increasing")
    return (not msg), "; ".join(msg[:4])


def dump_tree(t, sub):
    """Parenthesized debug text: key@depth[color,mark] per node."""
    a = t.arena

    def go(h):
        if h == NIL:
            return "."
        tag = f"{a.key[h]}@{a.depth[h]}[{'r' if a.red[h] else 'b'}{',M' if a.marked[h] else ''}]"
        if a.marked[h]:
            return f"<{tag}>"
        return f"({go(a.left[h])} {tag} {go(a.right[h])})"

    return go(sub)


# ---------------------------------------------------------------------------
# metered primitives
# ---------------------------------------------------------------------------

def bh_walk(t, cur, h):
    """Black height of the subtree at h, counted down its left spine."""
    a = t.arena
    if not real(a, h):
        return 0
    cur.go(h)
    b = 0
    v = h
    while True:
        if not a.red[v]:
            b += 1
        c = a.left[v]
        if not real(a, c):
            return b
        v = cur.move(LEFT)


def recompute_subtree(t, cur, sub):
    """Metered post-order refresh of mind/maxd/bh below sub."""
    a = t.arena
    cur.go(sub)

    def rec(h):
        for side, c in ((LEFT, a.left[h]), (RIGHT, a.right[h])):
            if real(a, c):
                cur.move(side)
                rec(c)
                cur.move(PARENT)
        a.recompute(h)

    rec(sub)


def _sweep_to_anchor(t, cur, frm, anchor):
    """Recompute aggregates walking from frm up to the subtree root."""
    a = t.arena
    cur.go(frm)
    stop = anchor[0]
    v = frm
    a.recompute(v)
    while a.parent[v] != stop and a.parent[v] != NIL:
        v = cur.move(PARENT)
        a.recompute(v)
    return v


def _blacken_root(t, cur, anchor):
    a = t.arena
    sub = _sub_of(t, anchor)
    if sub != NIL and a.red[sub]:
        cur.go(sub)
        a.red[sub] = False
        a.recompute(sub)
    return sub


def _insert_fixup(t, cur, x, anchor):
    """Classic red-black insert fixup for a freshly reddened node x."""
    a = t.arena
    while True:
        sub = _sub_of(t, anchor)
        if x == sub:
            if a.red[x]:
                cur.go(x)
                a.red[x] = False
                a.recompute(x)
            return
        p = a.parent[x]
        if not a.red[p]:
            return
        if p == sub:  # red subtree root: blacken and stop
            cur.go(p)
            a.red[p] = False
            a.recompute(p)
            return
        g = a.parent[p]
        u = a.left[g] if a.right[g] == p else a.right[g]
        if real(a, u) and a.red[u]:
            cur.go(p)
            a.red[p] = False
            a.recompute(p)
            cur.go(u)
            a.red[u] = False
            a.recompute(u)
            cur.go(g)
            a.red[g] = True
            a.recompute(g)
            x = g
            continue
        if (a.left[g] == p) != (a.left[p] == x):  # inner child: straighten
            cur.go(x)
            cur.rotate()
            x, p = p, x
        cur.go(p)
        a.red[p] = False
        a.red[g] = True
        cur.rotate()  # p above g
        return


# ---------------------------------------------------------------------------
# build: depth-ordered path chain -> valid red-black tree, O(k) work
# ---------------------------------------------------------------------------

def build_from_path(t, cur, nodes):
    """Rebuild a physical path chain (ordered by reference depth) into a
    valid red-black tree over the same nodes.  Returns the new subtree root.

    Absorbs the chain top-down: each next node already hangs adjacent to
    the built prefix, so one recolor plus an insert fixup per node
    suffices, keeping total rotations below C_BUILD * k.
    """
    a = t.arena
    if not nodes:
        raise ValueError("empty path")
    for u, v in zip(nodes, nodes[1:]):
        if a.depth[v] != a.depth[u] + 1:
            raise ValueError("path nodes must have consecutive depths")
        if not (a.left[u] == v or a.right[u] == v):
            raise ValueError("nodes do not form a physical chain")
    first = nodes[0]
    anchor = _anchor(t, first)
    was_marked = a.marked[first]
    cur.go(first)
    if was_marked:
        cur.set_mark(first, False)
    a.red[first] = False
    a.recompute(first)
    for x in nodes[1:]:
        cur.go(x)
        if a.marked[x]:
            cur.set_mark(x, False)
        a.red[x] = True
        a.recompute(x)
        _insert_fixup(t, cur, x, anchor)
    sub = _sub_of(t, anchor)
    recompute_subtree(t, cur, sub)
    sub = _blacken_root(t, cur, anchor)
    if was_marked:
        cur.go(sub)
        cur.set_mark(sub, True)
    return sub


# ---------------------------------------------------------------------------
# boundary search via the min/max depth augmentation
# ---------------------------------------------------------------------------

def boundary_low(t, cur, sub, d):
    """(ell, ell_prime): the minimum-key node of depth > d and its
    predecessor (NIL when the deep range starts at the minimum key)."""
    a = t.arena
    cur.go(sub)
    if a.maxd[sub] <= d:
        raise ValueError("no node deeper than d")
    ell = NIL
    v = sub
    while True:
        l = a.left[v]
        if real(a, l) and a.maxd[l] > d:
            v = cur.move(LEFT)
        elif a.depth[v] > d:
            lp = v
            break
        else:
            ell = v
            v = cur.move(RIGHT)
    l = a.left[lp]
    if real(a, l):
        v = cur.move(LEFT)
        while real(a, a.right[v]):
            v = cur.move(RIGHT)
        ell = v
    return ell, lp


def boundary_high(t, cur, sub, d):
    """(r, r_prime): the maximum-key node of depth > d and its successor."""
    a = t.arena
    cur.go(sub)
    if a.maxd[sub] <= d:
        raise ValueError("no node deeper than d")
    r = NIL
    v = sub
    while True:
        c = a.right[v]
        if real(a, c) and a.maxd[c] > d:
            v = cur.move(RIGHT)
        elif a.depth[v] > d:
            rp = v
            break
        else:
            r = v
            v = cur.move(LEFT)
    c = a.right[rp]
    if real(a, c):
        v = cur.move(RIGHT)
        while real(a, a.left[v]):
            v = cur.move(LEFT)
        r = v
    return r, rp


def find_boundary(t, cur, sub, d):
    """(ell, ell', r, r') bracketing the contiguous deep key range."""
    a = t.arena
    cur.go(sub)
    if a.maxd[sub] <= d:
        raise ValueError("all nodes at depth <= d")
    if a.mind[sub] > d:
        raise ValueError("all nodes deeper than d")
    ell, lp = boundary_low(t, cur, sub, d)
    r, rp = boundary_high(t, cur, sub, d)
    return ell, lp, r, rp


# ---------------------------------------------------------------------------
# bounded region reshaping (cleave/glue steps of the near-root split)
# ---------------------------------------------------------------------------

def _flatten_region(t, cur, anchor, region):
    """Rotate the connected region at the top of the subtree into a right
    chain.  Yields once per rotation."""
    a = t.arena
    v = _sub_of(t, anchor)
    while v in region:
        l = a.left[v]
        if l != NIL and l in region:
            cur.go(l)
            cur.rotate()
            yield
            v = l
        else:
            nxt = a.right[v]
            if nxt == NIL or nxt not in region:
                break
            v = nxt


def _place_chain(t, cur, nodes, target):
    """Reshape a right chain of region nodes (ascending `nodes`) into the
    `target` nested form (index, left, right).  Yields per rotation."""

    def rec(lo, hi, tgt):
        if tgt is None:
            return
        i, lt, rt = tgt
        x = nodes[i]
        cur.go(x)
        for _ in range(i - lo):
            cur.rotate()
            yield
        yield from rec(lo, i - 1, lt)
        yield from rec(i + 1, hi, rt)

    yield from rec(0, len(nodes) - 1, target)


def _recompute_target(a, nodes, target):
    """Post-order aggregate refresh over a reshaped region."""
    if target is None:
        return
    i, lt, rt = target
    _recompute_target(a, nodes, lt)
    _recompute_target(a, nodes, rt)
    a.recompute(nodes[i])


def _shape_matches(a, anchor_child, nodes, target):
    """Does the region already have the target shape?"""
    if target is None:
        return True
    i, lt, rt = target
    h = nodes[i]
    if anchor_child != h:
        return False
    if lt is not None and not _shape_matches(a, a.left[h], nodes, lt):
        return False
    if rt is not None and not _shape_matches(a, a.right[h], nodes, rt):
        return False
    return True


def _reshape(t, cur, anchor, nodes_asc, target):
    """Flatten + place: bounded region at the subtree top to target shape."""
    if _shape_matches(t.arena, _sub_of(t, anchor), nodes_asc, target):
        return
    yield from _flatten_region(t, cur, anchor, set(nodes_asc))
    yield from _place_chain(t, cur, nodes_asc, target)
    _recompute_target(t.arena, nodes_asc, target)


def _chain_target(indices, lean):
    """Nested target for a pure chain: lean=RIGHT descends through right
    children from the smallest index, lean=LEFT through left children from
    the largest."""
    if not indices:
        return None
    if lean == RIGHT:
        return (indices[0], None, _chain_target(indices[1:], RIGHT))
    return (indices[-1], _chain_target(indices[:-1], LEFT), None)


# ---------------------------------------------------------------------------
# the near-root split (cleave + glue), resumable
# ---------------------------------------------------------------------------

class SplitStats:
    __slots__ = ("max_group",)

    def __init__(self):
        self.max_group = 0


def split_steps(t, cur, sub, key, stats=None):
    """Split the red-black subtree at sub around `key` (must be present).

    Generator; yields after each rotation so the process can be suspended
    and resumed.  On completion the subtree root is the node holding `key`;
    its left and right subtrees are valid red-black trees on the smaller
    and larger keys.  Every rotation happens within D_SPLIT levels of the
    subtree root: the cleave folds the two sides of the search path around
    the root, and the glue rebuilds each side top-down while at most five
    pending subtrees of any (2,4)-height exist.
    """
    a = t.arena
    anchor = _anchor(t, sub)
    was_marked = a.marked[sub]
    cur.go(sub)
    if was_marked:
        cur.set_mark(sub, False)

    hc = bh_walk(t, cur, sub)
    gtop = NIL
    ltop = NIL
    c = sub
    l_units = []   # (2,4)-heights of pending left-side units, top-down
    g_units = []

    while True:
        cur.go(c)
        # binaries of the (2,4)-node at c (ascending) and their gap units
        bins = [c]
        lc, rc = a.left[c], a.right[c]
        if real(a, lc) and a.red[lc]:
            bins.insert(0, lc)
        if real(a, rc) and a.red[rc]:
            bins.append(rc)
        units = [a.left[bins[0]]]
        for u, v in zip(bins, bins[1:]):
            units.append(a.right[u] if a.parent[u] == v else a.left[v])
        units.append(a.right[bins[-1]])

        found = None
        gap = len(bins)
        for i, b in enumerate(bins):
            if key == a.key[b]:
                found = b
                break
            if key < a.key[b]:
                gap = i
                break

        if found is not None:
            j = bins.index(found)
            l_bins, g_bins = bins[:j], bins[j + 1:]
            l_new, g_new = units[:j + 1], units[j + 1:]
        else:
            nxt = units[gap]
            if not real(a, nxt):
                raise KeyError(f"key {key} not present in subtree")
            l_bins, g_bins = bins[:gap], bins[gap:]
            l_new, g_new = units[:gap], units[gap + 1:]

        region_asc = ([ltop] if ltop != NIL else []) + bins + ([gtop] if gtop != NIL else [])
        idx = {h: i for i, h in enumerate(region_asc)}
        l_chain = ([ltop] if ltop != NIL else []) + l_bins   # ascending
        g_chain = g_bins + ([gtop] if gtop != NIL else [])   # ascending
        lt = _chain_target([idx[h] for h in l_chain], LEFT)
        gt = _chain_target([idx[h] for h in g_chain], RIGHT)

        if found is not None:
            target = (idx[found], lt, gt)
        elif g_chain:
            i0, _, tr = gt
            target = (i0, lt, tr)
        else:
            target = lt

        if target is not None:
            yield from _reshape(t, cur, anchor, region_asc, target)

        hu = hc - 1
        l_units[0:0] = [hu] * len(l_new)
        g_units[0:0] = [hu] * len(g_new)
        if found is not None:
            x = found
            break
        ltop = l_bins[-1] if l_bins else ltop
        gtop = g_bins[0] if g_bins else gtop
        c = nxt
        hc -= 1

    yield from _glue_side(t, cur, x, LEFT, l_units, stats)
    yield from _glue_side(t, cur, x, RIGHT, g_units, stats)
    cur.go(x)
    a.red[x] = False
    a.recompute(x)
    if was_marked:
        cur.set_mark(x, True)
    _sweep_to_anchor(t, cur, x, anchor)


def _glue_side(t, cur, x, side, units, stats):
    """Rebuild one folded spine below x into a valid red-black tree.

    `units` holds the (2,4)-heights of the pending subtrees, top-down;
    the spine binaries sit between consecutive units (len(units)-1 of
    them).  Repeatedly merge the top equal-height group into one or two
    (2,4)-nodes; when the group has a single member, dismantle the root of
    the next taller unit onto the spine.  Yields per rotation.
    """
    a = t.arena

    def spine(k):
        out = []
        v = a.left[x] if side == LEFT else a.right[x]
        while len(out) < k:
            out.append(v)
            v = a.left[v] if side == LEFT else a.right[v]
        return out

    def unit_at(i, sp):
        if i < len(sp):
            s = sp[i]
            return a.right[s] if side == LEFT else a.left[s]
        s = sp[-1]
        return a.left[s] if side == LEFT else a.right[s]

    while len(units) > 1:
        nk = len(units) - 1
        h = units[0]
        m = 1
        while m < len(units) and units[m] == h:
            m += 1
        if stats is not None and m > stats.max_group:
            stats.max_group = m

        if m == 1:
            # dismantle the root (2,4)-node of the next taller unit
            sp = spine(min(2, nk))
            w = unit_at(1, sp)
            bins = [w]
            lc, rc = a.left[w], a.right[w]
            if real(a, lc) and a.red[lc]:
                bins.insert(0, lc)
            if real(a, rc) and a.red[rc]:
                bins.append(rc)
            kids = len(bins) + 1
            if side == LEFT:
                asc = ([sp[1]] if len(sp) > 1 else []) + bins + [sp[0]]
                tgt = _chain_target(list(range(len(asc))), LEFT)
            else:
                asc = [sp[0]] + bins + ([sp[1]] if len(sp) > 1 else [])
                tgt = _chain_target(list(range(len(asc))), RIGHT)
            yield from _reshape(t, cur, (x, side), asc, tgt)
            units[1:2] = [units[1] - 1] * kids
            continue

        two = (m == 5)
        cnt = 5 if two else m
        sp = spine(min(nk, 5 if two else cnt))
        if two:
            w1keys, w2keys = sp[:2], [sp[3]]
            sep = sp[2]
            deeper = sp[4] if nk >= 5 else NIL
        else:
            w1keys, w2keys = sp[:cnt - 1], []
            sep = sp[cnt - 1] if nk >= cnt else NIL
            deeper = NIL
        region = w1keys + w2keys + ([sep] if sep != NIL else []) + ([deeper] if deeper != NIL else [])
        asc = sorted(region, key=lambda n: a.key[n])
        idx = {n: i for i, n in enumerate(asc)}

        def node24(keys):
            """(target, black, reds) for the canonical binarized node."""
            ks = sorted(keys, key=lambda n: a.key[n])
            if len(ks) == 1:
                return (idx[ks[0]], None, None), ks[0], []
            if len(ks) == 2:
                return (idx[ks[1]], (idx[ks[0]], None, None), None), ks[1], [ks[0]]
            return ((idx[ks[1]], (idx[ks[0]], None, None), (idx[ks[2]], None, None)),
                    ks[1], [ks[0], ks[2]])

        t1, b1, r1 = node24(w1keys)
        formed = [(b1, r1)]
        if two:
            t2, b2, r2 = node24(w2keys)
            formed.append((b2, r2))
        if sep == NIL:
            tgt = t1
        elif side == LEFT:
            if two:
                tgt = (idx[sep], (idx[deeper], None, t2) if deeper != NIL else t2, t1)
            else:
                tgt = (idx[sep], None, t1)
        else:
            if two:
                tgt = (idx[sep], t1, (idx[deeper], t2, None) if deeper != NIL else t2)
            else:
                tgt = (idx[sep], t1, None)
        yield from _reshape(t, cur, (x, side), asc, tgt)
        for blk, reds in formed:
            for rn in reds:
                cur.go(rn)
                a.red[rn] = True
                a.recompute(rn)
            cur.go(blk)
            a.red[blk] = False
            a.recompute(blk)
        if sep != NIL:
            if deeper != NIL:
                cur.go(deeper)
                a.recompute(deeper)
            cur.go(sep)
            a.recompute(sep)
        if two:
            units[0:5] = [h + 1, h + 1]
        else:
            units[0:cnt] = [h + 1]

    v = a.left[x] if side == LEFT else a.right[x]
    if real(a, v) and a.red[v]:
        cur.go(v)
        a.red[v] = False
        a.recompute(v)


def split_near_root(t, cur, sub, key, stats=None):
    """Run the near-root split to completion; returns the new subtree root."""
    anchor = _anchor(t, sub)
    for _ in split_steps(t, cur, sub, key, stats):
        pass
    return _sub_of(t, anchor)


# ---------------------------------------------------------------------------
# joins
# ---------------------------------------------------------------------------

def fix_join(t, cur, j):
    """Rebalance the subtree rooted at j whose two children are valid
    red-black trees: descend j along the taller side's spine until the
    black heights match, redden it, then run insert fixup.  Returns the
    new subtree root."""
    a = t.arena
    anchor = _anchor(t, j)
    cur.go(j)
    lc, rc = a.left[j], a.right[j]
    bhl = bh_walk(t, cur, lc) if real(a, lc) else 0
    bhr = bh_walk(t, cur, rc) if real(a, rc) else 0
    cur.go(j)
    if bhl == bhr:
        a.red[j] = False
        a.recompute(j)
        _sweep_to_anchor(t, cur, j, anchor)
        return _sub_of(t, anchor)
    if bhl > bhr:
        b = bhl
        while True:
            v = a.left[j]
            if (not real(a, v) or not a.red[v]) and b == bhr:
                break
            cur.go(v)
            cur.rotate()
            if not a.red[v]:
                b -= 1
            cur.go(j)
    else:
        b = bhr
        while True:
            v = a.right[j]
            if (not real(a, v) or not a.red[v]) and b == bhl:
                break
            cur.go(v)
            cur.rotate()
            if not a.red[v]:
                b -= 1
            cur.go(j)
    a.red[j] = True
    a.recompute(j)
    _insert_fixup(t, cur, j, anchor)
    deepest = j
    _sweep_to_anchor(t, cur, deepest, anchor)
    return _blacken_root(t, cur, anchor)


# ---------------------------------------------------------------------------
# CUT-TANGO and CONCATENATE-TANGO
# ---------------------------------------------------------------------------

def cut_tango(t, cur, sub, d):
    """Cut the path tree at depth d: returns (top_root, bottom_root).

    The top tree keeps every node of depth <= d; the bottom holds the rest,
    re-marked and hanging below the top inside its key gap.  Returns
    (top_root, EMPTY) when nothing is deeper than d."""
    a = t.arena
    cur.go(sub)
    if a.mind[sub] > d:
        raise ValueError("cut would empty the top path")
    if a.maxd[sub] <= d:
        return sub, EMPTY
    anchor = _anchor(t, sub)
    was_marked = a.marked[sub]
    ell, lp, r, rp = find_boundary(t, cur, sub, d)
    if was_marked:
        cur.go(sub)
        cur.set_mark(sub, False)
    if ell != NIL:
        split_near_root(t, cur, _sub_of(t, anchor), a.key[ell])
        head = _sub_of(t, anchor)  # == ell
        if r != NIL:
            split_near_root(t, cur, a.right[head], a.key[r])
            mid = a.right[head]    # == r
            b = a.left[mid]
            cur.go(b)
            cur.set_mark(b, True)
            cur.move(PARENT)
            a.recompute(mid)
            fix_join(t, cur, mid)
        else:
            b = a.right[head]
            cur.go(b)
            cur.set_mark(b, True)
            cur.move(PARENT)
            a.recompute(head)
        fix_join(t, cur, head)
    else:
        split_near_root(t, cur, _sub_of(t, anchor), a.key[r])
        head = _sub_of(t, anchor)  # == r
        b = a.left[head]
        cur.go(b)
        cur.set_mark(b, True)
        cur.move(PARENT)
        a.recompute(head)
        fix_join(t, cur, head)
    top = _sub_of(t, anchor)
    if was_marked:
        cur.go(top)
        cur.set_mark(top, True)
    _sweep_to_anchor(t, cur, top, anchor)
    return top, b


def concatenate_tango(t, cur, asub, broot):
    """Join path tree A with the path tree B hanging marked below it.

    B's path starts exactly one reference level below A's deepest node and
    its keys fill one key gap of A.  Returns the root of the joined tree."""
    a = t.arena
    cur.go(asub)
    if a.maxd[asub] + 1 != a.mind[broot]:
        raise ValueError("paths are not depth-adjacent")
    anchor = _anchor(t, asub)
    was_marked = a.marked[asub]
    q = a.parent[broot]
    bleft = a.left[q] == broot
    if was_marked:
        cur.set_mark(asub, False)
    split_near_root(t, cur, _sub_of(t, anchor), a.key[q])
    head = _sub_of(t, anchor)  # == q
    side = LEFT if bleft else RIGHT
    inner = a.left[head] if bleft else a.right[head]
    if inner == broot:
        cur.go(broot)
        cur.set_mark(broot, False)
        cur.move(PARENT)
        a.recompute(head)
    else:
        v = inner
        cur.go(v)
        if bleft:
            while real(a, a.right[v]):
                v = cur.move(RIGHT)
        else:
            while real(a, a.left[v]):
                v = cur.move(LEFT)
        pivot = v
        split_near_root(t, cur, inner, a.key[pivot])
        j = a.left[head] if bleft else a.right[head]  # == pivot
        cur.go(broot)
        cur.set_mark(broot, False)
        cur.move(PARENT)
        a.recompute(j)
        fix_join(t, cur, j)
    fix_join(t, cur, head)
    out = _sub_of(t, anchor)
    if was_marked:
        cur.go(out)
        cur.set_mark(out, True)
    _sweep_to_anchor(t, cur, out, anchor)
    return out


# ---------------------------------------------------------------------------
# linearize: reshape a zig (zag) block into a depth-ordered chain
# ---------------------------------------------------------------------------

def linearize_steps(t, cur, sub, side):
    """Reshape the subtree at sub into a chain ordered by reference depth.

    side="zig": the block holds zig segments (key order equals depth
    order) and becomes a right-leaning chain headed by its minimum key;
    side="zag" is the mirror image.  Each node takes part in at most three
    rotations.  Yields per rotation.
    """
    a = t.arena
    anchor = _anchor(t, sub)

    def fwd_child(h):
        return a.right[h] if side == "zig" else a.left[h]

    def bwd_child(h):
        return a.left[h] if side == "zig" else a.right[h]

    root = _sub_of(t, anchor)
    if not real(a, root):
        return
    # already a forward chain: nothing to do (a scan costs moves, not rotations)
    v = root
    cur.go(root)
    while not real(a, bwd_child(v)):
        c = fwd_child(v)
        if not real(a, c):
            cur.go(root)
            return
        v = cur.move(RIGHT if side == "zig" else LEFT)
    while True:  # pull the extreme node to the top
        root = _sub_of(t, anchor)
        c = fwd_child(root)
        if not real(a, c):
            break
        cur.go(c)
        cur.rotate()
        yield
    while True:
        root = _sub_of(t, anchor)
        l = bwd_child(root)
        if not real(a, l):
            break
        if not real(a, fwd_child(l)):
            cur.go(l)
            cur.rotate()
            yield
        else:
            g = fwd_child(l)
            cur.go(g)
            cur.rotate()
            yield


def linearize(t, cur, sub, side):
    """Run linearize_steps to completion; returns (new_root, rotations)."""
    anchor = _anchor(t, sub)
    n = 0
    for _ in linearize_steps(t, cur, sub, side):
        n += 1
    return _sub_of(t, anchor), n
