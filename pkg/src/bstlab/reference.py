"""Static reference tree P with preferred children and the interleave bound.

P is a minimum-height BST over the key set, built by median split (ties
give the left subtree the extra node).  Only the preferred-child flags
ever change.  Keys are identified with their rank, so node i of P stores
the i-th smallest key; every structure in the package allocates its arena
in the same order, making reference indices and arena handles agree.

The interleave bound IB(X) follows the literal definition: for each node
y, take the subsequence of accesses falling in y's subtree, label each
"left" if the accessed node is in y's left subtree or is y itself, "right"
otherwise, and count label alternations.  IB(X)/2 - n lower-bounds the
cost of any BST-model algorithm on X.
"""

from .arena import NIL

LEFT, RIGHT = 0, 1


class CrossingEvent:
    """The search left its current preferred path: it descends into `node`
    whose parent's flag just flipped.  `cut_depth` = depth(node) - 1 is the
    depth consumed by tango/hybrid/zipper maintenance."""

    __slots__ = ("node", "depth", "cut_depth")

    def __init__(self, node, depth):
        self.node = node
        self.depth = depth
        self.cut_depth = depth - 1

    def __repr__(self):
        return f"Crossing(node={self.node}, d={self.depth})"


class ReferenceTree:
    def __init__(self, n):
        if n < 1:
            raise ValueError("reference tree needs at least one key")
        self.n = n
        self.left = [NIL] * n
        self.right = [NIL] * n
        self.parent = [NIL] * n
        self.depth = [0] * n
        self.preferred = [LEFT] * n
        self.root = self._build(0, n, NIL, 0)

    def _build(self, lo, hi, parent, depth):
        if lo >= hi:
            return NIL
        mid = lo + (hi - lo) // 2
        self.parent[mid] = parent
        self.depth[mid] = depth
        self.left[mid] = self._build(lo, mid, mid, depth + 1)
        self.right[mid] = self._build(mid + 1, hi, mid, depth + 1)
        return mid

    @property
    def height(self):
        return max(self.depth)

    def reset(self):
        for i in range(self.n):
            self.preferred[i] = LEFT

    def path_to(self, x):
        """Indices on the root-to-x search path."""
        path = []
        v = self.root
        while True:
            path.append(v)
            if v == x:
                return path
            v = self.left[v] if x < v else self.right[v]

    def simulate_access(self, x):
        """Update preferred flags toward x; return the crossing events.

        A crossing is any node where the flag actually flips: divergences
        from the old preferred path during the descent, plus the flip at x
        itself (an access counts as "left", so x's flag becomes left when x
        has a left child).
        """
        if not (0 <= x < self.n):
            raise KeyError(x)
        events = []
        v = self.root
        while v != x:
            side = LEFT if x < v else RIGHT
            child = self.left[v] if side == LEFT else self.right[v]
            if self.preferred[v] != side:
                self.preferred[v] = side
                events.append(CrossingEvent(child, self.depth[child]))
            v = child
        if self.left[x] != NIL and self.preferred[x] != LEFT:
            self.preferred[x] = LEFT
            events.append(CrossingEvent(self.left[x], self.depth[x] + 1))
        return events

    def preferred_paths(self):
        """Partition of the node set into preferred paths, each depth-ordered."""
        paths = []
        for top in range(self.n):
            p = self.parent[top]
            if p != NIL:
                pref = self.left[p] if self.preferred[p] == LEFT else self.right[p]
                if pref == top:
                    continue  # interior of some path
            path = []
            v = top
            while v != NIL:
                path.append(v)
                v = self.left[v] if self.preferred[v] == LEFT else self.right[v]
            paths.append(path)
        return paths


class AccessSequence:
    def __init__(self, keys, n):
        for k in keys:
            if not (0 <= k < n):
                raise ValueError(f"key {k} outside the key set")
        self.keys = list(keys)
        self.n = n

    def __len__(self):
        return len(self.keys)

    def __iter__(self):
        return iter(self.keys)


def interleave_bound(P: ReferenceTree, X) -> int:
    """IB(X) by the literal definition, via one ancestor walk per access."""
    last = [0] * P.n   # 0 unseen, 1 last-left, 2 last-right
    total = 0
    for x in X:
        v = P.root
        while True:
            lab = 1 if x <= v else 2
            if last[v] and last[v] != lab:
                total += 1
            last[v] = lab
            if v == x:
                break
            v = P.left[v] if x < v else P.right[v]
    return total


def interleave_bound_recount(P: ReferenceTree, X) -> int:
    """Independent oracle: per-node subsequence scan over the whole of X."""
    lo = [0] * P.n
    hi = [0] * P.n

    def span(v):
        l, h = v, v
        if P.left[v] != NIL:
            l = span(P.left[v])[0]
        if P.right[v] != NIL:
            h = span(P.right[v])[1]
        lo[v], hi[v] = l, h
        return l, h

    span(P.root)
    total = 0
    for y in range(P.n):
        prev = 0
        for x in X:
            if lo[y] <= x <= hi[y]:
                lab = 1 if x <= y else 2
                if prev and prev != lab:
                    total += 1
                prev = lab
    return total


def lower_bound(P: ReferenceTree, X) -> int:
    """Interleave lower bound on OPT(X): IB(X)/2 - n, division toward zero."""
    return interleave_bound(P, X) // 2 - P.n


def crossings_csv(P: ReferenceTree, X, out):
    """Per-access crossing counts and running IB: i,key,crossings,ib_running."""
    P.reset()
    running = 0
    out.write("i,key,crossings,ib_running\n")
    ib_last = [0] * P.n
    total = 0
    for i, x in enumerate(X):
        events = P.simulate_access(x)
        # running IB via the definition-based counter on the consumed prefix
        v = P.root
        while True:
            lab = 1 if x <= v else 2
            if ib_last[v] and ib_last[v] != lab:
                total += 1
            ib_last[v] = lab
            if v == x:
                break
            v = P.left[v] if x < v else P.right[v]
        running = total
        out.write(f"{i},{x},{len(events)},{running}\n")
