"""Tango tree: a collection of red-black path trees linked by marked roots,
maintained with one cut + one concatenate per preferred-path crossing.
"""

from .arena import NIL
from .model import MeteredTree, STRICT, LEFT, RIGHT, PARENT
from .reference import ReferenceTree
from .redblack import cut_tango, concatenate_tango, boundary_low, real, EMPTY
from .paths import alloc_keyset, build_balanced_rb, hang_marked, decompose


class TangoTree(MeteredTree):
    def __init__(self, n):
        super().__init__(STRICT)
        if n < 1:
            raise ValueError("empty key set")
        self.n = n
        P = ReferenceTree(n)
        alloc_keyset(self, P)
        a = self.arena
        reps = []
        for path in P.preferred_paths():
            by_key = sorted(path)
            root = build_balanced_rb(self, by_key)
            a.marked[root] = True
            reps.append((path[0], root))
        # marked children do not contribute to aggregates, so hanging the
        # representations below each other needs no recomputation
        for top, root in reps:
            p = P.parent[top]
            if p == NIL:
                self.root = root
            else:
                side = LEFT if P.left[p] == top else RIGHT
                hang_marked(self, p, side, root)

    def name(self):
        return "tango"

    def decompose(self):
        return decompose(self)

    # -- in-representation neighbor walks ---------------------------------

    def _pred_slot(self, cur, x):
        """Marked child guarding the key gap just below x, or NIL."""
        a = self.arena
        cur.go(x)
        if a.left[x] == NIL:
            return NIL
        v = cur.move(LEFT)
        if a.marked[v]:
            return v
        while a.right[v] != NIL:
            v = cur.move(RIGHT)
            if a.marked[v]:
                return v
        return NIL

    def _continues_right(self, cur, x, rep_root):
        """Does the current path continue below x on its right (key) side?

        The nodes of the path deeper than x form a contiguous key range on
        one side of x; locate its minimum-key node through the max-depth
        augmentation and compare."""
        a = self.arena
        d = a.depth[x]
        cur.go(rep_root)
        if a.maxd[rep_root] <= d:
            return False  # x is the path bottom
        _, lp = boundary_low(self, cur, rep_root, d)
        return a.key[lp] > a.key[x]

    # -- access ------------------------------------------------------------

    def _crossing(self, cur, rep_root, y):
        """The search leaves the current path into the representation rooted
        at marked y: cut at one level above the top of y's path and join."""
        a = self.arena
        d = a.mind[y] - 1
        top, _bottom = cut_tango(self, cur, rep_root, d)
        return concatenate_tango(self, cur, top, y)

    def access(self, x):
        if not (0 <= x < self.n):
            raise KeyError(x)
        a = self.arena
        cur, trace = self.begin_access()
        rep_root = self.root
        v = cur.current
        while a.key[v] != x:
            side = LEFT if x < a.key[v] else RIGHT
            c = a.left[v] if side == LEFT else a.right[v]
            if c != NIL and a.marked[c]:
                cur.move(side)
                rep_root = self._crossing(cur, rep_root, c)
                cur.go(rep_root)
                v = rep_root
                continue
            v = cur.move(side)
        # the access itself prefers x's left side: extend the path below x
        if self._continues_right(cur, x, rep_root):
            top, _bottom = cut_tango(self, cur, rep_root, a.depth[x])
            m = self._pred_slot(cur, x)
            if m != NIL:
                top = concatenate_tango(self, cur, top, m)
            rep_root = top
        cur.go(x)
        return trace
