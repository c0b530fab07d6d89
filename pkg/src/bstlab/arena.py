"""Node arena shared by every tree structure in the package.

Nodes live in parallel arrays addressed by integer handles; handle -1
(NIL) means "no node".  Fields:

  key     search key (distinct integers, in-order within any tree)
  left, right, parent   structural links
  red     color bit for red-black machinery
  marked  root-of-path-representation bit
  depth   depth of the node in the static reference tree P
  mind, maxd  min/max of `depth` over the node's subtree, where the
              subtree does not continue through marked children
  bh      black height of the subtree, marked children counting as nil
  aux     four integer slots of process state per node (the O(log n)-bit
          budget; writes outside the four slots raise)

The arena never changes size once a structure is built: the structures
here do not insert or delete keys.
"""

NIL = -1

AUX_SLOTS = 4
AUX_LIMIT = 1 << 62  # one machine word per slot


class BudgetError(Exception):
    """A node tried to store more process state than its bit budget allows."""


class NodeArena:
    __slots__ = ("key", "left", "right", "parent", "red", "marked",
                 "depth", "mind", "maxd", "bh", "aux")

    def __init__(self):
        self.key = []
        self.left = []
        self.right = []
        self.parent = []
        self.red = []
        self.marked = []
        self.depth = []
        self.mind = []
        self.maxd = []
        self.bh = []
        self.aux = []

    def __len__(self):
        return len(self.key)

    def alloc(self, key, depth=0):
        h = len(self.key)
        self.key.append(key)
        self.left.append(NIL)
        self.right.append(NIL)
        self.parent.append(NIL)
        self.red.append(False)
        self.marked.append(False)
        self.depth.append(depth)
        self.mind.append(depth)
        self.maxd.append(depth)
        self.bh.append(1)
        self.aux.append([0, 0, 0, 0])
        return h

    def aux_write(self, h, slot, value):
        if not (0 <= slot < AUX_SLOTS) or abs(value) >= AUX_LIMIT:
            raise BudgetError(f"aux state of node {h} exceeds its bit budget")
        self.aux[h][slot] = value

    # -- augmentation ------------------------------------------------------

    def recompute(self, h):
        """Refresh mind/maxd/bh of h from its unmarked children."""
        d = self.depth[h]
        lo = hi = d
        b = 0
        c = self.left[h]
        if c != NIL and not self.marked[c]:
            if self.mind[c] < lo:
                lo = self.mind[c]
            if self.maxd[c] > hi:
                hi = self.maxd[c]
            b = self.bh[c]
        c = self.right[h]
        if c != NIL and not self.marked[c]:
            if self.mind[c] < lo:
                lo = self.mind[c]
            if self.maxd[c] > hi:
                hi = self.maxd[c]
            if self.bh[c] > b:
                b = self.bh[c]
        self.mind[h] = lo
        self.maxd[h] = hi
        self.bh[h] = b + (0 if self.red[h] else 1)

    def refresh_upward(self, h, stop_parent=NIL):
        """Recompute aggregates from h up to (excluding) stop_parent."""
        while h != NIL and h != stop_parent:
            self.recompute(h)
            h = self.parent[h]

    # -- structural rotation ----------------------------------------------

    def rotate_up(self, x):
        """Rotate x above its parent.  Returns the demoted parent."""
        p = self.parent[x]
        g = self.parent[p]
        if self.left[p] == x:
            b = self.right[x]
            self.right[x] = p
            self.left[p] = b
        else:
            b = self.left[x]
            self.left[x] = p
            self.right[p] = b
        if b != NIL:
            self.parent[b] = p
        self.parent[p] = x
        self.parent[x] = g
        if g != NIL:
            if self.left[g] == p:
                self.left[g] = x
            else:
                self.right[g] = x
        self.recompute(p)
        self.recompute(x)
        return p

    # -- unmetered read helpers (construction and test oracles) ------------

    def component(self, root):
        """Handles reachable from root without entering marked children."""
        out = []
        stack = [root]
        while stack:
            h = stack.pop()
            out.append(h)
            for c in (self.left[h], self.right[h]):
                if c != NIL and not self.marked[c]:
                    stack.append(c)
        return out

    def inorder(self, root):
        """In-order handles of the unmarked component under root."""
        out = []
        stack = []
        h = root
        while True:
            while h != NIL:
                stack.append(h)
                c = self.left[h]
                h = c if (c != NIL and not self.marked[c]) else NIL
            if not stack:
                break
            h = stack.pop()
            out.append(h)
            c = self.right[h]
            h = c if (c != NIL and not self.marked[c]) else NIL
        return out

    def subtree_depth_of(self, h, root):
        d = 0
        while h != root:
            h = self.parent[h]
            d += 1
        return d
