"""Static minimum-height tree: the trivial O(log n)-per-access baseline."""

from .arena import NIL
from .model import MeteredTree, STRICT, LEFT, RIGHT
from .reference import ReferenceTree
from .paths import alloc_keyset, build_balanced_rb


class StaticTree(MeteredTree):
    def __init__(self, n):
        super().__init__(STRICT)
        P = ReferenceTree(n)
        self.n = n
        alloc_keyset(self, P)
        self.root = build_balanced_rb(self, list(range(n)))

    def name(self):
        return "static"

    def access(self, x):
        if not (0 <= x < self.n):
            raise KeyError(x)
        cur, trace = self.begin_access()
        a = self.arena
        v = cur.current
        while a.key[v] != x:
            v = cur.move(LEFT if x < a.key[v] else RIGHT)
        return trace
