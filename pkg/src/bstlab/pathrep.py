"""Shared machinery for the path-decomposed trees (hybrid and zipper).

A path representation holds one preferred path: some prefix materialized
near the marked root plus a red-black bottom tree over the rest.  The
central resumable process extracts the next ll(n) shallowest path nodes
from a bottom tree:

    boundary -> split at ell -> split at r -> linearize B -> linearize E
    [-> zip]

The zip phase merges the two linearized chains by reference depth, one or
two rotations per emitted node, all adjacent to the representation root.
Zipper trees park the process before the zip (the parked shape is exactly
a zipper); hybrid trees run it to completion, appending to the top path.

During an access the pieces cut out of crossed representations stay where
they hang; each red-black piece is marked and remembers (in its aux state)
the chain run above it and the previous piece, so the final concatenation
can retrace and fold everything without auxiliary storage.
"""

from .arena import NIL
from .calibration import ll
from .model import LEFT, RIGHT, PARENT
from .redblack import (real, build_from_path, concatenate_tango,
                       recompute_subtree,
                       split_steps, linearize_steps, boundary_low,
                       boundary_high)

# aux slot layout on marked roots: representations use TOP and PHASE,
# cut-out pieces use CHAIN and PREV as fold breadcrumbs.
AUX_TOP = 0
AUX_CHAIN = 1   # chain-run top above this piece, handle + 1 (0 = none)
AUX_PREV = 2    # previous piece root, handle + 1 (0 = none)
AUX_PHASE = 3


class RepInfo:
    """Live bookkeeping for one path representation."""

    __slots__ = ("root", "top_len", "ext", "sizes")

    def __init__(self, root, top_len=0, sizes=(0, 0, 0, 0)):
        self.root = root
        self.top_len = top_len
        self.ext = None
        self.sizes = sizes  # zipper: (upper_zig, upper_zag, lower_zig, lower_zag)


PH_IDLE, PH_BOUNDARY, PH_SPLIT_L, PH_SPLIT_R, PH_LIN_B, PH_LIN_E, PH_ZIP, PH_DONE = range(8)

PHASE_NAMES = ["idle", "boundary", "split_l", "split_r",
               "linearize_b", "linearize_e", "zip", "done"]


class _CursorProxy:
    """The extraction outlives single accesses; this forwards every cursor
    operation to whichever cursor is live on the tree right now."""

    __slots__ = ("tree",)

    def __init__(self, tree):
        self.tree = tree

    def go(self, h):
        return self.tree._cur.go(h)

    def move(self, d):
        return self.tree._cur.move(d)

    def rotate(self):
        return self.tree._cur.rotate()

    def set_mark(self, h, b):
        return self.tree._cur.set_mark(h, b)

    def aux_write(self, h, s, v):
        return self.tree._cur.aux_write(h, s, v)

    @property
    def current(self):
        return self.tree._cur.current


class Extraction:
    """Resumable extraction of the shallowest ll(n) nodes of a bottom tree.

    The bottom hangs at `anchor` (located by walking the top path when the
    caller passes None).  at_rep_root: the bottom is the entire
    representation, so emitted nodes become its new marked root; such
    extractions are always driven to completion within one access.
    park_before_zip: stop at the linearized state (the zipper variant).
    """

    def __init__(self, tree, rep, anchor=None, at_rep_root=False,
                 park_before_zip=False):
        self.tree = tree
        self.rep = rep
        self.at_rep_root = at_rep_root
        self.rooted = False   # has an emission become the rep root yet
        self.park = park_before_zip
        self.phase = PH_BOUNDARY
        self.done = False
        self.emitted = 0
        self.ell = NIL
        self.r = NIL
        self.steps = 0
        self.serial = -1
        a = tree.arena
        cur = tree._cur
        if anchor is None:
            v = rep.root
            cur.go(v)
            if at_rep_root or rep.top_len == 0:
                p = a.parent[v]
                side = LEFT if (p != NIL and a.left[p] == v) else RIGHT
                anchor = (p, side)
            else:
                for _ in range(rep.top_len - 1):
                    lc = a.left[v]
                    nxt = lc if real(a, lc) else a.right[v]
                    v = cur.move(LEFT if nxt == lc else RIGHT)
                lc, rc = a.left[v], a.right[v]
                bot = lc if real(a, lc) else (rc if real(a, rc) else NIL)
                if bot == NIL:
                    self.done = True
                    self.phase = PH_DONE
                    self.gen = iter(())
                    self.anchor = (v, LEFT)
                    self.site = v
                    return
                anchor = (v, LEFT if bot == lc else RIGHT)
        self.anchor = anchor
        self.site = self._bot()
        self.gen = self._run()

    # -- driving -----------------------------------------------------------

    def advance(self, ops):
        """Run up to `ops` elementary operations; returns the unused part.

        When the bottom is the entire representation, the marked bit comes
        off while structural steps run (a marked node inside the work area
        would corrupt aggregates) and goes back onto the current subtree
        root at every suspension point."""
        working_root = self.at_rep_root and not self.done
        if working_root:
            self._set_root_mark(False)
        if not self.done:
            # the generator assumes the cursor sits where it paused
            self.tree._cur.go(self.site)
        while ops > 0 and not self.done:
            try:
                next(self.gen)
                self.steps += 1
            except StopIteration:
                self.done = True
                self.phase = PH_DONE
                break
            ops -= 1
        if working_root:
            self._set_root_mark(True)
        return ops

    def _set_root_mark(self, bit):
        t = self.tree
        a = t.arena
        cur = t._cur
        b = self._bot()
        if b == NIL:
            return
        if b != self.rep.root:
            t.rekey_rep(self.rep, b)
        if a.marked[b] != bit:
            cur.go(b)
            cur.set_mark(b, bit)

    def finish(self):
        while not self.done:
            self.advance(1 << 30)
        return self

    # -- helpers -------------------------------------------------------------

    def _bot(self):
        a = self.tree.arena
        p, side = self.anchor
        if p == NIL:
            return self.tree.root
        return a.left[p] if side == LEFT else a.right[p]

    def _sync_rep_root(self):
        if self.at_rep_root:
            b = self._bot()
            if b != self.rep.root:
                self.tree.rekey_rep(self.rep, b)

    # -- the process -------------------------------------------------------

    def _run(self):
        t = self.tree
        a = t.arena
        cur = _CursorProxy(t)
        bot = self._bot()
        cur.go(bot)
        self.site = bot
        yield

        take = ll(t.n)
        d = a.mind[bot] + take - 1
        all_mode = a.maxd[bot] <= d

        # ---- boundary phase
        self.phase = PH_BOUNDARY
        if all_mode:
            deepmost = a.maxd[bot]
            v = bot
            while a.depth[v] != deepmost:
                l_ = a.left[v]
                if real(a, l_) and a.maxd[l_] == deepmost:
                    v = cur.move(LEFT)
                else:
                    v = cur.move(RIGHT)
                self.site = v
                yield
            ell_key = a.key[v]
            r_key = None
        else:
            ell, _lp = boundary_low(t, cur, bot, d)
            self.site = cur.current
            yield
            r, _rp = boundary_high(t, cur, self._bot(), d)
            self.site = cur.current
            yield
            ell_key = a.key[ell] if ell != NIL else None
            r_key = a.key[r] if r != NIL else None

        # ---- split phases
        if ell_key is not None:
            self.phase = PH_SPLIT_L
            for _ in split_steps(t, cur, self._bot(), ell_key):
                self.site = cur.current
                yield
            self._sync_rep_root()
            self.ell = self._bot()
        if r_key is not None:
            self.phase = PH_SPLIT_R
            csub = a.right[self.ell] if self.ell != NIL else self._bot()
            for _ in split_steps(t, cur, csub, r_key):
                self.site = cur.current
                yield
            self._sync_rep_root()
            self.r = a.right[self.ell] if self.ell != NIL else self._bot()

        # ---- linearize phases
        ell, r = self.ell, self.r
        self.phase = PH_LIN_B
        if ell != NIL and real(a, a.left[ell]):
            for _ in linearize_steps(t, cur, a.left[ell], "zig"):
                self.site = cur.current
                yield
        self.phase = PH_LIN_E
        if all_mode:
            epos = a.right[ell] if ell != NIL else NIL
        else:
            epos = a.right[r] if r != NIL else NIL
        if real(a, epos):
            for _ in linearize_steps(t, cur, epos, "zag"):
                self.site = cur.current
                yield

        if self.park:
            self.phase = PH_DONE
            return

        # ---- zip phase
        self.phase = PH_ZIP
        yield from self._zip(cur, all_mode)
        self.phase = PH_DONE

    def _emit(self, cur, node):
        t = self.tree
        a = t.arena
        a.red[node] = False
        self.emitted += 1
        self.rep.top_len += 1
        if self.at_rep_root and not self.rooted:
            # the first node emitted while the representation has no top
            # path becomes its new root; advance() maintains the mark
            if self.rep.root != node:
                t.rekey_rep(self.rep, node)
            self.rooted = True
        a.recompute(node)
        self.site = node

    def _zip(self, cur, all_mode):
        """Merge the linearized chains by depth; O(1) rotations per node."""
        t = self.tree
        a = t.arena
        ell, r = self.ell, self.r

        if all_mode:
            # shape: ell is the pivot; zig chain left, zag chain right, no D
            while True:
                zh = a.left[ell]
                gh = a.right[ell]
                zh = zh if real(a, zh) else NIL
                gh = gh if real(a, gh) else NIL
                if zh == NIL and gh == NIL:
                    break
                pick = zh if gh == NIL or (zh != NIL and a.depth[zh] < a.depth[gh]) else gh
                cur.go(pick)
                cur.rotate()
                self._emit(cur, pick)
                yield
            cur.go(ell)
            self._emit(cur, ell)
            yield
            return

        if ell == NIL:
            while real(a, a.right[r]):
                gh = a.right[r]
                cur.go(gh)
                cur.rotate()
                self._emit(cur, gh)
                yield
            cur.go(r)
            self._emit(cur, r)
            yield
            return

        if r == NIL:
            while real(a, a.left[ell]):
                zh = a.left[ell]
                cur.go(zh)
                cur.rotate()
                self._emit(cur, zh)
                yield
            cur.go(ell)
            self._emit(cur, ell)
            yield
            return

        # both sides: shape ell -> (B chain | r -> (D | E chain)).  The zig
        # and zag chains drain before ell and r respectively, but the two
        # sides interleave freely, so pick among four candidates by depth.
        ell_emitted = False
        r_emitted = False
        while not (ell_emitted and r_emitted):
            zh = gh = NIL
            if not ell_emitted:
                c = a.left[ell]
                zh = c if real(a, c) else NIL
            if not r_emitted:
                c = a.right[r]
                gh = c if real(a, c) else NIL
            zcand = zh if zh != NIL else (NIL if ell_emitted else ell)
            gcand = gh if gh != NIL else (NIL if r_emitted else r)
            dz = a.depth[zcand] if zcand != NIL else None
            dg = a.depth[gcand] if gcand != NIL else None
            take_zig = dg is None or (dz is not None and dz < dg)
            if take_zig:
                if zcand == ell:
                    cur.go(ell)  # already the remainder root
                    self._emit(cur, ell)
                    ell_emitted = True
                else:
                    cur.go(zcand)
                    cur.rotate()
                    self._emit(cur, zcand)
            else:
                rot = (0 if gcand == r else 1) + (0 if ell_emitted else 1)
                cur.go(gcand)
                for _ in range(rot):
                    cur.rotate()
                self._emit(cur, gcand)
                if gcand == r:
                    r_emitted = True
            yield


# ---------------------------------------------------------------------------
# piece breadcrumbs and the final concatenation
# ---------------------------------------------------------------------------

def mark_piece(tree, cur, root, chain_top, prev_piece):
    """Mark a cut-out red-black piece and record the fold breadcrumbs."""
    cur.go(root)
    if not tree.arena.marked[root]:
        cur.set_mark(root, True)
    cur.aux_write(root, AUX_CHAIN, chain_top + 1)
    cur.aux_write(root, AUX_PREV, prev_piece + 1)


def fold_accumulation(tree, cur, bottom_piece, keep_top=0):
    """Concatenate the cut-out pieces of this access into one red-black
    tree, bottom-up: rebuild the chain run above each piece, join them,
    then join with the previous piece.

    The first keep_top nodes of the topmost chain run are left in place as
    the new representation's materialized top path.  Returns
    (top_chain_head, kept_len, folded_root); top_chain_head is NIL when
    the topmost run is shorter than a single node or keep_top is zero.
    """
    a = tree.arena
    piece = bottom_piece
    while True:
        cur.go(piece)
        chain_top = a.aux[piece][AUX_CHAIN] - 1
        prev = a.aux[piece][AUX_PREV] - 1
        keep = keep_top if prev == NIL else 0
        if chain_top != NIL:
            run = []
            v = chain_top
            cur.go(v)
            while v != piece:
                run.append(v)
                lc = a.left[v]
                if lc == piece or real(a, lc):
                    v = cur.move(LEFT)
                else:
                    v = cur.move(RIGHT)
            kept, rest = run[:keep], run[keep:]
            if rest:
                piece = concatenate_tango(
                    tree, cur, build_from_path(tree, cur, rest), piece)
                cur.go(piece)
                if not a.marked[piece]:
                    cur.set_mark(piece, True)
            if prev == NIL:
                return (kept[0] if kept else NIL), len(kept), piece
        elif prev == NIL:
            return NIL, 0, piece
        # marks flipped below prev since its creation: refresh its aggregates
        recompute_subtree(tree, cur, prev)
        merged = concatenate_tango(tree, cur, prev, piece)
        cur.go(merged)
        if not a.marked[merged]:
            cur.set_mark(merged, True)
        cur.aux_write(merged, AUX_CHAIN, a.aux[prev][AUX_CHAIN])
        cur.aux_write(merged, AUX_PREV, a.aux[prev][AUX_PREV])
        piece = merged
