"""Hybrid tree: preferred paths stored as an explicit top path over a
red-black bottom tree, with resumable extraction keeping the top path at
Theta(log log n) nodes.  Runs in relaxed compliance mode: reviving a
suspended extraction follows one stored extra pointer per representation.
"""

from .arena import NIL
from .calibration import ll, SPEED_EXTRACT, STEP_OPS
from .model import MeteredTree, RELAXED, LEFT, RIGHT, PARENT
from .reference import ReferenceTree
from .redblack import (real, build_from_path, concatenate_tango, cut_tango,
                       boundary_low, EMPTY)
from .paths import (alloc_keyset, build_balanced_rb, hang_marked, decompose)
from .pathrep import (RepInfo, Extraction, mark_piece, fold_accumulation,
                      AUX_TOP, AUX_PHASE)


def continues_right(tree, cur, x, rep_root):
    """Does the path continue below x on its right (key) side?  The nodes
    deeper than x form one contiguous key range; find its minimum-key node
    through the max-depth augmentation and compare."""
    a = tree.arena
    d = a.depth[x]
    cur.go(rep_root)
    if a.maxd[rep_root] <= d:
        return False
    _, lp = boundary_low(tree, cur, rep_root, d)
    return a.key[lp] > a.key[x]


def pred_slot(tree, cur, x):
    """Marked child guarding the key gap just below x, or NIL."""
    a = tree.arena
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


class HybridTree(MeteredTree):
    def __init__(self, n):
        super().__init__(RELAXED)
        if n < 1:
            raise ValueError("empty key set")
        self.n = n
        self._cur = None
        self.access_serial = 0
        P = ReferenceTree(n)
        alloc_keyset(self, P)
        a = self.arena
        self.reps = {}
        cap = 3 * ll(n)
        reps = []
        for path in P.preferred_paths():
            top = path[:min(cap, len(path))]
            rest = path[len(top):]
            for u, v in zip(top, top[1:]):
                if v < u:
                    a.left[u] = v
                else:
                    a.right[u] = v
                a.parent[v] = u
            if rest:
                bot = build_balanced_rb(self, sorted(rest))
                x_top = top[-1]
                if a.key[bot] < a.key[x_top]:
                    a.left[x_top] = bot
                else:
                    a.right[x_top] = bot
                a.parent[bot] = x_top
            for h in reversed(top):
                a.recompute(h)
            root = top[0]
            a.marked[root] = True
            a.aux[root][AUX_TOP] = len(top)
            info = RepInfo(root, len(top))
            self.reps[root] = info
            reps.append((path[0], root))
        for top_node, root in reps:
            p = P.parent[top_node]
            if p == NIL:
                self.root = root
            else:
                side = LEFT if P.left[p] == top_node else RIGHT
                hang_marked(self, p, side, root)

    def name(self):
        return "hybrid"

    def decompose(self):
        return decompose(self)

    def rekey_rep(self, rep, new_root):
        self.reps.pop(rep.root, None)
        rep.root = new_root
        self.reps[new_root] = rep

    # -- extraction driving --------------------------------------------------

    def _touch_ext(self, cur, ext):
        """Position the cursor at a suspended extraction's work site: one
        extra-pointer jump per revival."""
        if ext.serial != self.access_serial:
            cur.jump(ext.site)
            ext.serial = self.access_serial

    def _advance_remainder(self, cur, rep, k):
        """Case-1 bookkeeping: advance (and launch) the remainder's
        extraction by SPEED_EXTRACT steps per node cut."""
        n_ll = ll(self.n)
        budget = SPEED_EXTRACT * k * STEP_OPS
        return_to = cur.current
        moved = False
        while budget > 0:
            ext = rep.ext
            if ext is None or ext.done:
                if rep.ext is not None and rep.ext.done:
                    rep.ext = None
                if rep.top_len < 2 * n_ll:
                    ext = Extraction(self, rep, None,
                                     at_rep_root=(rep.top_len == 0))
                    ext.serial = self.access_serial
                    rep.ext = ext
                else:
                    break
            self._touch_ext(cur, ext)
            moved = True
            budget = ext.advance(budget)
            if ext.done:
                if ext.emitted == 0:
                    rep.ext = None
                    break  # no bottom tree: nothing to extract
                rep.ext = None
        # emergency: a huge cut may have taken the top below ll(n)
        while rep.top_len < n_ll:
            ext = rep.ext
            if ext is None or ext.done:
                ext = Extraction(self, rep, None,
                                 at_rep_root=(rep.top_len == 0))
                ext.serial = self.access_serial
                rep.ext = ext
            self._touch_ext(cur, ext)
            moved = True
            before = ext.emitted
            ext.finish()
            rep.ext = None
            if ext.emitted == before:
                break
        cur.go(rep.root)
        cur.aux_write(rep.root, AUX_TOP, rep.top_len)
        cur.aux_write(rep.root, AUX_PHASE,
                      rep.ext.phase if rep.ext else 0)
        if moved and cur.current != return_to:
            cur.go(return_to)

    def _finish_ext(self, cur, rep):
        if rep.ext is not None and not rep.ext.done:
            self._touch_ext(cur, rep.ext)
            rep.ext.finish()
        rep.ext = None

    # -- representation restructuring ----------------------------------------

    def _normalize_to_rb(self, cur, rep):
        """Finish any extraction, rebuild the top path and join it with the
        bottom tree: the whole representation as one red-black tree."""
        a = self.arena
        self._finish_ext(cur, rep)
        if rep.top_len == 0:
            return rep.root
        chain = []
        v = rep.root
        cur.go(v)
        chain.append(v)
        for _ in range(rep.top_len - 1):
            lc = a.left[v]
            nxt = lc if real(a, lc) else a.right[v]
            v = cur.move(LEFT if nxt == lc else RIGHT)
            chain.append(v)
        bottom = NIL
        last = chain[-1]
        for c in (a.left[last], a.right[last]):
            if real(a, c):
                bottom = c
        if bottom != NIL:
            # exclude the bottom from the chain rebuild's aggregates
            cur.go(bottom)
            cur.set_mark(bottom, True)
            cur.move(PARENT)
            a.recompute(last)
        top = build_from_path(self, cur, chain)
        if bottom != NIL:
            top = concatenate_tango(self, cur, top, bottom)
        rep.root = top
        rep.top_len = 0
        return top

    def _make_valid_rep(self, cur, broot):
        """Turn a bare red-black path tree into a valid representation by
        extracting twice (up to 2 ll(n) top-path nodes)."""
        rep = RepInfo(broot, 0)
        self.reps[broot] = rep
        for _ in range(2):
            ext = Extraction(self, rep, None,
                             at_rep_root=(rep.top_len == 0))
            ext.serial = self.access_serial
            before = ext.emitted
            ext.finish()
            if ext.emitted == before:
                break
        a = self.arena
        cur.go(rep.root)
        cur.aux_write(rep.root, AUX_TOP, rep.top_len)
        return rep

    # -- access ---------------------------------------------------------------

    def access(self, x):
        if not (0 <= x < self.n):
            raise KeyError(x)
        a = self.arena
        cur, trace = self.begin_access()
        self._cur = cur
        self.access_serial += 1
        n_ll = ll(self.n)

        rep = self.reps.pop(self.root)
        cur.set_mark(self.root, False)
        run_top = self.root
        entry_root = self.root
        prev_piece = NIL
        restructured = False
        t_count = 1 if rep.top_len > 0 else 0
        in_bottom = rep.top_len == 0
        v = cur.current

        while a.key[v] != x:
            side = LEFT if x < a.key[v] else RIGHT
            c = a.left[v] if side == LEFT else a.right[v]
            if c == NIL:
                raise KeyError(x)
            if a.marked[c]:
                cur.move(side)
                restructured = True
                if not in_bottom:
                    self._case1(cur, rep, v, t_count, c)
                else:
                    piece = self._case2(cur, rep, c, run_top, entry_root,
                                        prev_piece)
                    prev_piece = piece
                    run_top = c
                rep = self.reps.pop(c)
                cur.set_mark(c, False)
                entry_root = c
                t_count = 1 if rep.top_len > 0 else 0
                in_bottom = rep.top_len == 0
                v = c
                continue
            v = cur.move(side)
            if not in_bottom:
                if t_count < rep.top_len:
                    t_count += 1
                else:
                    in_bottom = True

        piece = self._at_target(cur, rep, x, restructured, run_top,
                                entry_root, prev_piece)
        if piece is None:
            cur.go(rep.root)
            cur.set_mark(rep.root, True)
            self.reps[rep.root] = rep
            return trace
        top_head, kept, folded = fold_accumulation(self, cur, piece,
                                                   keep_top=3 * n_ll)
        if kept:
            # the topmost traversed run is already the new top path
            cur.go(folded)
            cur.set_mark(folded, False)
            while cur.current != top_head:
                v = cur.move(PARENT)
                a.recompute(v)
            cur.set_mark(top_head, True)
            frep = RepInfo(top_head, kept)
            self.reps[top_head] = frep
            cur.aux_write(top_head, AUX_TOP, kept)
            while frep.top_len < 2 * n_ll:
                ext = Extraction(self, frep, None,
                                 at_rep_root=(frep.top_len == 0))
                ext.serial = self.access_serial
                before = ext.emitted
                ext.finish()
                if ext.emitted == before:
                    break
            cur.go(frep.root)
            cur.aux_write(frep.root, AUX_TOP, frep.top_len)
        else:
            frep = self._make_valid_rep(cur, folded)
        assert self.arena.marked[frep.root]
        return trace

    def _case1(self, cur, rep, v, t_count, c):
        """Exit through a marked child of top-path node v after t_count
        nodes: mark the succeeding node as the remainder's root."""
        a = self.arena
        other = a.left[v] if a.right[v] == c else a.right[v]
        u = other if other != NIL and not a.marked[other] else NIL
        if u == NIL:
            rep.ext = None  # path ended at v: nothing remains
            return
        back = cur.current
        cur.go(u)
        cur.set_mark(u, True)
        rep.root = u
        rep.top_len = rep.top_len - t_count
        self.reps[u] = rep
        cur.aux_write(u, AUX_TOP, rep.top_len)
        if rep.top_len == 0 and rep.ext is not None and not rep.ext.done:
            # the whole top went with the cut: the remainder hangs in v's
            # child slot, and the pending extraction must re-root the
            # representation as it emits
            ext = rep.ext
            ext.at_rep_root = True
            ext.rooted = False
            ext.anchor = (v, LEFT if a.left[v] == u else RIGHT)
        self._advance_remainder(cur, rep, t_count)
        cur.go(back)

    def _case2(self, cur, rep, c, run_top, entry_root, prev_piece):
        """Exit from the bottom tree into marked child c: rebuild the whole
        representation, cut like a tango tree, revalidate the remainder."""
        a = self.arena
        d = a.mind[c] - 1
        back = cur.current
        rbroot = self._normalize_to_rb(cur, rep)
        top, bottom = cut_tango(self, cur, rbroot, d)
        if bottom is not EMPTY:
            self._make_valid_rep(cur, bottom)
        chain_top = NIL if run_top == entry_root else run_top
        mark_piece(self, cur, top, chain_top, prev_piece)
        cur.go(back)
        return top

    def _at_target(self, cur, rep, x, restructured, run_top, entry_root,
                   prev_piece):
        """Handle the access end at x; returns the bottom accumulation piece
        (or None when the whole access left the structure untouched)."""
        a = self.arena
        self._finish_ext(cur, rep)
        cont_right = continues_right(self, cur, x, rep.root)
        m = pred_slot(self, cur, x) if cont_right else NIL
        flip = cont_right and m != NIL
        if not restructured and not flip:
            return None
        self.reps.pop(rep.root, None)
        if flip:
            rbroot = self._normalize_to_rb(cur, rep)
            top, bottom = cut_tango(self, cur, rbroot, a.depth[x])
            if bottom is not EMPTY:
                self._make_valid_rep(cur, bottom)
            mrep = self.reps.pop(m)
            self._finish_ext(cur, mrep)
            mrb = self._normalize_to_rb(cur, mrep)
            cur.go(mrb)
            if not a.marked[mrb]:
                cur.set_mark(mrb, True)
            piece = concatenate_tango(self, cur, top, mrb)
        else:
            piece = self._normalize_to_rb(cur, rep)
        chain_top = NIL if run_top == entry_root else run_top
        mark_piece(self, cur, piece, chain_top, prev_piece)
        return piece
