import random

import pytest

from bstlab.arena import NIL
from bstlab.calibration import ll, lg, C_DEPTH, C_WC_HYBRID
from bstlab.model import RELAXED, verify_compliance
from bstlab.redblack import validate_rb, build_from_path, real
from bstlab.reference import ReferenceTree
from bstlab.paths import decompose, decomposition_matches
from bstlab.pathrep import RepInfo, Extraction
from bstlab.hybrid import HybridTree
from conftest import BareTree, chain_tree, random_path


class RepHarness(BareTree):
    """Minimal host for driving an Extraction outside a full structure."""

    def __init__(self, n):
        super().__init__(RELAXED)
        self.n = n
        self._cur = None
        self.reps = {}

    def rekey_rep(self, rep, new_root):
        self.reps.pop(rep.root, None)
        rep.root = new_root
        self.reps[new_root] = rep


def make_rep(rng, n, top_len, bottom_size):
    """A path representation: top chain of top_len nodes over a red-black
    bottom of bottom_size nodes."""
    t = RepHarness(n)
    path = random_path(rng, top_len + bottom_size)
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
    cur, trace = t.begin_access()
    t._cur = cur
    if bottom_size:
        build_from_path(t, cur, hs[top_len:])
    a.marked[t.root] = True
    rep = RepInfo(t.root, top_len)
    t.reps[t.root] = rep
    return t, rep, hs


def run_extraction(t, rep, park=False, step_checks=None):
    ext = Extraction(t, rep, None, at_rep_root=(rep.top_len == 0),
                     park_before_zip=park)
    rep.ext = ext
    i = 0
    while not ext.done:
        ext.advance(1)
        i += 1
        if step_checks is not None and i % step_checks == 0:
            yield_state(t)
    ext.finish()
    rep.ext = None
    return ext


def yield_state(t):
    # every intermediate state must be a search tree over the same keys
    a = t.arena
    keys = [a.key[h] for h in a.inorder(t.root)]
    assert keys == sorted(keys), "intermediate state is not a BST"


def top_chain(t, rep):
    a = t.arena
    out = [rep.root]
    v = rep.root
    for _ in range(rep.top_len - 1):
        lc = a.left[v]
        nxt = lc if real(a, lc) else a.right[v]
        v = nxt
        out.append(v)
    return out


# ---------------------------------------------------------------------------
# extraction unit tests
# ---------------------------------------------------------------------------

def test_extract_full_drain(rng):
    n = 1 << 12   # ll = 4
    t, rep, hs = make_rep(rng, n, 3, ll(n))
    ext = run_extraction(t, rep)
    assert ext.emitted == ll(n)
    assert rep.top_len == 3 + ll(n)
    chain = top_chain(t, rep)
    a = t.arena
    assert [a.depth[h] for h in chain] == list(range(len(chain)))
    # bottom gone
    last = chain[-1]
    assert not real(a, a.left[last]) and not real(a, a.right[last])


def test_extract_takes_shallowest(rng):
    n = 1 << 12
    for _ in range(100):
        bsize = rng.randrange(1, 20)
        tlen = rng.randrange(1, 8)
        t, rep, hs = make_rep(rng, n, tlen, bsize)
        a = t.arena
        bottom = hs[tlen:]
        want = sorted(bottom, key=lambda h: a.depth[h])[:ll(n)]
        ext = run_extraction(t, rep)
        assert ext.emitted == min(ll(n), bsize)
        chain = top_chain(t, rep)
        got = chain[tlen:]
        assert sorted(got) == sorted(want)
        assert [a.depth[h] for h in chain] == list(range(len(chain)))
        # remaining bottom still a valid red-black tree
        last = chain[-1]
        for c in (a.left[last], a.right[last]):
            if real(a, c):
                ok, msg = validate_rb(t, c)
                assert ok, msg


def test_extract_intermediate_states_are_bsts(rng):
    n = 1 << 12
    for _ in range(30):
        bsize = rng.randrange(2, 24)
        t, rep, hs = make_rep(rng, n, 2, bsize)
        ext = Extraction(t, rep, None)
        rep.ext = ext
        while not ext.done:
            ext.advance(1)
            yield_state(t)


def test_extract_resumable_across_accesses(rng):
    n = 1 << 12
    t, rep, hs = make_rep(rng, n, 2, 16)
    ext = Extraction(t, rep, None)
    rep.ext = ext
    while not ext.done:
        # simulate suspension: fresh access, cursor walks back to the site
        cur, trace = t.begin_access()
        t._cur = cur
        cur.jump(ext.site)
        ext.advance(rng.randrange(1, 5))
    a = t.arena
    assert rep.top_len == 2 + ll(n)


def test_extract_at_rep_root_remarks(rng):
    n = 1 << 12
    t, rep, hs = make_rep(rng, n, 0, 12)
    a = t.arena
    run_extraction(t, rep)
    assert rep.top_len == ll(n)
    assert a.marked[rep.root]
    assert a.depth[rep.root] == min(a.depth[h] for h in hs)


def test_extract_parked_is_zipper_shape(rng):
    n = 1 << 14   # ll = 4
    for _ in range(40):
        bsize = rng.randrange(2, 24)
        t, rep, hs = make_rep(rng, n, 1, bsize)
        a = t.arena
        bottom = hs[1:]
        take = min(ll(n), bsize)
        want = set(sorted(bottom, key=lambda h: a.depth[h])[:take])
        ext = Extraction(t, rep, None, park_before_zip=True)
        ext.finish()
        # parked shape: ell root with zig chain left, r right, zag chain
        x_top = hs[0]
        root = a.left[x_top] if real(a, a.left[x_top]) else a.right[x_top]
        zipped = set()
        ell = ext.ell if ext.ell != NIL else NIL
        r = ext.r
        if ell != NIL:
            zipped.add(ell)
            v = a.left[ell]
            while real(a, v):
                zipped.add(v)
                v = a.right[v]
        if r != NIL and ext.ell != NIL:
            zipped.add(r)
            v = a.right[r]
            while real(a, v):
                zipped.add(v)
                v = a.left[v]
        elif r != NIL:
            zipped.add(r)
            v = a.right[r]
            while real(a, v):
                zipped.add(v)
                v = a.left[v]
        if a.maxd[root if real(a, root) else x_top] <= a.mind[hs[1]] + ll(n) - 1:
            pass  # all-mode parks with the pivot still in place; skip strict set check
        else:
            assert zipped == want


# ---------------------------------------------------------------------------
# hybrid tree
# ---------------------------------------------------------------------------

def all_reps_valid(t):
    a = t.arena
    for root, rep in t.reps.items():
        assert a.marked[root], "representation root lost its mark"
        chain = top_chain(t, rep)
        ds = [a.depth[h] for h in chain]
        assert ds == list(range(ds[0], ds[0] + len(ds)))
        last = chain[-1]
        for c in (a.left[last], a.right[last]):
            if real(a, c):
                if rep.ext is None:
                    ok, msg = validate_rb(t, c)
                    assert ok, msg
                else:
                    # mid-extraction bottoms are only required to be BSTs
                    keys = [a.key[h] for h in a.inorder(c)]
                    assert keys == sorted(keys)


def invariant_top_lengths(t):
    cap = 3 * ll(t.n)
    a = t.arena
    for root, rep in t.reps.items():
        chain = top_chain(t, rep)
        last = chain[-1]
        has_bottom = any(real(a, c) for c in (a.left[last], a.right[last]))
        assert rep.top_len <= cap, (rep.top_len, cap)
        if has_bottom:
            assert rep.top_len >= ll(t.n) or rep.ext is not None


def test_hybrid_init_small():
    t = HybridTree(7)   # ll(7) = 2; all paths fit in the top
    P = ReferenceTree(7)
    assert decomposition_matches(t, P)
    for rep in t.reps.values():
        chain = top_chain(t, rep)
        last = chain[-1]
        a = t.arena
        assert not any(real(a, c) for c in (a.left[last], a.right[last]))


def test_hybrid_init_large_has_bottoms():
    n = 1 << 16
    t = HybridTree(n)
    P = ReferenceTree(n)
    root_rep = t.reps[t.root]
    assert root_rep.top_len == 3 * ll(n)
    all_reps_valid(t)
    assert decomposition_matches(t, P)


def test_hybrid_inorder_is_sorted():
    n = 700
    t = HybridTree(n)
    a = t.arena
    keys = []
    def walk(h):
        if h == NIL:
            return
        walk(a.left[h])
        keys.append(a.key[h])
        walk(a.right[h])
    walk(t.root)
    assert keys == list(range(n))


def test_hybrid_repeat_access_no_restructure():
    t = HybridTree(256)
    t.access(100)
    trace = t.access(100)
    assert len(trace.rotations) == 0


def test_hybrid_matches_reference_random(rng):
    # n=256: whole paths fit in top paths; n=2^14: bottoms and extractions
    for n, iters in ((256, 600), (1 << 14, 250)):
        t = HybridTree(n)
        P = ReferenceTree(n)
        for i in range(iters):
            x = rng.randrange(n)
            trace = t.access(x)
            P.simulate_access(x)
            assert decomposition_matches(t, P), (n, i, x)
            all_reps_valid(t)
            invariant_top_lengths(t)
            rep = verify_compliance(trace, RELAXED)
            assert rep.ok, rep.violations[:3]


def test_hybrid_strict_mode_flags_jumps(rng):
    from bstlab.model import STRICT
    n = 1 << 14   # paths longer than 3 ll(n): real bottoms and revivals
    t = HybridTree(n)
    flagged = 0
    for i in range(600):
        x = rng.randrange(n)
        trace = t.access(x)
        rep = verify_compliance(trace, STRICT)
        if trace.extra_pointer_uses:
            flagged += 1
            assert not rep.ok
            assert trace.extra_pointer_uses <= max(
                1, len([e for e in (trace.events or []) if e[0] == "J"]))
    assert flagged > 0, "expected at least one extraction revival"


def test_hybrid_cost_and_depth_bounds(rng):
    n = 1 << 12
    t = HybridTree(n)
    P = ReferenceTree(n)
    a = t.arena
    for i in range(400):
        x = rng.randrange(n)
        trace = t.access(x)
        P.simulate_access(x)
        assert trace.cost <= C_WC_HYBRID * lg(n), (i, x, trace.cost)
    # height lemma after the run
    for h in range(n):
        d = 0
        v = h
        while a.parent[v] != NIL:
            v = a.parent[v]
            d += 1
        assert d <= C_DEPTH * (a.depth[h] + 1), (h, d, a.depth[h])
