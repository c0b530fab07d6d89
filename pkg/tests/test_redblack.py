import random

import pytest

from bstlab.arena import NIL
from bstlab.calibration import D_SPLIT, C_BUILD
from bstlab.model import RELAXED, STRICT
from bstlab.redblack import (build_from_path, validate_rb, to_key_list,
                             find_boundary, boundary_low, boundary_high,
                             split_near_root, split_steps, SplitStats,
                             fix_join, cut_tango, concatenate_tango,
                             linearize, dump_tree, EMPTY, real)
from conftest import BareTree, chain_tree, random_path, random_rb_tree


def subtree_depths(t, sub):
    a = t.arena
    return sorted(a.depth[h] for h in a.inorder(sub))


# ---------------------------------------------------------------------------
# build_from_path
# ---------------------------------------------------------------------------

def test_build_single_node():
    t, hs = chain_tree([(5, 0)])
    cur, trace = t.begin_access()
    sub = build_from_path(t, cur, hs)
    assert sub == hs[0]
    assert len(trace.rotations) == 0
    assert validate_rb(t, sub)[0]


def test_build_two_nodes():
    t, hs = chain_tree([(5, 0), (9, 1)])
    cur, trace = t.begin_access()
    sub = build_from_path(t, cur, hs)
    assert validate_rb(t, sub)[0]
    assert to_key_list(t, sub) == [5, 9]


def test_build_path_of_33_nodes_bounded_work(rng):
    path = random_path(rng, 33)
    t, hs = chain_tree(path)
    cur, trace = t.begin_access()
    sub = build_from_path(t, cur, hs)
    ok, msg = validate_rb(t, sub)
    assert ok, msg
    assert to_key_list(t, sub) == sorted(k for k, _ in path)
    assert len(trace.rotations) <= C_BUILD * 33


def test_build_work_linear_many_sizes(rng):
    for k in (1, 2, 3, 5, 9, 17, 40, 80):
        for _ in range(5):
            path = random_path(rng, k)
            t, hs = chain_tree(path)
            cur, trace = t.begin_access()
            sub = build_from_path(t, cur, hs)
            assert validate_rb(t, sub)[0]
            assert len(trace.rotations) <= C_BUILD * k


def test_build_rejects_nonconsecutive_depths():
    t, hs = chain_tree([(5, 0), (9, 2)])
    cur, _ = t.begin_access()
    with pytest.raises(ValueError):
        build_from_path(t, cur, hs)


# ---------------------------------------------------------------------------
# find_boundary
# ---------------------------------------------------------------------------

def test_boundary_single_deep_node():
    # middle key is the only node deeper than d
    t, hs = chain_tree([(10, 0), (20, 1), (15, 2)])
    cur, _ = t.begin_access()
    sub = build_from_path(t, cur, hs)
    ell, lp, r, rp = find_boundary(t, cur, sub, 1)
    a = t.arena
    assert a.key[lp] == a.key[rp] == 15
    assert a.key[ell] == 10 and a.key[r] == 20


def test_boundary_contiguous_middle_range(rng):
    path = random_path(rng, 21)
    t, hs = chain_tree(path)
    cur, _ = t.begin_access()
    sub = build_from_path(t, cur, hs)
    a = t.arena
    d = 10
    deep = sorted(a.key[h] for h in hs if a.depth[h] > d)
    shallow = sorted(a.key[h] for h in hs if a.depth[h] <= d)
    ell, lp, r, rp = find_boundary(t, cur, sub, d)
    assert a.key[lp] == deep[0] and a.key[rp] == deep[-1]
    lo_brackets = [k for k in shallow if k < deep[0]]
    hi_brackets = [k for k in shallow if k > deep[-1]]
    assert (a.key[ell] if ell != NIL else None) == (lo_brackets[-1] if lo_brackets else None)
    assert (a.key[r] if r != NIL else None) == (hi_brackets[0] if hi_brackets else None)


def test_boundary_matches_bruteforce_with_move_budget(rng):
    for _ in range(50):
        k = rng.randrange(3, 60)
        t, sub = random_rb_tree(rng, k)
        a = t.arena
        hs = a.inorder(sub)
        dmin = min(a.depth[h] for h in hs)
        dmax = max(a.depth[h] for h in hs)
        if dmin == dmax:
            continue
        d = rng.randrange(dmin, dmax)
        deep = sorted((a.key[h], h) for h in hs if a.depth[h] > d)

        def height(h):
            if h == NIL or a.marked[h]:
                return 0
            return 1 + max(height(a.left[h]), height(a.right[h]))

        hgt = height(sub)
        cur, tr0 = t.begin_access()
        ell, lp = boundary_low(t, cur, sub, d)
        low_moves = tr0.moves
        cur2, tr2 = t.begin_access()
        r, rp = boundary_high(t, cur2, sub, d)
        high_moves = tr2.moves
        assert a.key[lp] == deep[0][0]
        assert a.key[rp] == deep[-1][0]
        assert low_moves + high_moves <= 2 * hgt + 2


def test_boundary_errors():
    t, hs = chain_tree([(10, 0), (20, 1)])
    cur, _ = t.begin_access()
    sub = build_from_path(t, cur, hs)
    with pytest.raises(ValueError):
        find_boundary(t, cur, sub, 5)   # everything deeper than d... d<min
    with pytest.raises(ValueError):
        find_boundary(t, cur, sub, 3)   # nothing deeper


# ---------------------------------------------------------------------------
# split_near_root
# ---------------------------------------------------------------------------

def depth_from(t, h, top):
    d = 0
    while h != top:
        h = t.arena.parent[h]
        d += 1
    return d


def split_and_check(rng, k, key_rank=None):
    t, sub = random_rb_tree(rng, k)
    a = t.arena
    hs = a.inorder(sub)
    keys = [a.key[h] for h in hs]
    x = keys[key_rank if key_rank is not None else rng.randrange(len(keys))]
    anchor_parent = a.parent[sub]
    cur, trace = t.begin_access()
    trace.log_depths = True
    stats = SplitStats()
    root = split_near_root(t, cur, sub, x, stats)
    assert a.key[root] == x
    lk = to_key_list(t, a.left[root]) if real(a, a.left[root]) else []
    rk = to_key_list(t, a.right[root]) if real(a, a.right[root]) else []
    assert lk == [v for v in keys if v < x]
    assert rk == [v for v in keys if v > x]
    okl, msgl = validate_rb(t, a.left[root]) if real(a, a.left[root]) else (True, "")
    okr, msgr = validate_rb(t, a.right[root]) if real(a, a.right[root]) else (True, "")
    assert okl, msgl
    assert okr, msgr
    for h, d in trace.rotations:
        assert d <= D_SPLIT
    assert stats.max_group <= 5
    return t, root, trace


def test_split_singleton(rng):
    t, hs = chain_tree([(7, 0)])
    cur, trace = t.begin_access()
    root = split_near_root(t, cur, hs[0], 7)
    assert root == hs[0]
    assert t.arena.left[root] == NIL and t.arena.right[root] == NIL
    assert len(trace.rotations) == 0


def test_split_perfect_15_at_median(rng):
    t, sub = random_rb_tree(rng, 15)
    a = t.arena
    keys = sorted(a.key[h] for h in a.inorder(sub))
    cur, trace = t.begin_access()
    root = split_near_root(t, cur, sub, keys[7])
    assert validate_rb(t, a.left[root])[0]
    assert validate_rb(t, a.right[root])[0]
    assert len(to_key_list(t, a.left[root])) == 7
    assert len(to_key_list(t, a.right[root])) == 7


def test_split_200_random_instances(rng):
    for _ in range(200):
        k = rng.randrange(1, 80)
        split_and_check(rng, k)


def test_split_extreme_keys(rng):
    split_and_check(rng, 40, key_rank=0)
    split_and_check(rng, 40, key_rank=39)


def test_split_missing_key_errors(rng):
    t, sub = random_rb_tree(rng, 15)
    a = t.arena
    cur, _ = t.begin_access()
    with pytest.raises(KeyError):
        split_near_root(t, cur, sub, -12345)


def test_split_is_resumable(rng):
    # run two splits on two trees, interleaving their step generators
    t1, s1 = random_rb_tree(rng, 33)
    t2, s2 = random_rb_tree(rng, 47)
    k1 = t1.arena.key[t1.arena.inorder(s1)[10]]
    k2 = t2.arena.key[t2.arena.inorder(s2)[30]]
    c1, _ = t1.begin_access()
    c2, _ = t2.begin_access()
    g1 = split_steps(t1, c1, s1, k1)
    g2 = split_steps(t2, c2, s2, k2)
    alive = [g1, g2]
    rng2 = random.Random(1)
    while alive:
        g = rng2.choice(alive)
        try:
            next(g)
        except StopIteration:
            alive.remove(g)
    a1, a2 = t1.arena, t2.arena
    assert a1.key[t1.root] == k1 and a2.key[t2.root] == k2
    assert validate_rb(t1, a1.left[t1.root])[0]
    assert validate_rb(t2, a2.right[t2.root])[0]


# ---------------------------------------------------------------------------
# fix_join
# ---------------------------------------------------------------------------

def test_fix_join_balances_split_output(rng):
    for _ in range(60):
        k = rng.randrange(1, 60)
        t, root, _ = split_and_check(rng, k)
        cur, _ = t.begin_access()
        out = fix_join(t, cur, root)
        ok, msg = validate_rb(t, out)
        assert ok, msg


# ---------------------------------------------------------------------------
# cut_tango / concatenate_tango
# ---------------------------------------------------------------------------

def test_cut_above_max_depth_is_empty():
    t, hs = chain_tree(random_path(random.Random(5), 9))
    cur, _ = t.begin_access()
    sub = build_from_path(t, cur, hs)
    a = t.arena
    top, bottom = cut_tango(t, cur, sub, a.maxd[sub])
    assert bottom is EMPTY
    assert sorted(to_key_list(t, top)) == sorted(a.key[h] for h in hs)


def test_cut_depths_zero_to_nine():
    rng = random.Random(11)
    t, hs = chain_tree(random_path(rng, 10))
    cur, _ = t.begin_access()
    sub = build_from_path(t, cur, hs)
    a = t.arena
    top, bottom = cut_tango(t, cur, sub, 4)
    assert subtree_depths(t, top) == [0, 1, 2, 3, 4]
    assert subtree_depths(t, bottom) == [5, 6, 7, 8, 9]
    assert a.marked[bottom]
    assert validate_rb(t, top)[0]
    assert validate_rb(t, bottom)[0]


def test_cut_membership_and_validity_random(rng):
    for _ in range(50):
        k = rng.randrange(2, 64)
        t, sub = random_rb_tree(rng, k)
        a = t.arena
        hs = a.inorder(sub)
        keys_all = sorted(a.key[h] for h in hs)
        dmin, dmax = min(a.depth[h] for h in hs), max(a.depth[h] for h in hs)
        d = rng.randrange(dmin, dmax)
        cur, _ = t.begin_access()
        top, bottom = cut_tango(t, cur, sub, d)
        a_keys = sorted(a.key[h] for h in a.inorder(top))
        b_keys = sorted(a.key[h] for h in a.inorder(bottom))
        assert a_keys == sorted(a.key[h] for h in hs if a.depth[h] <= d)
        assert b_keys == sorted(a.key[h] for h in hs if a.depth[h] > d)
        assert validate_rb(t, top)[0]
        assert validate_rb(t, bottom)[0]
        # global in-order preserved: bottom hangs inside the top's key gap
        assert sorted(a.key[h] for h in t.arena.inorder(t.root)) != [] \
            and to_key_list(t, top) == a_keys


def test_concatenate_two_singletons():
    t, hs = chain_tree([(5, 0), (9, 1)])
    a = t.arena
    a.marked[hs[1]] = True
    a.recompute(hs[1])
    a.recompute(hs[0])
    cur, _ = t.begin_access()
    out = concatenate_tango(t, cur, hs[0], hs[1])
    assert validate_rb(t, out)[0]
    assert to_key_list(t, out) == [5, 9]


def test_cut_concatenate_round_trip(rng):
    for _ in range(50):
        k = rng.randrange(2, 64)
        t, sub = random_rb_tree(rng, k)
        a = t.arena
        hs = a.inorder(sub)
        keys_all = [a.key[h] for h in hs]
        depths_all = subtree_depths(t, sub)
        dmin, dmax = min(a.depth[h] for h in hs), max(a.depth[h] for h in hs)
        d = rng.randrange(dmin, dmax)
        cur, _ = t.begin_access()
        top, bottom = cut_tango(t, cur, sub, d)
        n_top = len(a.inorder(top))
        n_bot = len(a.inorder(bottom))
        assert n_top + n_bot == k
        out = concatenate_tango(t, cur, top, bottom)
        ok, msg = validate_rb(t, out)
        assert ok, msg
        assert to_key_list(t, out) == sorted(keys_all)
        assert subtree_depths(t, out) == depths_all


def test_concatenate_depth_mismatch_errors(rng):
    t, hs = chain_tree([(5, 0), (9, 3)])
    a = t.arena
    for h in hs:
        a.recompute(h)
    a.marked[hs[1]] = True
    a.recompute(hs[0])
    cur, _ = t.begin_access()
    with pytest.raises(ValueError):
        concatenate_tango(t, cur, hs[0], hs[1])


# ---------------------------------------------------------------------------
# linearize
# ---------------------------------------------------------------------------

def zig_path(rng, k):
    """All-zig path: keys ascending with depth."""
    key = 0
    out = []
    for i in range(k):
        key += rng.randrange(1, 10)
        out.append((key, i))
    return out


def test_linearize_single_node():
    t, hs = chain_tree([(4, 0)])
    cur, _ = t.begin_access()
    root, rot = linearize(t, cur, hs[0], "zig")
    assert rot == 0


def test_linearize_zig_block_sorted_by_depth(rng):
    for _ in range(30):
        k = rng.randrange(2, 24)
        path = zig_path(rng, k)
        t, hs = chain_tree(path)
        cur, _ = t.begin_access()
        sub = build_from_path(t, cur, hs)
        root, rot = linearize(t, cur, sub, "zig")
        assert rot <= 3 * k
        a = t.arena
        # right chain, depth ascending
        v = root
        depths = []
        while v != NIL and not (a.marked[v] and v != root):
            depths.append(a.depth[v])
            nxt = a.right[v]
            assert not real(a, a.left[v])
            v = nxt if real(a, nxt) else NIL
        assert depths == sorted(depths) and len(depths) == k


def test_linearize_chain_already(rng):
    path = zig_path(rng, 12)
    t, hs = chain_tree(path)
    cur, _ = t.begin_access()
    root, rot = linearize(t, cur, hs[0], "zig")
    assert rot <= 12
