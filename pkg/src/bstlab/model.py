"""BST-model access machinery: cursor, cost metering, compliance checking.

The model charges one unit per node touched by the access pointer; the
pointer starts at the root and moves only along parent/child links.
Rotations and field updates are free but only permitted at touched nodes.
A relaxed mode additionally allows following one stored extra pointer per
path representation (the hybrid tree's revival pointer); each such jump is
counted.

Trace dump format (one line per event):

    M <dir>          cursor move, dir in {p, l, r}
    J <handle>       extra-pointer jump (relaxed mode only)
    R <handle> <d>   rotation of <handle>, logged at depth <d> from the
                     structure root (-1 when depth logging is off)
    K <handle>       mark-bit flip
"""

from .arena import NIL

STRICT = "strict"
RELAXED = "relaxed"

PARENT, LEFT, RIGHT = "p", "l", "r"


class ModelViolation(Exception):
    """An access tried an operation the BST model forbids outright."""


class AccessTrace:
    __slots__ = ("mode", "start", "touches", "rotations", "extra_pointer_uses",
                 "events", "touched", "online_violations", "log_depths")

    def __init__(self, mode=STRICT, start=NIL, record=True, log_depths=False):
        self.mode = mode
        self.start = start
        self.touches = 1 if start != NIL else 0
        self.rotations = []
        self.extra_pointer_uses = 0
        self.events = [] if record else None
        self.touched = {start} if start != NIL else set()
        self.online_violations = []
        self.log_depths = log_depths

    @property
    def cost(self):
        return self.touches

    @property
    def moves(self):
        return self.touches - 1

    def dump(self):
        lines = []
        for ev in self.events or ():
            if ev[0] == "M":
                lines.append(f"M {ev[1]}")
            elif ev[0] == "J":
                lines.append(f"J {ev[1]}")
            elif ev[0] == "R":
                lines.append(f"R {ev[1]} {ev[2]}")
            else:
                lines.append(f"K {ev[1]}")
        return "\n".join(lines)


class Cursor:
    """The single access pointer.  One live cursor per access."""

    __slots__ = ("tree", "trace", "current")

    def __init__(self, tree, trace):
        self.tree = tree
        self.trace = trace
        self.current = tree.root

    def move(self, direction):
        a = self.tree.arena
        h = self.current
        if direction == LEFT:
            nxt = a.left[h]
        elif direction == RIGHT:
            nxt = a.right[h]
        else:
            nxt = a.parent[h]
        if nxt == NIL:
            raise ModelViolation(f"move {direction} from {h} has no neighbor")
        t = self.trace
        t.touches += 1
        t.touched.add(nxt)
        if t.events is not None:
            t.events.append(("M", direction, nxt))
        self.current = nxt
        return nxt

    def jump(self, h):
        """Follow a stored extra pointer (relaxed mode; one use per revival)."""
        t = self.trace
        if t.mode != RELAXED:
            raise ModelViolation("extra-pointer jump in strict mode")
        t.touches += 1
        t.touched.add(h)
        t.extra_pointer_uses += 1
        if t.events is not None:
            t.events.append(("J", h))
        self.current = h
        return h

    def jump_back(self, h):
        """Return leg of a revival round trip; costs a touch, not a use."""
        t = self.trace
        if t.mode != RELAXED:
            raise ModelViolation("extra-pointer jump in strict mode")
        t.touches += 1
        t.touched.add(h)
        if t.events is not None:
            t.events.append(("J", h))
        self.current = h
        return h

    def rotate(self):
        """Rotate the cursor node above its parent; cursor rides the node."""
        tree = self.tree
        a = tree.arena
        x = self.current
        if a.parent[x] == NIL:
            raise ModelViolation("cannot rotate the structure root")
        t = self.trace
        d = -1
        if t.log_depths:
            d = 0
            v = a.parent[x]
            while v != NIL:
                v = a.parent[v]
                d += 1
        a.rotate_up(x)
        if a.parent[x] == NIL:
            tree.root = x
        t.rotations.append((x, d))
        if t.events is not None:
            t.events.append(("R", x, d))

    def set_mark(self, h, bit):
        """Flip the mark bit of a touched node (free, but audited)."""
        t = self.trace
        if h not in t.touched:
            t.online_violations.append(f"mark flip at untouched node {h}")
        a = self.tree.arena
        if a.marked[h] != bit:
            a.marked[h] = bit
            if t.events is not None:
                t.events.append(("K", h))

    def aux_write(self, h, slot, value):
        t = self.trace
        if h not in t.touched:
            t.online_violations.append(f"aux write at untouched node {h}")
        try:
            self.tree.arena.aux_write(h, slot, value)
        except Exception:
            t.online_violations.append(f"aux budget overflow at node {h}")
            raise

    # -- pathing helper ----------------------------------------------------

    def go(self, target):
        """Walk the cursor to target along tree links, metering every move."""
        if self.current == target:
            return
        a = self.tree.arena
        # ancestors of target, with the child side taken from each
        path = {}
        v = target
        while v != NIL:
            p = a.parent[v]
            if p != NIL:
                path[p] = LEFT if a.left[p] == v else RIGHT
            v = p
        v = self.current
        while v != target and v not in path:
            v = self.move(PARENT)
        while v != target:
            v = self.move(path[v])


class ComplianceReport:
    def __init__(self, mode):
        self.mode = mode
        self.violations = []
        self.extra_pointer_uses = 0

    @property
    def ok(self):
        return not self.violations

    def __repr__(self):
        state = "ok" if self.ok else f"{len(self.violations)} violations"
        return f"<ComplianceReport {self.mode}: {state}>"


def verify_compliance(trace, mode=None):
    """Audit a completed trace against the BST model.

    Protocol-level checks: every rotation and mark flip must be at a node
    touched before the event, jumps are violations in strict mode and
    counted in relaxed mode, and the reported cost must equal moves + 1.
    Then any violations recorded online (untouched-field writes, budget
    overflows) are folded in.
    """
    mode = mode or trace.mode
    rep = ComplianceReport(mode)
    if trace.events is None:
        rep.violations.extend(trace.online_violations)
        rep.extra_pointer_uses = trace.extra_pointer_uses
        return rep
    touched = {trace.start}
    touches = 1
    for ev in trace.events:
        kind = ev[0]
        if kind == "M":
            touched.add(ev[2])
            touches += 1
        elif kind == "J":
            touched.add(ev[1])
            touches += 1
            rep.extra_pointer_uses += 1
            if mode == STRICT:
                rep.violations.append(f"extra-pointer jump to {ev[1]}")
        elif kind == "R":
            if ev[1] not in touched:
                rep.violations.append(f"rotation at untouched node {ev[1]}")
        elif kind == "K":
            if ev[1] not in touched:
                rep.violations.append(f"mark flip at untouched node {ev[1]}")
    if touches != trace.touches:
        rep.violations.append(
            f"cost {trace.touches} != repositions+1 ({touches})")
    rep.violations.extend(trace.online_violations)
    return rep


def snapshot_links(arena):
    """Copy of the structural state, for trace replay."""
    return (list(arena.left), list(arena.right), list(arena.parent),
            list(arena.marked))


def replay_trace(snapshot, root, trace):
    """Re-execute a trace on a snapshot.

    Returns (links, violations): the reconstructed (left, right, parent,
    marked) arrays and a list of replay-level violations (non-adjacent
    moves).  Used as the test oracle for "every structural change is a
    sequence of single rotations plus mark flips".
    """
    left, right, parent, marked = (list(x) for x in snapshot)
    violations = []
    cur = root
    for ev in trace.events:
        kind = ev[0]
        if kind == "M":
            d = ev[1]
            nxt = left[cur] if d == LEFT else right[cur] if d == RIGHT else parent[cur]
            if nxt == NIL or (len(ev) > 2 and ev[2] != nxt):
                violations.append(f"non-adjacent move {ev}")
                nxt = ev[2] if len(ev) > 2 else nxt
            cur = nxt
        elif kind == "J":
            cur = ev[1]
        elif kind == "R":
            x = ev[1]
            p = parent[x]
            if p == NIL:
                violations.append(f"replayed rotation of a root {x}")
                continue
            g = parent[p]
            if left[p] == x:
                b = right[x]
                right[x] = p
                left[p] = b
            else:
                b = left[x]
                left[x] = p
                right[p] = b
            if b != NIL:
                parent[b] = p
            parent[p] = x
            parent[x] = g
            if g != NIL:
                if left[g] == p:
                    left[g] = x
                else:
                    right[g] = x
        elif kind == "K":
            marked[ev[1]] = not marked[ev[1]]
    return (left, right, parent, marked), violations


class MeteredTree:
    """Base for structures built exclusively through the model interface."""

    def __init__(self, mode=STRICT):
        from .arena import NodeArena
        self.arena = NodeArena()
        self.root = NIL
        self.mode = mode
        self.record_traces = True
        self.log_depths = False

    def begin_access(self):
        trace = AccessTrace(self.mode, start=self.root,
                            record=self.record_traces,
                            log_depths=self.log_depths)
        return Cursor(self, trace), trace
