"""Self-adjusting order-statistic tree whose nodes carry string fingerprints.

Each node stores one symbol plus aggregates over its subtree's in-order
symbol sequence: node count, base power, and four fingerprints (forward,
reversed, involution-mapped, mapped-and-reversed).  Two lazy flags defer
subtree reversal (`rev`) and symbol mapping (`map`): a set flag means the
subtree's logical content is the stored content transformed, but the
transformation has not been pushed down yet.

Stored aggregates of a node always describe the subtree *before* that
node's own pending flags are applied, with every descendant interpreted
through its own flags.  `pull` therefore reads children through
`effective_fps`, and `fix` materializes a node's own flags by one level.

All descents and splays are iterative; trees can degrade to long spines and
recursion would overflow.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import RangeError, UsageError


class Node:
    """One symbol plus subtree aggregates and lazy flags.

    Freshly constructed nodes hold placeholder aggregates; every creation
    site must pull() before the node is read.
    """

    __slots__ = ("char", "left", "right", "parent", "size", "power",
                 "fp", "fprev", "mfp", "mfprev", "rev", "map")

    def __init__(self, char: int):
        self.char = char
        self.left = NULL
        self.right = NULL
        self.parent = None
        self.size = 1
        self.power = 1
        self.fp = char
        self.fprev = char
        self.mfp = char
        self.mfprev = char
        self.rev = False
        self.map = False

    def __repr__(self):
        return (f"<Node char={self.char} size={self.size}"
                f"{' rev' if self.rev else ''}{' map' if self.map else ''}>")


# Shared immutable stand-in for absent children: size 0, neutral fingerprints,
# power 1, flags clear.  `pull` reads it without branching; `fix` and the
# rotation code must never write to it.
NULL = Node.__new__(Node)
NULL.char = 0
NULL.left = None
NULL.right = None
NULL.parent = None
NULL.size = 0
NULL.power = 1
NULL.fp = 0
NULL.fprev = 0
NULL.mfp = 0
NULL.mfprev = 0
NULL.rev = False
NULL.map = False


class TreeConfig:
    """Per-forest arithmetic context: fingerprint base, modulus, involution.

    fmap is a dict applying the symbol involution (absent keys map to
    themselves) or None when no involution is configured, in which case the
    mapped fingerprints alias the plain ones and cost nothing to maintain.
    """

    __slots__ = ("base", "modulus", "fmap")

    def __init__(self, base: int, modulus: int, fmap: dict | None = None):
        self.base = base
        self.modulus = modulus
        self.fmap = fmap


@dataclass
class TreeStats:
    """Exact instrumentation counters (not sampled)."""

    rotations: int = 0
    fixes: int = 0


@dataclass
class AttachPoint:
    """The empty child slot between two consecutive in-order ranks.

    parent is None when the whole tree is empty.  The designated slot must
    be empty when the attach point is used.
    """

    parent: Node | None
    side: str  # "left" | "right"


class Tree:
    """Mutable root holder, so restructuring helpers can update it in place."""

    __slots__ = ("root",)

    def __init__(self, root: Node | None = None):
        self.root = root

    @property
    def size(self) -> int:
        return self.root.size if self.root is not None else 0


def validate_involution(pairs) -> dict:
    """Build and check a symbol involution table; raises on violations."""
    table = dict(pairs)
    for a, b in table.items():
        if table.get(b, b) != a:
            raise UsageError(f"mapping is not an involution at {a} <-> {b}")
    return table


def effective_fps(x: Node) -> tuple[int, int, int, int]:
    """(fp, fprev, mfp, mfprev) of x's subtree with x's own flags applied."""
    fp, fprev, mfp, mfprev = x.fp, x.fprev, x.mfp, x.mfprev
    if x.rev:
        fp, fprev = fprev, fp
        mfp, mfprev = mfprev, mfp
    if x.map:
        fp, mfp = mfp, fp
        fprev, mfprev = mfprev, fprev
    return fp, fprev, mfp, mfprev


def pull(x: Node, b: int, p: int, fmap: dict | None) -> None:
    """Recompute all aggregates of x from its children and own symbol.

    Children are read through their pending flags, so pull is correct even
    while descendants carry unmaterialized reversals or mappings.
    """
    l = x.left
    r = x.right
    x.size = l.size + 1 + r.size
    lp = l.power
    rp = r.power
    x.power = lp * rp % p * b % p
    c = x.char
    lfp, lfprev, lmfp, lmfprev = l.fp, l.fprev, l.mfp, l.mfprev
    if l.rev:
        lfp, lfprev, lmfp, lmfprev = lfprev, lfp, lmfprev, lmfp
    if l.map:
        lfp, lmfp, lfprev, lmfprev = lmfp, lfp, lmfprev, lfprev
    rfp, rfprev, rmfp, rmfprev = r.fp, r.fprev, r.mfp, r.mfprev
    if r.rev:
        rfp, rfprev, rmfp, rmfprev = rfprev, rfp, rmfprev, rmfp
    if r.map:
        rfp, rmfp, rfprev, rmfprev = rmfp, rfp, rmfprev, rfprev
    x.fp = ((lfp * b + c) * rp + rfp) % p
    x.fprev = ((rfprev * b + c) * lp + lfprev) % p
    if fmap is None:
        x.mfp = x.fp
        x.mfprev = x.fprev
    else:
        fc = fmap.get(c, c)
        x.mfp = ((lmfp * b + fc) * rp + rmfp) % p
        x.mfprev = ((rmfprev * b + fc) * lp + lmfprev) % p


def fix(x: Node, fmap: dict | None, stats: TreeStats) -> None:
    """Materialize x's pending flags one level, pushing them to children.

    Idempotent when both flags are clear.  The tree's logical content is
    unchanged.  Applied to every node inspected while descending from the
    root, so all structural changes happen on flag-free nodes.
    """
    if x.rev:
        x.rev = False
        l = x.left
        r = x.right
        x.left = r
        x.right = l
        if l is not NULL:
            l.rev = not l.rev
        if r is not NULL:
            r.rev = not r.rev
        x.fp, x.fprev = x.fprev, x.fp
        x.mfp, x.mfprev = x.mfprev, x.mfp
        stats.fixes += 1
    if x.map:
        x.map = False
        l = x.left
        r = x.right
        if l is not NULL:
            l.map = not l.map
        if r is not NULL:
            r.map = not r.map
        if fmap is not None:
            x.char = fmap.get(x.char, x.char)
        x.fp, x.mfp = x.mfp, x.fp
        x.fprev, x.mfprev = x.mfprev, x.fprev
        stats.fixes += 1


def _rotate(x: Node, par: Node, cfg: TreeConfig, stats: TreeStats) -> None:
    """Rotate the edge between x and its parent; x moves up one level."""
    g = par.parent
    if par.left is x:
        sub = x.right
        par.left = sub
        x.right = par
    else:
        sub = x.left
        par.right = sub
        x.left = par
    if sub is not NULL:
        sub.parent = par
    par.parent = x
    x.parent = g
    if g is not None:
        if g.left is par:
            g.left = x
        else:
            g.right = x
    b = cfg.base
    p = cfg.modulus
    f = cfg.fmap
    pull(par, b, p, f)
    pull(x, b, p, f)
    stats.rotations += 1


def splay(x: Node, cfg: TreeConfig, stats: TreeStats,
          stop_below: Node | None = None,
          forbid_final_zigzig: bool = False) -> None:
    """Move x up until its parent is stop_below (or x is the root).

    Callers must have fixed x and all its ancestors up to stop_below, which
    holds whenever x was reached by descending from the root.

    With forbid_final_zigzig, a last two-edge step in the zig-zig shape is
    replaced by two bottom-up single rotations, so the node previously at
    the boundary ends as a child (not grandchild) of x.
    """
    while True:
        par = x.parent
        if par is stop_below or par is None:
            break
        g = par.parent
        if g is stop_below or g is None:
            _rotate(x, par, cfg, stats)
            continue
        zigzig = (g.left is par) == (par.left is x)
        if zigzig and not (forbid_final_zigzig
                           and (g.parent is stop_below or g.parent is None)):
            _rotate(par, g, cfg, stats)
            _rotate(x, par, cfg, stats)
        else:
            # zig-zag, or the rewritten final zig-zig: rotate x up twice.
            _rotate(x, par, cfg, stats)
            _rotate(x, g, cfg, stats)


def descend_to_rank(root: Node, i: int, cfg: TreeConfig,
                    stats: TreeStats) -> Node:
    """Walk down to the node of in-order rank i, fixing every visited node."""
    fmap = cfg.fmap
    x = root
    while True:
        if x.rev or x.map:
            fix(x, fmap, stats)
        ls = x.left.size
        if i <= ls:
            x = x.left
        elif i == ls + 1:
            return x
        else:
            i -= ls + 1
            x = x.right


def find(tree: Tree, i: int, cfg: TreeConfig, stats: TreeStats) -> Node:
    """Select the node of rank i and splay it to the root."""
    if not 1 <= i <= tree.size:
        raise RangeError(f"rank {i} outside [1, {tree.size}]")
    x = descend_to_rank(tree.root, i, cfg, stats)
    splay(x, cfg, stats)
    tree.root = x
    return x


def isolate(tree: Tree, i: int, j: int, cfg: TreeConfig, stats: TreeStats):
    """Restructure so the ranks i..j form one subtree; return its root.

    The returned node has at most two ancestors: it is the root (i = 1,
    j = n), a child of the root (one-sided case), or the left child of the
    root's right child (general case).  Its own flags are clear on return.

    With j = i - 1 the range is empty and the matching AttachPoint (the
    empty slot between ranks i-1 and i) is returned instead.
    """
    n = tree.size
    if j == i - 1:
        if not 1 <= i <= n + 1:
            raise RangeError(f"attach position {i} outside [1, {n + 1}]")
        if n == 0:
            return AttachPoint(None, "left")
        if i == 1:
            return AttachPoint(find(tree, 1, cfg, stats), "left")
        if i == n + 1:
            return AttachPoint(find(tree, n, cfg, stats), "right")
        find(tree, i, cfg, stats)
        x = descend_to_rank(tree.root, i - 1, cfg, stats)
        splay(x, cfg, stats, forbid_final_zigzig=True)
        tree.root = x
        return AttachPoint(x.right, "left")
    if not (1 <= i <= j <= n):
        raise RangeError(f"range [{i}, {j}] outside [1, {n}]")
    if i == 1 and j == n:
        y = tree.root
        fix(y, cfg.fmap, stats)
        return y
    if i == 1:
        find(tree, j + 1, cfg, stats)
        y = tree.root.left
    elif j == n:
        find(tree, i - 1, cfg, stats)
        y = tree.root.right
    else:
        find(tree, j + 1, cfg, stats)
        x = descend_to_rank(tree.root, i - 1, cfg, stats)
        splay(x, cfg, stats, forbid_final_zigzig=True)
        tree.root = x
        y = x.right.left
    fix(y, cfg.fmap, stats)
    return y


def repull_ancestors_from(a: Node | None, cfg: TreeConfig) -> None:
    """Recompute aggregates up an ancestor chain (≤ 2 nodes after isolate)."""
    b = cfg.base
    p = cfg.modulus
    f = cfg.fmap
    while a is not None:
        pull(a, b, p, f)
        a = a.parent


def detach(y: Node, cfg: TreeConfig, tree: Tree) -> None:
    """Remove subtree y from its tree, repulling its former ancestors."""
    par = y.parent
    if par is None:
        tree.root = None
        return
    if par.left is y:
        par.left = NULL
    else:
        par.right = NULL
    y.parent = None
    repull_ancestors_from(par, cfg)


def attach(point: AttachPoint, sub: Node | None, cfg: TreeConfig,
           tree: Tree) -> None:
    """Splice subtree sub into the empty slot, repulling the ancestors."""
    if sub is None:
        return
    par = point.parent
    if par is None:
        sub.parent = None
        tree.root = sub
        return
    if point.side == "left":
        par.left = sub
    else:
        par.right = sub
    sub.parent = par
    repull_ancestors_from(par, cfg)


def join(left: Node | None, right: Node | None, cfg: TreeConfig,
         stats: TreeStats) -> Node | None:
    """Concatenate two trees; all of right goes after all of left."""
    if left is None:
        return right
    if right is None:
        return left
    fmap = cfg.fmap
    x = left
    while True:
        if x.rev or x.map:
            fix(x, fmap, stats)
        if x.right is NULL:
            break
        x = x.right
    splay(x, cfg, stats)
    x.right = right
    right.parent = x
    pull(x, cfg.base, cfg.modulus, fmap)
    return x


def split(tree: Tree, k: int, cfg: TreeConfig,
          stats: TreeStats) -> tuple[Node | None, Node | None]:
    """Split after rank k: returns (ranks 1..k, ranks k+1..n)."""
    n = tree.size
    if not 0 <= k <= n:
        raise RangeError(f"split point {k} outside [0, {n}]")
    if k == 0:
        return None, tree.root
    if k == n:
        return tree.root, None
    x = find(tree, k, cfg, stats)
    right = x.right
    x.right = NULL
    right.parent = None
    pull(x, cfg.base, cfg.modulus, cfg.fmap)
    return x, right


def build_balanced(symbols, cfg: TreeConfig) -> Node | None:
    """Build a perfectly balanced tree over the symbols, in one linear pass.

    Aggregates are filled bottom-up as the recursion (depth O(log n))
    returns, i.e. in post-order.
    """
    syms = symbols if isinstance(symbols, list) else list(symbols)
    b = cfg.base
    p = cfg.modulus
    f = cfg.fmap

    def rec(lo: int, hi: int) -> Node:
        mid = (lo + hi) // 2
        node = Node(syms[mid])
        if lo < mid:
            child = rec(lo, mid - 1)
            node.left = child
            child.parent = node
        if mid < hi:
            child = rec(mid + 1, hi)
            node.right = child
            child.parent = node
        pull(node, b, p, f)
        return node

    if not syms:
        return None
    return rec(0, len(syms) - 1)


def inorder_symbols(root: Node | None, cfg: TreeConfig,
                    stats: TreeStats) -> list[int]:
    """Logical symbol sequence of the subtree, fixing nodes as visited."""
    if root is None:
        return []
    fmap = cfg.fmap
    out = []
    stack = []
    push = stack.append
    pop = stack.pop
    emit = out.append
    cur = root
    while True:
        while cur is not NULL:
            if cur.rev or cur.map:
                fix(cur, fmap, stats)
            push(cur)
            cur = cur.left
        if not stack:
            return out
        cur = pop()
        emit(cur.char)
        cur = cur.right


def logical_symbols(root: Node | None, fmap: dict | None) -> list[int]:
    """Logical symbol sequence without mutating the tree.

    Pending flags are applied functionally while walking, so this is safe to
    call mid-verification without disturbing stored state.
    """
    if root is None:
        return []
    out = []
    # (node, rev_acc, map_acc, emitted)
    stack = [(root, False, False, False)]
    while stack:
        x, racc, macc, emitted = stack.pop()
        if x is NULL:
            continue
        if emitted:
            c = x.char
            if macc and fmap is not None:
                c = fmap.get(c, c)
            out.append(c)
            continue
        r = racc ^ x.rev
        m = macc ^ x.map
        first, second = (x.right, x.left) if r else (x.left, x.right)
        stack.append((second, r, m, False))
        stack.append((x, r, m, True))
        stack.append((first, r, m, False))
    return out


def tree_height(root: Node | None) -> int:
    """Number of levels (0 for the empty tree)."""
    if root is None:
        return 0
    best = 0
    stack = [(root, 1)]
    while stack:
        x, h = stack.pop()
        if h > best:
            best = h
        if x.left is not NULL:
            stack.append((x.left, h + 1))
        if x.right is not NULL:
            stack.append((x.right, h + 1))
    return best


def verify_tree(root: Node | None, cfg: TreeConfig) -> None:
    """Audit every stored field against a full bottom-up recomputation.

    Raises AssertionError naming the first inconsistent node.  Read-only.
    """
    if root is None:
        return
    if root.parent is not None:
        raise AssertionError("root has a parent link")
    b = cfg.base
    p = cfg.modulus
    fmap = cfg.fmap
    # Iterative post-order: children checked before the parent.
    stack = [(root, False)]
    while stack:
        x, ready = stack.pop()
        if not ready:
            stack.append((x, True))
            for child in (x.left, x.right):
                if child is not NULL:
                    if child.parent is not x:
                        raise AssertionError(f"bad parent link under {x!r}")
                    stack.append((child, False))
            continue
        l = x.left
        r = x.right
        if x.size != l.size + 1 + r.size:
            raise AssertionError(f"size mismatch at {x!r}")
        if x.power != l.power * r.power % p * b % p:
            raise AssertionError(f"power mismatch at {x!r}")
        lfp, lfprev, lmfp, lmfprev = effective_fps(l)
        rfp, rfprev, rmfp, rmfprev = effective_fps(r)
        c = x.char
        fc = fmap.get(c, c) if fmap is not None else c
        want_fp = ((lfp * b + c) * r.power + rfp) % p
        want_fprev = ((rfprev * b + c) * l.power + lfprev) % p
        want_mfp = ((lmfp * b + fc) * r.power + rmfp) % p
        want_mfprev = ((rmfprev * b + fc) * l.power + lmfprev) % p
        if x.fp != want_fp:
            raise AssertionError(f"fp mismatch at {x!r}")
        if x.fprev != want_fprev:
            raise AssertionError(f"fprev mismatch at {x!r}")
        if x.mfp != want_mfp:
            raise AssertionError(f"mfp mismatch at {x!r}")
        if x.mfprev != want_mfprev:
            raise AssertionError(f"mfprev mismatch at {x!r}")
