"""Two-colored alternating trees: the explicit basis of a free product.

A tree is a nested tuple (color, dec, children) with color "bullet" or
"circ", dec an index into a basis of the component operad at that arity,
and children a tuple of subtrees; a leaf is a bare int label (0 in
unlabeled mode).  No edge ever joins two vertices of the same color, and
every internal vertex has at least two children.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterator

from .dims import OperadDims

BULLET = "bullet"
CIRC = "circ"

Tree = "int | tuple"


def other_color(color: str) -> str:
    return CIRC if color == BULLET else BULLET


def is_leaf(t) -> bool:
    return isinstance(t, int)


def arity(t) -> int:
    if is_leaf(t):
        return 1
    return sum(arity(c) for c in t[2])


def leaf_labels(t) -> tuple[int, ...]:
    """Leaf labels in planar (left-to-right) order."""
    if is_leaf(t):
        return (t,)
    out: list[int] = []
    for c in t[2]:
        out.extend(leaf_labels(c))
    return tuple(out)


def validate_tree(t) -> None:
    """Raise if t violates the arity or color-alternation invariants."""
    if is_leaf(t):
        return
    color, dec, children = t
    if color not in (BULLET, CIRC):
        raise ValueError(f"bad color {color!r}")
    if dec < 0:
        raise ValueError(f"bad decoration {dec}")
    if len(children) < 2:
        raise ValueError("internal vertex needs at least two children")
    for c in children:
        if not is_leaf(c) and c[0] == color:
            raise ValueError("same-color edge")
        validate_tree(c)


# --- labeled basis enumeration -----------------------------------------


def _set_partitions(labels: tuple[int, ...]) -> list[tuple[tuple[int, ...], ...]]:
    """Set partitions of labels; blocks sorted internally and by minimum."""
    parts: list[list[int]] = []
    results: list[tuple] = []

    def rec(i: int) -> None:
        if i == len(labels):
            results.append(tuple(tuple(b) for b in parts))
            return
        x = labels[i]
        for b in parts:
            b.append(x)
            rec(i + 1)
            b.pop()
        parts.append([x])
        rec(i + 1)
        parts.pop()

    rec(0)
    return results


def enumerate_basis(
    x: OperadDims, y: OperadDims, n: int, root: str = "any"
) -> Iterator:
    """Yield every canonical basis tree of arity n exactly once.

    Canonical form: children ordered by the smallest leaf label in each
    subtree.  `root` restricts the root color ("bullet", "circ", "any");
    arity 1 yields the bare leaf regardless.
    """
    if n < 1:
        raise ValueError(f"arity must be >= 1, got {n}")
    if root not in (BULLET, CIRC, "any"):
        raise ValueError(f"bad root {root!r}")
    if n == 1:
        yield 1
        return
    dim_of = {BULLET: x.dim, CIRC: y.dim}
    cache: dict[tuple, list] = {}

    def trees_for(labels: tuple[int, ...], color: str) -> list:
        key = (labels, color)
        if key in cache:
            return cache[key]
        out: list = []
        for blocks in _set_partitions(labels):
            if len(blocks) < 2:
                continue
            d = dim_of[color](len(blocks))
            if d == 0:
                continue
            options: list = []
            for b in blocks:
                if len(b) == 1:
                    options.append((b[0],))
                else:
                    subs = trees_for(b, other_color(color))
                    if not subs:
                        options = None
                        break
                    options.append(subs)
            if options is None:
                continue
            for dec in range(d):
                for combo in itertools.product(*options):
                    out.append((color, dec, combo))
        cache[key] = out
        return out

    labels = tuple(range(1, n + 1))
    for color in (BULLET, CIRC):
        if root in (color, "any"):
            yield from trees_for(labels, color)


# --- unlabeled mode -----------------------------------------------------


def structural_key(t):
    """Total order on unlabeled trees (size, color, decoration, children)."""
    if is_leaf(t):
        return (1, 0)
    color, dec, children = t
    kind = 1 if color == CIRC else 2
    return (arity(t), kind, dec, tuple(structural_key(c) for c in children))


def enumerate_unlabeled(
    x: OperadDims, y: OperadDims, n: int, root: str = "any"
) -> Iterator:
    """Basis trees up to forgetting leaf labels: canonical multisets of children."""
    if n < 1:
        raise ValueError(f"arity must be >= 1, got {n}")
    if n == 1:
        yield 0
        return
    from .partitions import partitions

    dim_of = {BULLET: x.dim, CIRC: y.dim}
    cache: dict[tuple, list] = {}

    def utrees(k: int, color: str) -> list:
        key = (k, color)
        if key in cache:
            return cache[key]
        out: list = []
        for lam in partitions(k, 2):
            d = dim_of[color](lam.m)
            if d == 0:
                continue
            per_size = []
            for size, mult in sorted(lam.multiplicities().items(), reverse=True):
                if size == 1:
                    per_size.append([(0,) * mult])
                else:
                    pool = utrees(size, other_color(color))
                    per_size.append(
                        [c for c in itertools.combinations_with_replacement(pool, mult)]
                    )
            for dec in range(d):
                for groups in itertools.product(*per_size):
                    children = tuple(
                        sorted(itertools.chain.from_iterable(groups), key=structural_key)
                    )
                    out.append((color, dec, children))
        cache[key] = out
        return out

    for color in (BULLET, CIRC):
        if root in (color, "any"):
            yield from utrees(n, color)


# --- grafting with suppression (the As*As planar model) -----------------


def graft(t, args: list) -> "Tree":
    """Compose planar trees: substitute, renumber leaves by blocks, then
    contract every edge joining same-color vertices.

    Decorations are carried by the planar arrangement itself (the As*As
    model), so `dec` values pass through untouched.
    """
    n = arity(t)
    if len(args) != n:
        raise ValueError(f"arity mismatch: tree has {n} inputs, got {len(args)} args")

    def shift(node, off: int):
        if is_leaf(node):
            return node + off
        return (node[0], node[1], tuple(shift(c, off) for c in node[2]))

    offset = 0
    plugged: dict[int, object] = {}
    for i, a in enumerate(args, start=1):
        plugged[i] = shift(a, offset)
        offset += arity(a)

    def build(node):
        if is_leaf(node):
            return plugged[node]
        color, dec, children = node
        flat: list = []
        for c in children:
            k = build(c)
            if not is_leaf(k) and k[0] == color:
                flat.extend(k[2])
            else:
                flat.append(k)
        return (color, dec, tuple(flat))

    return build(t)


def identity_tree():
    """The arity-1 identity: a bare leaf labeled 1."""
    return 1


# --- pattern-avoidance counting ----------------------------------------


@dataclass(frozen=True)
class VertexPattern:
    """Local predicate on an internal vertex.

    Matches a vertex of the given color that has at least one composite
    (non-leaf) child, optionally of a specific color.  With
    requires_composite_child=False it matches every vertex of the color.
    """

    color: str
    requires_composite_child: bool = True
    child_color: str | None = None

    def matches(self, node) -> bool:
        if is_leaf(node) or node[0] != self.color:
            return False
        if not self.requires_composite_child:
            return True
        return any(
            not is_leaf(c) and (self.child_color is None or c[0] == self.child_color)
            for c in node[2]
        )


def tree_matches(t, patterns) -> bool:
    """Does any vertex of t match any of the patterns?"""
    if is_leaf(t):
        return False
    return any(p.matches(t) for p in patterns) or any(
        tree_matches(c, patterns) for c in t[2]
    )


def count_avoiding(
    x: OperadDims, y: OperadDims, n: int, patterns: list[VertexPattern]
) -> int:
    """Number of basis trees containing no vertex matching any pattern.

    Computed by filtered enumeration; cross-check against
    count_avoiding_recursive.
    """
    if n == 1:
        return 1
    return sum(
        1 for t in enumerate_basis(x, y, n) if not tree_matches(t, patterns)
    )


def count_avoiding_recursive(
    x: OperadDims, y: OperadDims, n: int, patterns: list[VertexPattern]
) -> int:
    """Independent oracle: the avoidance count via a partition recursion.

    Works because the patterns are local: in an alternating tree, whether
    a vertex of color c over a block-size profile matches depends only on
    (c, profile).
    """
    from .partitions import partitions, orbit_count

    if n == 1:
        return 1
    dim_of = {BULLET: x.dim, CIRC: y.dim}

    def profile_matches(color: str, lam) -> bool:
        for p in patterns:
            if p.color != color:
                continue
            if not p.requires_composite_child:
                return True
            if any(s > 1 for s in lam.parts) and p.child_color in (
                None,
                other_color(color),
            ):
                return True
        return False

    cache: dict[tuple, int] = {}

    def avoid(k: int, color: str) -> int:
        key = (k, color)
        if key in cache:
            return cache[key]
        total = 0
        for lam in partitions(k, 2):
            if profile_matches(color, lam):
                continue
            term = orbit_count(lam) * dim_of[color](lam.m)
            for s in lam.parts:
                if s >= 2:
                    term *= avoid(s, other_color(color))
            total += term
        cache[key] = total
        return total

    return avoid(n, BULLET) + avoid(n, CIRC)


PATTERNS_BY_NAME = {
    "bullet-composite-child": VertexPattern(BULLET),
    "circ-composite-child": VertexPattern(CIRC),
}


# --- series-parallel classification ------------------------------------


def classify_by_network(t):
    """Forget decorations and labels; map to the canonical network."""
    from . import spnet

    return spnet.tree_to_network(t)


# --- serialization ------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(bullet|circ|\[dec=\d+\]|\d+|[(),])")


def format_tree(t) -> str:
    if is_leaf(t):
        return str(t)
    color, dec, children = t
    return f"{color}[dec={dec}](" + ", ".join(format_tree(c) for c in children) + ")"


def parse_tree(text: str):
    """Inverse of format_tree; raises ValueError on malformed input."""
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ValueError(f"bad token at position {pos}: {text[pos:pos + 10]!r}")
            break
        tokens.append(m.group(1))
        pos = m.end()
    idx = 0

    def expect(tok: str) -> None:
        nonlocal idx
        if idx >= len(tokens) or tokens[idx] != tok:
            raise ValueError(f"expected {tok!r} at token {idx}")
        idx += 1

    def node():
        nonlocal idx
        if idx >= len(tokens):
            raise ValueError("unexpected end of input")
        tok = tokens[idx]
        if tok.isdigit():
            idx += 1
            return int(tok)
        if tok not in (BULLET, CIRC):
            raise ValueError(f"expected color or leaf, got {tok!r}")
        idx += 1
        m = re.fullmatch(r"\[dec=(\d+)\]", tokens[idx]) if idx < len(tokens) else None
        if not m:
            raise ValueError(f"expected [dec=K] after {tok}")
        idx += 1
        dec = int(m.group(1))
        expect("(")
        children = [node()]
        while idx < len(tokens) and tokens[idx] == ",":
            idx += 1
            children.append(node())
        expect(")")
        return (tok, dec, tuple(children))

    t = node()
    if idx != len(tokens):
        raise ValueError(f"trailing tokens at {idx}")
    validate_tree(t)
    return t
