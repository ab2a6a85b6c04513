"""Series-parallel networks with unlabeled edges.

A network is a canonical term: the single edge "e", or ("S", children) /
("P", children) where children is a sorted tuple of at least two
networks, none of the same kind as the parent.  The counting sequence is
the MacMahon numbers 1, 2, 4, 10, 24, 66, 180, ...
"""
from __future__ import annotations

import itertools
import math
import re
from typing import Iterator

from . import trees

EDGE = "e"
SERIES = "S"
PARALLEL = "P"


def is_edge(net) -> bool:
    return net == EDGE


def size(net) -> int:
    """Number of edges."""
    if is_edge(net):
        return 1
    return sum(size(c) for c in net[1])


def network_key(net):
    # Mirrors trees.structural_key so the bijection preserves sort order:
    # series <-> circ (kind 1), parallel <-> bullet (kind 2).
    if is_edge(net):
        return (1, 0)
    kind = 1 if net[0] == SERIES else 2
    return (size(net), kind, 0, tuple(network_key(c) for c in net[1]))


def make_node(kind: str, children) -> tuple:
    """Build a canonical S/P node; rejects like-kinded nesting."""
    if kind not in (SERIES, PARALLEL):
        raise ValueError(f"bad kind {kind!r}")
    children = tuple(sorted(children, key=network_key))
    if len(children) < 2:
        raise ValueError("series/parallel node needs at least two children")
    for c in children:
        if not is_edge(c) and c[0] == kind:
            raise ValueError(f"{kind} node may not contain a {kind} child")
    return (kind, children)


def validate_network(net) -> None:
    if is_edge(net):
        return
    make_node(net[0], net[1])
    for c in net[1]:
        validate_network(c)


# --- enumeration and counting ------------------------------------------


def enumerate_networks(n: int) -> Iterator:
    """All canonical networks with n edges, deterministic order."""
    if not 1 <= n <= 12:
        raise ValueError(f"n must be in [1, 12], got {n}")
    yield from _nets(n, "any")


def _nets(n: int, root: str, cache: dict | None = None) -> list:
    if cache is None:
        cache = {}
    key = (n, root)
    if key in cache:
        return cache[key]
    if n == 1:
        out = [EDGE] if root == "any" else []
        cache[key] = out
        return out
    if root == "any":
        out = _nets(n, SERIES, cache) + _nets(n, PARALLEL, cache)
        cache[key] = out
        return out
    from .partitions import partitions

    opposite = PARALLEL if root == SERIES else SERIES
    out = []
    for lam in partitions(n, 2):
        per_size = []
        for s, mult in sorted(lam.multiplicities().items(), reverse=True):
            if s == 1:
                per_size.append([(EDGE,) * mult])
            else:
                pool = _nets(s, opposite, cache)
                per_size.append(
                    list(itertools.combinations_with_replacement(pool, mult))
                )
        for groups in itertools.product(*per_size):
            children = itertools.chain.from_iterable(groups)
            out.append(make_node(root, children))
    cache[key] = out
    return out


def macmahon(n: int) -> int:
    """Number of series-parallel networks with n unlabeled edges.

    Computed by a multiset convolution over the canonical grammar, never
    by enumeration: a series node of size n is a multiset of >= 2
    non-series networks of smaller sizes, and by the series/parallel
    symmetry the non-series and non-parallel counts agree.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    # u[k] = number of non-series networks with k edges
    u = {1: 1}
    s = {}
    for k in range(2, n + 1):
        # ways[j]: multisets of non-series networks of sizes < k totaling j
        ways = [0] * (k + 1)
        ways[0] = 1
        for item_size in range(1, k):
            types = u[item_size]
            nxt = [0] * (k + 1)
            for j in range(k + 1):
                if ways[j] == 0:
                    continue
                r = 0
                while j + r * item_size <= k:
                    nxt[j + r * item_size] += ways[j] * math.comb(types + r - 1, r)
                    r += 1
            ways = nxt
        s[k] = ways[k]
        u[k] = s[k]
    return 1 if n == 1 else 2 * s[n]


# --- bijection with unlabeled two-colored trees -------------------------


def tree_to_network(t):
    """bullet -> parallel, circ -> series, leaf -> edge."""
    if trees.is_leaf(t):
        return EDGE
    kind = PARALLEL if t[0] == trees.BULLET else SERIES
    return make_node(kind, (tree_to_network(c) for c in t[1 + 1]))


def network_to_tree(net):
    """Inverse of tree_to_network, producing canonical unlabeled trees."""
    if is_edge(net):
        return 0
    color = trees.BULLET if net[0] == PARALLEL else trees.CIRC
    children = tuple(
        sorted((network_to_tree(c) for c in net[1]), key=trees.structural_key)
    )
    return (color, 0, children)


# --- text form ----------------------------------------------------------


def format_network(net) -> str:
    if is_edge(net):
        return EDGE
    return f"{net[0]}(" + " ".join(format_network(c) for c in net[1]) + ")"


_NET_TOKEN_RE = re.compile(r"\s*([SPe()])")


def parse_network(text: str):
    """Inverse of format_network; validates canonical form."""
    tokens = []
    pos = 0
    while pos < len(text):
        m = _NET_TOKEN_RE.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ValueError(f"bad token at position {pos}")
            break
        tokens.append(m.group(1))
        pos = m.end()
    idx = 0

    def node():
        nonlocal idx
        if idx >= len(tokens):
            raise ValueError("unexpected end of input")
        tok = tokens[idx]
        idx += 1
        if tok == EDGE:
            return EDGE
        if tok not in (SERIES, PARALLEL):
            raise ValueError(f"expected node, got {tok!r}")
        if idx >= len(tokens) or tokens[idx] != "(":
            raise ValueError(f"expected '(' after {tok}")
        idx += 1
        children = []
        while idx < len(tokens) and tokens[idx] != ")":
            children.append(node())
        if idx >= len(tokens):
            raise ValueError("missing ')'")
        idx += 1
        built = make_node(tok, children)
        if built[1] != tuple(children):
            raise ValueError("children not in canonical order")
        return built

    net = node()
    if idx != len(tokens):
        raise ValueError("trailing tokens")
    return net
