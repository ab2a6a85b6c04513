"""Dimension engine for free products of binary operads.

The arity-n component of the free product splits into trees with a
bullet root and trees with a circ root; their dimensions satisfy a
recursion over partitions of n with at least two parts, weighted by the
orbit counts from :mod:`freeop.partitions`.  The same recursion can be
run over integers or over polynomials in the component dimensions.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Callable

from .partitions import partitions, orbit_count
from .polynomials import MultiPoly

SYMBOLIC_MAX = 8


class OperadError(ValueError):
    pass


@dataclass(frozen=True)
class OperadDims:
    """A named dimension sequence, dim(1) = 1 always."""

    name: str
    fn: Callable[[int], int]

    def dim(self, n: int) -> int:
        if n < 1:
            raise OperadError(f"arity must be >= 1, got {n}")
        if n == 1:
            return 1
        d = self.fn(n)
        if d < 0:
            raise OperadError(f"{self.name}: negative dimension at arity {n}")
        return d


def _double_factorial_odd(n: int) -> int:
    # (2n-3)!! = 1*3*5*...*(2n-3); the free one-generator magma count
    return math.prod(range(1, 2 * n - 2, 2))


_BUILTINS: dict[str, Callable[[int], int]] = {
    "com-as": lambda n: 1,
    "as": math.factorial,
    "lie": lambda n: math.factorial(n - 1),
    "com": _double_factorial_odd,
    "anti-com": _double_factorial_odd,
    "nov": lambda n: math.comb(2 * n - 2, n - 1),
}


def builtin_operad(name: str) -> OperadDims:
    """Look up one of the bundled dimension sequences by id."""
    try:
        fn = _BUILTINS[name]
    except KeyError:
        raise OperadError(
            f"unknown operad {name!r}; choose from {sorted(_BUILTINS)}"
        ) from None
    return OperadDims(name, fn)


def explicit_operad(
    name: str, dims: list[int], tail: OperadDims | None = None
) -> OperadDims:
    """Operad from an explicit sequence [d2, d3, ...].

    Arities beyond the sequence fall through to `tail` if given,
    otherwise raise.
    """
    seq = list(dims)
    if any(d < 0 for d in seq):
        raise OperadError(f"{name}: dimensions must be nonnegative")

    def fn(n: int) -> int:
        if n - 2 < len(seq):
            return seq[n - 2]
        if tail is not None:
            return tail.dim(n)
        raise OperadError(
            f"{name}: no dimension supplied for arity {n} (sequence covers up to {len(seq) + 1})"
        )

    return OperadDims(name, fn)


@dataclass(frozen=True)
class DimTable:
    """Per-arity dimensions of a free product; total[1] = 1 by convention."""

    n_max: int
    bullet: dict[int, int] = field(repr=False)
    circ: dict[int, int] = field(repr=False)

    @property
    def total(self) -> dict[int, int]:
        out = {1: 1}
        for n in range(2, self.n_max + 1):
            out[n] = self.bullet[n] + self.circ[n]
        return out

    def totals(self) -> list[int]:
        """[total(1), ..., total(n_max)] as a plain list."""
        t = self.total
        return [t[n] for n in range(1, self.n_max + 1)]


def _run_recursion(xdim, ydim, n_max):
    """The recursion itself, generic over the coefficient semiring.

    xdim/ydim map an arity m >= 2 to a value supporting + and * with ints.
    Returns (bullet, circ) dicts for 2 <= n <= n_max.
    """
    bullet: dict[int, object] = {}
    circ: dict[int, object] = {}
    for n in range(2, n_max + 1):
        b = 0
        c = 0
        for lam in partitions(n, 2):
            coeff = orbit_count(lam)
            m = lam.m
            tb = coeff * xdim(m)
            tc = coeff * ydim(m)
            for k in lam.parts:
                if k >= 2:
                    tb = tb * circ[k]
                    tc = tc * bullet[k]
            b = b + tb
            c = c + tc
        bullet[n] = b
        circ[n] = c
    return bullet, circ


def free_product_dims(x: OperadDims, y: OperadDims, n_max: int) -> DimTable:
    """Dimension table of the free product of two binary operads."""
    if n_max < 2:
        raise OperadError(f"n_max must be >= 2, got {n_max}")
    if x.dim(1) != 1 or y.dim(1) != 1:
        raise OperadError("component operads must have dim 1 in arity 1")
    bullet, circ = _run_recursion(x.dim, y.dim, n_max)
    return DimTable(n_max, bullet, circ)


def symbolic_dims(n_max: int) -> dict[int, tuple[MultiPoly, MultiPoly]]:
    """Bullet/circ dimensions as polynomials in x2..xn, y2..yn.

    The circ polynomial is the bullet one with x and y interchanged.
    """
    if not 2 <= n_max <= SYMBOLIC_MAX:
        raise OperadError(f"n_max must be in [2, {SYMBOLIC_MAX}], got {n_max}")
    bullet, circ = _run_recursion(
        lambda m: MultiPoly.var("x", m),
        lambda m: MultiPoly.var("y", m),
        n_max,
    )
    return {n: (bullet[n], circ[n]) for n in range(2, n_max + 1)}


# --- operad config files ------------------------------------------------
#
# Line-oriented, UTF-8, '#' comments.  Each entry is one of
#   name = builtin:<id>
#   name = [d2, d3, ...]
#   name = [d2, d3, ...] builtin:<id>     (explicit head, builtin tail)

_ENTRY_RE = re.compile(
    r"^(?P<name>[\w-]+)\s*=\s*(?:(?P<seq>\[[^\]]*\])\s*)?(?:builtin:(?P<builtin>[\w-]+))?\s*$"
)


def parse_operad_config(text: str) -> dict[str, OperadDims]:
    """Parse a config file body into named dimension sequences."""
    out: dict[str, OperadDims] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _ENTRY_RE.match(line)
        if not m or (m.group("seq") is None and m.group("builtin") is None):
            raise OperadError(f"config line {lineno}: cannot parse {raw!r}")
        name = m.group("name")
        tail = builtin_operad(m.group("builtin")) if m.group("builtin") else None
        if m.group("seq") is None:
            out[name] = OperadDims(name, tail.fn)
            continue
        body = m.group("seq")[1:-1].strip()
        try:
            seq = [int(tok) for tok in body.split(",")] if body else []
        except ValueError:
            raise OperadError(
                f"config line {lineno}: sequence entries must be integers"
            ) from None
        out[name] = explicit_operad(name, seq, tail)
    return out
