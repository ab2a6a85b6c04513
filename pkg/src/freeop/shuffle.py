"""Shuffle-tree monomials, rewriting, and confluence checking.

A monomial is a nested tuple: a leaf is a positive int, an internal node
is (symbol, child, child, ...) with the symbol a generator name.  At
every node the blocks of leaf labels under the children have strictly
increasing minima (the shuffle condition).  Elements are rational linear
combinations of monomials of one arity.

The monomial order is graded path-lexicographic: compare arity, then for
each leaf label in increasing order the word of symbols along the
root-to-leaf path (alphabetically earlier symbol wins, a proper
extension beats its prefix), then the planar leaf sequence.  This makes
x(x(1 2) 3) the largest of the three Jacobi monomials and ranks x-rooted
monomials above y-rooted ones.
"""
from __future__ import annotations

import functools
import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple


class ShuffleError(ValueError):
    pass


class ParseError(ShuffleError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class ShuffleConditionError(ShuffleError):
    pass


# --- monomial basics ----------------------------------------------------


def is_leaf(m) -> bool:
    return isinstance(m, int)


def leaves(m) -> tuple[int, ...]:
    """Leaf labels in planar order."""
    if is_leaf(m):
        return (m,)
    out: list[int] = []
    for c in m[1:]:
        out.extend(leaves(c))
    return tuple(out)


def arity(m) -> int:
    return len(leaves(m))


def min_leaf(m) -> int:
    if is_leaf(m):
        return m
    return min(min_leaf(c) for c in m[1:])


def validate_monomial(m) -> None:
    """Check distinct positive leaves and the shuffle condition throughout."""
    seen = leaves(m)
    if len(set(seen)) != len(seen):
        raise ShuffleConditionError(f"duplicate leaf labels in {print_monomial(m)}")
    if any(label < 1 for label in seen):
        raise ShuffleConditionError("leaf labels must be positive")
    _check_minima(m)


def _check_minima(m) -> None:
    if is_leaf(m):
        return
    mins = [min_leaf(c) for c in m[1:]]
    if any(a >= b for a, b in zip(mins, mins[1:])):
        raise ShuffleConditionError(
            f"child minima not increasing at {print_monomial(m)}: {mins}"
        )
    for c in m[1:]:
        _check_minima(c)


def symbols_of(m) -> set[str]:
    if is_leaf(m):
        return set()
    out = {m[0]}
    for c in m[1:]:
        out |= symbols_of(c)
    return out


# --- printing and parsing ----------------------------------------------


def print_monomial(m) -> str:
    if is_leaf(m):
        return str(m)
    return m[0] + "(" + " ".join(print_monomial(c) for c in m[1:]) + ")"


_SYM_RE = re.compile(r"[A-Za-z_]\w*")
_INT_RE = re.compile(r"\d+")


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str) -> None:
        if self.peek() != ch:
            raise ParseError(f"expected {ch!r}", self.pos)
        self.pos += 1

    def match(self, regex: re.Pattern) -> str | None:
        self.skip_ws()
        m = regex.match(self.text, self.pos)
        if m:
            self.pos = m.end()
            return m.group(0)
        return None

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)


def _parse_monomial_from(sc: _Scanner):
    num = sc.match(_INT_RE)
    if num is not None:
        return int(num)
    sym = sc.match(_SYM_RE)
    if sym is None:
        raise ParseError("expected a leaf number or generator symbol", sc.pos)
    sc.take("(")
    args = []
    while sc.peek() != ")":
        if sc.at_end():
            raise ParseError("missing ')'", sc.pos)
        args.append(_parse_monomial_from(sc))
    sc.take(")")
    if not args:
        raise ParseError("generator application needs arguments", sc.pos)
    return (sym, *args)


def parse_monomial(text: str):
    """Parse notation like "x(x(1 2) 3)"; validates the shuffle condition."""
    sc = _Scanner(text)
    m = _parse_monomial_from(sc)
    if not sc.at_end():
        raise ParseError("trailing input", sc.pos)
    validate_monomial(m)
    return m


# --- the monomial order -------------------------------------------------


def _leaf_paths(m) -> dict[int, str]:
    out: dict[int, str] = {}

    def walk(node, word: str) -> None:
        if is_leaf(node):
            out[node] = word
            return
        for c in node[1:]:
            walk(c, word + node[0])

    walk(m, "")
    return out


def _cmp_words(a: str, b: str) -> int:
    # Earlier symbol alphabetically is the greater (x beats y); a proper
    # extension beats its prefix.
    for ca, cb in zip(a, b):
        if ca != cb:
            return 1 if ca < cb else -1
    if len(a) != len(b):
        return 1 if len(a) > len(b) else -1
    return 0


def compare(a, b) -> int:
    """Total order: +1 if a > b, -1 if a < b, 0 if equal."""
    la, lb = arity(a), arity(b)
    if la != lb:
        raise ShuffleError(f"cannot compare arities {la} and {lb}")
    pa, pb = _leaf_paths(a), _leaf_paths(b)
    for label in sorted(pa):
        c = _cmp_words(pa[label], pb[label])
        if c:
            return c
    sa, sb = leaves(a), leaves(b)
    if sa != sb:
        return 1 if sa > sb else -1
    return 0


monomial_key = functools.cmp_to_key(compare)


# --- elements -----------------------------------------------------------


class ShuffleElement:
    """A rational linear combination of monomials of one arity."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean: dict = {}
        for m, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[m] = c
        arities = {arity(m) for m in clean}
        if len(arities) > 1:
            raise ShuffleError(f"mixed arities in element: {sorted(arities)}")
        self.terms = clean

    @classmethod
    def from_monomial(cls, m, coeff=1) -> "ShuffleElement":
        return cls({m: Fraction(coeff)})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ShuffleElement) and self.terms == other.terms

    def __add__(self, other: "ShuffleElement") -> "ShuffleElement":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return ShuffleElement(out)

    def __neg__(self) -> "ShuffleElement":
        return ShuffleElement({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "ShuffleElement") -> "ShuffleElement":
        return self + (-other)

    def __mul__(self, scalar) -> "ShuffleElement":
        return ShuffleElement({m: c * Fraction(scalar) for m, c in self.terms.items()})

    __rmul__ = __mul__

    def leading_monomial(self):
        if not self.terms:
            raise ShuffleError("zero element has no leading monomial")
        return max(self.terms, key=monomial_key)

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda t: monomial_key(t[0]), reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            body = print_monomial(m)
            if abs(c) != 1:
                body = f"{abs(c)}*{body}"
            parts.append(("-" if c < 0 else "+", body))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"ShuffleElement({self})"


class RewriteRule(NamedTuple):
    lhs: object
    rhs: ShuffleElement


def orient(e: ShuffleElement) -> RewriteRule:
    """Turn an equation e = 0 into a rule: leading monomial -> minus rest."""
    if not e:
        raise ShuffleError("cannot orient the zero element")
    lead = e.leading_monomial()
    coeff = e.terms[lead]
    rest = ShuffleElement({m: c for m, c in e.terms.items() if m != lead})
    return RewriteRule(lead, (-1 / coeff) * rest)


# --- free shuffle tree enumeration -------------------------------------


def enumerate_shuffle_trees(alphabet, n: int) -> Iterator:
    """All shuffle monomials with leaves 1..n over binary generators.

    `alphabet` is a list of (symbol, arity) pairs; only arity 2 is
    supported.
    """
    if n < 1:
        raise ShuffleError(f"arity must be >= 1, got {n}")
    symbols = []
    for sym, ar in alphabet:
        if ar != 2:
            raise ShuffleError(f"only binary generators are supported, got {sym}/{ar}")
        symbols.append(sym)
    cache: dict[tuple[int, ...], list] = {}

    def trees_on(labels: tuple[int, ...]) -> list:
        if labels in cache:
            return cache[labels]
        if len(labels) == 1:
            out = [labels[0]]
        else:
            out = []
            rest = labels[1:]
            # right child's labels: any nonempty subset of the non-minimal
            # labels, iterated in a fixed subset order
            for mask in range(1, 1 << len(rest)):
                right = tuple(rest[i] for i in range(len(rest)) if mask >> i & 1)
                left = (labels[0],) + tuple(x for x in rest if x not in right)
                for sym in symbols:
                    for lt in trees_on(left):
                        for rt in trees_on(right):
                            out.append((sym, lt, rt))
        cache[labels] = out
        return out

    yield from trees_on(tuple(range(1, n + 1)))


# --- divisor search (shuffle subtree embeddings) ------------------------


@dataclass(frozen=True)
class Embedding:
    """An occurrence of a rule's lhs inside a monomial.

    path: child-index path from the root of the host to the root of the
    occurrence; slots maps each lhs leaf label to the host subtree
    hanging there; vertices is the set of host vertex paths covered.
    """

    path: tuple[int, ...]
    slots: dict
    vertices: frozenset

    def __hash__(self):
        return hash((self.path, self.vertices))


def _match_structure(node, pat, out: list) -> bool:
    if is_leaf(pat):
        out.append((pat, node))
        return True
    if is_leaf(node) or node[0] != pat[0] or len(node) != len(pat):
        return False
    return all(
        _match_structure(cn, cp, out) for cn, cp in zip(node[1:], pat[1:])
    )


def _pattern_vertices(pat, base: tuple[int, ...]) -> list[tuple[int, ...]]:
    out = [base]
    for i, c in enumerate(pat[1:]):
        if not is_leaf(c):
            out.extend(_pattern_vertices(c, base + (i,)))
    return out


def _embedding_at(node, path: tuple[int, ...], lhs) -> Embedding | None:
    slots: list = []
    if not _match_structure(node, lhs, slots):
        return None
    # order pattern: the lhs leaf labels must rank the hanging subtrees
    # exactly by their minimal host labels
    by_min = sorted(slots, key=lambda rs: min_leaf(rs[1]))
    if [rank for rank, _ in by_min] != list(range(1, len(slots) + 1)):
        return None
    return Embedding(path, dict(slots), frozenset(_pattern_vertices(lhs, path)))


def all_embeddings(m, lhs) -> list[Embedding]:
    """Every occurrence of lhs in m, preorder (leftmost-outermost first)."""
    out: list[Embedding] = []

    def walk(node, path: tuple[int, ...]) -> None:
        if is_leaf(node):
            return
        emb = _embedding_at(node, path, lhs)
        if emb is not None:
            out.append(emb)
        for i, c in enumerate(node[1:]):
            walk(c, path + (i,))

    walk(m, ())
    return out


def find_divisor(m, lhs) -> Embedding | None:
    """Leftmost-outermost occurrence of lhs as a shuffle subtree, if any."""
    if is_leaf(m):
        return None
    emb = _embedding_at(m, (), lhs)
    if emb is not None:
        return emb
    for i, c in enumerate(m[1:]):
        sub = find_divisor(c, lhs)
        if sub is not None:
            return Embedding((i,) + sub.path, sub.slots, frozenset(
                (i,) + p for p in sub.vertices
            ))
    return None


def _substitute(pat, slots: dict):
    if is_leaf(pat):
        return slots[pat]
    return (pat[0], *(_substitute(c, slots) for c in pat[1:]))


def _replace_at(m, path: tuple[int, ...], sub):
    if not path:
        return sub
    i = path[0]
    return m[: i + 1] + (_replace_at(m[i + 1], path[1:], sub),) + m[i + 2:]


def rewrite_at(m, emb: Embedding, rule: RewriteRule) -> ShuffleElement:
    """One reduction step: replace the occurrence of rule.lhs in m.

    Every produced monomial is strictly smaller than m; this is asserted
    on each step, so a non-admissible order or badly oriented rule fails
    loudly.
    """
    out: dict = {}
    for r, coeff in rule.rhs.terms.items():
        new = _replace_at(m, emb.path, _substitute(r, emb.slots))
        if compare(new, m) >= 0:
            raise ShuffleError(
                f"rewrite does not decrease: {print_monomial(m)} -> {print_monomial(new)}"
            )
        out[new] = out.get(new, 0) + coeff
    return ShuffleElement(out)


# --- normal forms -------------------------------------------------------


def normal_form(
    e: ShuffleElement, rules: list[RewriteRule], rng=None
) -> ShuffleElement:
    """Reduce until no monomial is divisible by any rule's lhs.

    Deterministic strategy: largest reducible monomial, first rule in
    order, leftmost-outermost occurrence.  With `rng` the reducible
    monomial, rule, and occurrence are all chosen at random (used to
    check that confluent systems give strategy-independent results).
    """
    terms = dict(e.terms)
    normal: set = set()
    while True:
        choices = []
        for m in sorted(terms, key=monomial_key, reverse=True):
            if m in normal:
                continue
            found = False
            for rule in rules:
                if rng is None:
                    emb = find_divisor(m, rule.lhs)
                    if emb is not None:
                        choices.append((m, rule, emb))
                        found = True
                        break
                else:
                    for emb in all_embeddings(m, rule.lhs):
                        choices.append((m, rule, emb))
                        found = True
            if found and rng is None:
                break
            if not found:
                normal.add(m)
        if not choices:
            return ShuffleElement(terms)
        m, rule, emb = choices[0] if rng is None else rng.choice(choices)
        coeff = terms.pop(m)
        for new, c in rewrite_at(m, emb, rule).terms.items():
            acc = terms.get(new, 0) + coeff * c
            if acc:
                terms[new] = acc
            else:
                terms.pop(new, None)


def is_normal(m, rules: list[RewriteRule]) -> bool:
    return all(find_divisor(m, r.lhs) is None for r in rules)


def count_normal_monomials(alphabet, rules: list[RewriteRule], n: int) -> int:
    """Number of arity-n shuffle monomials with no divisor among the lhs set."""
    if n > 7:
        raise ShuffleError("counting is enumeration-backed; n <= 7 only")
    if n == 1:
        return 1
    return sum(
        1 for m in enumerate_shuffle_trees(alphabet, n) if is_normal(m, rules)
    )


# --- overlaps and confluence -------------------------------------------


def overlaps(
    r1: RewriteRule, r2: RewriteRule, max_arity: int
) -> list[tuple[object, ShuffleElement]]:
    """Minimal monomials where the two lhs's overlap, with S-elements.

    A reported monomial carries a pair of occurrences that share at least
    one vertex and jointly cover every internal vertex; the S-element is
    the difference of the two one-step reductions.  Results are sorted by
    the overlap monomial, descending.
    """
    if max_arity > 7:
        raise ShuffleError("max_arity <= 7 required")
    a1, a2 = arity(r1.lhs), arity(r2.lhs)
    alphabet = sorted(
        {(s, 2) for s in symbols_of(r1.lhs) | symbols_of(r2.lhs)}
    )
    same = r1.lhs == r2.lhs and r1.rhs == r2.rhs
    found: list[tuple[object, ShuffleElement]] = []
    for n in range(2, min(max_arity, a1 + a2 - 1) + 1):
        for m in enumerate_shuffle_trees(alphabet, n):
            e1s = all_embeddings(m, r1.lhs)
            e2s = e1s if same else all_embeddings(m, r2.lhs)
            all_vertices = frozenset(_internal_paths(m))
            pairs = (
                itertools.combinations(e1s, 2)
                if same
                else itertools.product(e1s, e2s)
            )
            for e1, e2 in pairs:
                if e1.vertices.isdisjoint(e2.vertices):
                    continue
                if e1.vertices | e2.vertices != all_vertices:
                    continue
                s_elem = rewrite_at(m, e1, r1) - rewrite_at(m, e2, r2)
                found.append((m, s_elem))
    found.sort(key=lambda pair: monomial_key(pair[0]), reverse=True)
    return found


def _internal_paths(m, base: tuple[int, ...] = ()) -> list[tuple[int, ...]]:
    if is_leaf(m):
        return []
    out = [base]
    for i, c in enumerate(m[1:]):
        out.extend(_internal_paths(c, base + (i,)))
    return out


@dataclass(frozen=True)
class ConfluenceReport:
    passed: bool
    overlap_count: int
    failures: tuple  # (overlap monomial, nonzero normal form) pairs

    def __str__(self) -> str:
        if self.passed:
            return f"PASS: {self.overlap_count} overlap(s), all S-elements reduce to zero"
        lines = [f"FAIL: {len(self.failures)} of {self.overlap_count} overlap(s) do not resolve"]
        for m, nf in self.failures:
            lines.append(f"  at {print_monomial(m)}: {nf}")
        return "\n".join(lines)


def check_confluence(rules: list[RewriteRule], max_arity: int) -> ConfluenceReport:
    """Reduce every overlap S-element; PASS iff all vanish."""
    count = 0
    failures = []
    for i, r1 in enumerate(rules):
        for r2 in rules[i:]:
            for m, s_elem in overlaps(r1, r2, max_arity):
                count += 1
                nf = normal_form(s_elem, rules)
                if nf:
                    failures.append((m, nf))
    return ConfluenceReport(not failures, count, tuple(failures))


# --- rule files ---------------------------------------------------------
#
# One equation per line, '#' comments:
#   x(x(1 2) 3) = x(1 x(2 3)) + x(x(1 3) 2)
# Terms may carry rational coefficients: 2*x(...), -1/2 * x(...).


def _parse_coefficient(sc: _Scanner, sign: int) -> Fraction:
    num = sc.match(_INT_RE)
    if num is None:
        return Fraction(sign)
    value = Fraction(int(num))
    if sc.peek() == "/":
        sc.take("/")
        den = sc.match(_INT_RE)
        if den is None:
            raise ParseError("expected denominator", sc.pos)
        value /= int(den)
    if sc.peek() == "*":
        sc.take("*")
    return sign * value


def parse_element(text: str) -> ShuffleElement:
    """Parse a signed sum of monomials with optional rational coefficients."""
    sc = _Scanner(text)
    terms: dict = {}
    sign = 1
    if sc.peek() == "-":
        sc.take("-")
        sign = -1
    elif sc.peek() == "+":
        sc.take("+")
    while True:
        coeff = _parse_coefficient(sc, sign)
        m = _parse_monomial_from(sc)
        validate_monomial(m)
        terms[m] = terms.get(m, 0) + coeff
        if sc.at_end():
            break
        nxt = sc.peek()
        if nxt == "+":
            sc.take("+")
            sign = 1
        elif nxt == "-":
            sc.take("-")
            sign = -1
        else:
            raise ParseError(f"expected '+' or '-', got {nxt!r}", sc.pos)
    return ShuffleElement(terms)


def parse_rules(text: str) -> list[RewriteRule]:
    """Parse a rule file body into oriented rewrite rules."""
    rules = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ShuffleError(f"rule line {lineno}: expected 'LHS = RHS'")
        lhs_text, rhs_text = line.split("=", 1)
        equation = parse_element(lhs_text) - parse_element(rhs_text)
        if not equation:
            raise ShuffleError(f"rule line {lineno}: equation is trivially zero")
        rules.append(orient(equation))
    return rules


def rules_alphabet(rules: list[RewriteRule]) -> list[tuple[str, int]]:
    """Binary alphabet spanned by the rules' monomials."""
    syms: set[str] = set()
    for r in rules:
        syms |= symbols_of(r.lhs)
        for m in r.rhs.terms:
            syms |= symbols_of(m)
    return [(s, 2) for s in sorted(syms)]
