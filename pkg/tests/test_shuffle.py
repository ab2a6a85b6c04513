import math
import random
from fractions import Fraction

import pytest

from freeop.dims import builtin_operad, free_product_dims
from freeop.shuffle import (
    ParseError,
    RewriteRule,
    ShuffleConditionError,
    ShuffleElement,
    all_embeddings,
    arity,
    check_confluence,
    compare,
    count_normal_monomials,
    enumerate_shuffle_trees,
    find_divisor,
    leaves,
    normal_form,
    orient,
    parse_element,
    parse_monomial,
    parse_rules,
    print_monomial,
    rewrite_at,
    rules_alphabet,
    validate_monomial,
)

XY = [("x", 2), ("y", 2)]

JACOBI = parse_rules("x(x(1 2) 3) = x(1 x(2 3)) + x(x(1 3) 2)")
LIE_ADM = parse_rules(
    "x(x(1 2) 3) = x(y(1 2) 3) + y(x(1 2) 3) - y(y(1 2) 3) - y(1 x(2 3))"
    " + y(1 y(2 3)) + x(1 x(2 3)) - x(1 y(2 3)) - x(y(1 3) 2) + x(x(1 3) 2)"
    " + y(y(1 3) 2) - y(x(1 3) 2)"
)


# --- parsing -----------------------------------------------------------


def test_parse_and_print_round_trip():
    for text in ("x(x(1 2) 3)", "x(1 2)", "y(x(1 4) x(2 3))", "x(1 x(2 x(3 4)))"):
        m = parse_monomial(text)
        assert print_monomial(m) == text
        assert parse_monomial(print_monomial(m)) == m


def test_parse_reports_shuffle_violation():
    with pytest.raises(ShuffleConditionError):
        parse_monomial("x(x(2 3) 1)")
    with pytest.raises(ShuffleConditionError):
        parse_monomial("x(1 x(2 2))")


def test_parse_reports_syntax_error_with_position():
    with pytest.raises(ParseError) as info:
        parse_monomial("x(1 2")
    assert info.value.position == 5
    with pytest.raises(ParseError):
        parse_monomial("x(1 2) junk")


def test_round_trip_on_enumerated_monomials():
    for m in enumerate_shuffle_trees(XY, 4):
        assert parse_monomial(print_monomial(m)) == m


# --- enumeration -------------------------------------------------------


def test_enumeration_counts():
    assert list(enumerate_shuffle_trees([("x", 2)], 2)) == [("x", 1, 2)]
    assert len(list(enumerate_shuffle_trees(XY, 2))) == 2
    assert len(list(enumerate_shuffle_trees(XY, 3))) == 12


def test_enumeration_matches_com_anticom_dims():
    table = free_product_dims(
        builtin_operad("com"), builtin_operad("anti-com"), 6
    )
    for n in range(2, 7):
        monos = list(enumerate_shuffle_trees(XY, n))
        assert len(monos) == table.total[n]
        assert len(set(monos)) == len(monos)


def test_single_generator_count_is_double_factorial():
    com = builtin_operad("com")
    for n in range(2, 7):
        count = sum(1 for _ in enumerate_shuffle_trees([("x", 2)], n))
        assert count == com.dim(n)


def test_enumerated_monomials_satisfy_shuffle_condition():
    for n in range(2, 6):
        for m in enumerate_shuffle_trees(XY, n):
            validate_monomial(m)
            assert sorted(leaves(m)) == list(range(1, n + 1))


def test_higher_arity_generators_rejected():
    with pytest.raises(Exception):
        list(enumerate_shuffle_trees([("t", 3)], 3))


# --- monomial order ----------------------------------------------------


def test_leading_monomial_comparisons():
    top = parse_monomial("x(x(1 2) 3)")
    assert compare(top, parse_monomial("x(x(1 3) 2)")) == 1
    assert compare(top, parse_monomial("x(1 x(2 3))")) == 1
    assert compare(top, parse_monomial("y(y(1 3) 2)")) == 1
    assert compare(top, top) == 0
    assert LIE_ADM[0].lhs == top
    assert JACOBI[0].lhs == top


def test_order_is_total_and_consistent():
    monos = list(enumerate_shuffle_trees(XY, 3))
    for a in monos:
        for b in monos:
            c = compare(a, b)
            assert c == -compare(b, a)
            assert (c == 0) == (a == b)
    # transitivity via sorted consistency
    import functools

    key = functools.cmp_to_key(compare)
    ordered = sorted(monos, key=key)
    for a, b in zip(ordered, ordered[1:]):
        assert compare(a, b) == -1


def _insert_at_leaf(ctx, label, sub):
    """Plug sub into leaf `label` of ctx, relabeling to stay a shuffle tree."""
    k = arity(sub)

    def shift_ctx(node):
        if isinstance(node, int):
            return node + k - 1 if node > label else node
        return (node[0], *(shift_ctx(c) for c in node[1:]))

    def shift_sub(node):
        if isinstance(node, int):
            return node + label - 1
        return (node[0], *(shift_sub(c) for c in node[1:]))

    def plug(node):
        if isinstance(node, int):
            return shift_sub(sub) if node == label else node
        return (node[0], *(plug(c) for c in node[1:]))

    return plug(shift_ctx(ctx))


def test_order_admissibility_spot_checks():
    rng = random.Random(99)
    monos3 = list(enumerate_shuffle_trees(XY, 3))
    ctxs = list(enumerate_shuffle_trees(XY, 3))
    for _ in range(300):
        a, b = rng.sample(monos3, 2)
        ctx = rng.choice(ctxs)
        label = rng.randint(1, 3)
        big_a = _insert_at_leaf(ctx, label, a)
        big_b = _insert_at_leaf(ctx, label, b)
        validate_monomial(big_a)
        validate_monomial(big_b)
        assert compare(big_a, big_b) == compare(a, b)


# --- divisor search ----------------------------------------------------


def test_find_divisor_examples():
    lhs = parse_monomial("x(x(1 2) 3)")
    m = parse_monomial("x(x(x(1 2) 3) 4)")
    emb = find_divisor(m, lhs)
    assert emb is not None and emb.path == ()
    assert find_divisor(parse_monomial("x(1 x(2 3))"), lhs) is None
    self_emb = find_divisor(lhs, lhs)
    assert self_emb is not None and self_emb.slots == {1: 1, 2: 2, 3: 3}


def test_divisor_respects_order_pattern():
    lhs = parse_monomial("x(x(1 2) 3)")
    # structurally identical but the hanging minima rank differently
    assert find_divisor(parse_monomial("x(x(1 3) 2)"), lhs) is None
    assert find_divisor(parse_monomial("x(x(1 4) x(2 3))"), lhs) is None


def test_embeddings_inside_context():
    lhs = parse_monomial("x(x(1 2) 3)")
    m = parse_monomial("x(x(x(1 2) 3) 4)")
    embs = all_embeddings(m, lhs)
    assert len(embs) == 2
    assert embs[0].path == ()  # leftmost-outermost first
    assert embs[1].path == (0,)


# --- rewriting ---------------------------------------------------------


def test_jacobi_normal_form_matches_hand_reduction():
    big = parse_monomial("x(x(x(1 2) 3) 4)")
    expected = parse_element(
        "x(x(x(1 4) 3) 2) + x(x(1 x(3 4)) 2) + x(x(1 3) x(2 4))"
        " + x(x(1 4) x(2 3)) + x(1 x(x(2 4) 3)) + x(1 x(2 x(3 4)))"
    )
    nf = normal_form(ShuffleElement.from_monomial(big), JACOBI)
    assert nf == expected


@pytest.mark.parametrize("rules", [JACOBI, LIE_ADM], ids=["jacobi", "lie-adm"])
def test_two_reduction_paths_agree(rules):
    big = parse_monomial("x(x(x(1 2) 3) 4)")
    embs = all_embeddings(big, rules[0].lhs)
    assert len(embs) == 2
    results = [
        normal_form(rewrite_at(big, emb, rules[0]), rules) for emb in embs
    ]
    assert results[0] == results[1]
    assert results[0]


def test_normal_element_is_unchanged():
    e = parse_element("x(1 x(2 3)) - 2*x(x(1 3) 2)")
    assert normal_form(e, JACOBI) == e


def test_strategy_independence_under_confluence():
    rng = random.Random(17)
    monos = list(enumerate_shuffle_trees(XY, 4))
    for _ in range(20):
        e = ShuffleElement(
            {m: Fraction(rng.randint(-2, 2)) for m in rng.sample(monos, 5)}
        )
        reference = normal_form(e, LIE_ADM)
        assert normal_form(e, LIE_ADM, rng=rng) == reference


def test_rewrite_steps_strictly_decrease():
    big = parse_monomial("x(x(x(1 2) 3) 4)")
    for emb in all_embeddings(big, JACOBI[0].lhs):
        for m in rewrite_at(big, emb, JACOBI[0]).terms:
            assert compare(m, big) == -1


# --- overlaps and confluence -------------------------------------------


def test_jacobi_overlap_is_unique():
    from freeop.shuffle import overlaps

    found = overlaps(JACOBI[0], JACOBI[0], 4)
    assert len(found) == 1
    m, s_elem = found[0]
    assert print_monomial(m) == "x(x(x(1 2) 3) 4)"
    assert s_elem  # one-step results differ before full reduction


def test_disjoint_rules_have_no_overlap():
    from freeop.shuffle import overlaps

    r1 = parse_rules("x(x(1 2) 3) = x(1 x(2 3))")[0]
    r2 = parse_rules("y(y(1 2) 3) = y(1 y(2 3))")[0]
    assert overlaps(r1, r2, 4) == []


@pytest.mark.parametrize("rules", [JACOBI, LIE_ADM], ids=["jacobi", "lie-adm"])
def test_confluence_passes(rules):
    report = check_confluence(rules, 5)
    assert report.passed
    assert report.overlap_count == 1


def test_perturbed_system_fails():
    bad = parse_rules("x(x(1 2) 3) = x(1 x(2 3)) + 2*x(x(1 3) 2)")
    report = check_confluence(bad, 5)
    assert not report.passed
    assert report.failures
    for _, nf in report.failures:
        assert nf


# --- normal monomial counting ------------------------------------------


def test_normal_count_jacobi_is_factorial():
    for n in (3, 4, 5):
        assert count_normal_monomials([("x", 2)], JACOBI, n) == math.factorial(n - 1)


def test_normal_count_lie_adm_matches_free_product():
    table = free_product_dims(builtin_operad("lie"), builtin_operad("com"), 6)
    for n in range(2, 7):
        assert count_normal_monomials(XY, LIE_ADM, n) == table.total[n]


# --- rule parsing ------------------------------------------------------


def test_orient_puts_leading_monomial_left():
    e = parse_element("x(1 x(2 3)) - x(x(1 2) 3) + x(x(1 3) 2)")
    rule = orient(e)
    assert rule.lhs == parse_monomial("x(x(1 2) 3)")
    assert rule.rhs == parse_element("x(1 x(2 3)) + x(x(1 3) 2)")


def test_parse_rules_with_coefficients_and_comments():
    rules = parse_rules(
        """
        # comment line
        x(x(1 2) 3) = 1/2 * x(1 x(2 3)) + 1/2 * x(x(1 3) 2)  # trailing
        """
    )
    assert len(rules) == 1
    assert rules[0].rhs.terms[parse_monomial("x(1 x(2 3))")] == Fraction(1, 2)


def test_rules_alphabet():
    assert rules_alphabet(LIE_ADM) == [("x", 2), ("y", 2)]
    assert rules_alphabet(JACOBI) == [("x", 2)]


def test_element_validation():
    with pytest.raises(Exception):
        ShuffleElement({parse_monomial("x(1 2)"): 1, parse_monomial("x(x(1 2) 3)"): 1})
    assert not ShuffleElement({parse_monomial("x(1 2)"): 0})
