import itertools

import pytest

from specgan import grammar as g
from specgan.formula import Formula, atom, finally_, globally, land, lnot, nxt, parse_prefix, until
from specgan.trace import NonLTLGrammarError, Trace, all_lassos, evaluate, make_trace

LTL = g.ltl_grammar()


def test_mutual_exclusion_alternating():
    phi, _ = parse_prefix(["G", "!", "&", "a", "b"], LTL)
    t = make_trace([], [{"a"}, {"b"}])
    assert evaluate(phi, t) is True


def test_mutual_exclusion_empty_trace():
    phi, _ = parse_prefix(["G", "!", "&", "a", "b"], LTL)
    assert evaluate(phi, make_trace([], [set()])) is True


def test_contradiction_false_everywhere():
    phi = land(finally_(atom("a")), globally(lnot(atom("a"))))
    for t in all_lassos(["a"], 2, 2):
        assert evaluate(phi, t) is False


def test_until_semantics():
    phi = until(atom("a"), atom("b"))
    assert evaluate(phi, make_trace([{"a"}, {"a"}], [{"b"}])) is True
    assert evaluate(phi, make_trace([{"a"}], [{"a"}])) is False
    assert evaluate(phi, make_trace([], [{"b"}])) is True
    # until requires left to hold strictly before the witness
    assert evaluate(phi, make_trace([set(), {"b"}], [set()])) is False


def test_next_wraps_into_period():
    phi = nxt(nxt(nxt(atom("a"))))
    # prefix of length 2, period of length 1: position 3 is the period state
    assert evaluate(phi, make_trace([set(), set()], [{"a"}])) is True
    assert evaluate(phi, make_trace([set(), {"a"}], [set()])) is False


def test_globally_eventually():
    # G F a: a occurs infinitely often
    phi, _ = parse_prefix(["G", "F", "a"], LTL)
    assert evaluate(phi, make_trace([], [{"a"}, set()])) is True
    assert evaluate(phi, make_trace([{"a"}], [set()])) is False


def test_weak_until():
    phi, _ = parse_prefix(["W", "a", "b"], LTL)
    # G a satisfies a W b even though b never occurs
    assert evaluate(phi, make_trace([], [{"a"}])) is True
    assert evaluate(phi, make_trace([], [set()])) is False


def test_release():
    phi, _ = parse_prefix(["R", "a", "b"], LTL)
    # b must hold up to and including the releasing a
    assert evaluate(phi, make_trace([{"b"}, {"a", "b"}], [set()])) is True
    assert evaluate(phi, make_trace([{"b"}, {"a"}], [set()])) is False
    assert evaluate(phi, make_trace([], [{"b"}])) is True


def test_boolean_connectives():
    t = make_trace([], [{"a"}])
    cases = {
        ("->", "a", "b"): False,
        ("->", "b", "a"): True,
        ("<->", "a", "b"): False,
        ("<->", "a", "a"): True,
        ("|", "b", "a"): True,
    }
    for (op, l, r), want in cases.items():
        phi = Formula(op, (atom(l), atom(r)))
        assert evaluate(phi, t) is want
    assert evaluate(Formula(g.TRUE), t) is True
    assert evaluate(Formula(g.FALSE), t) is False


def test_math_tokens_rejected():
    phi, _ = parse_prefix(["*", "4", "x"], g.math_grammar())
    with pytest.raises(NonLTLGrammarError):
        evaluate(phi, make_trace([], [set()]))


def test_period_must_be_nonempty():
    with pytest.raises(ValueError):
        Trace((), ())


def test_lasso_unrolling_equivalence():
    # truth on the lasso equals truth on a longer unrolled lasso
    import random

    rng = random.Random(3)
    leaves = ["a", "b", g.TRUE]
    unary = [g.NOT, g.NEXT, g.GLOBALLY, g.FINALLY]
    binary = [g.AND, g.OR, g.UNTIL, g.RELEASE, g.WEAK_UNTIL, g.IMPLIES]

    def rand_formula(depth):
        r = rng.random()
        if depth == 0 or r < 0.3:
            return Formula(rng.choice(leaves))
        if r < 0.6:
            return Formula(rng.choice(unary), (rand_formula(depth - 1),))
        return Formula(rng.choice(binary), (rand_formula(depth - 1), rand_formula(depth - 1)))

    letters = [frozenset(), frozenset({"a"}), frozenset({"b"}), frozenset({"a", "b"})]
    for _ in range(200):
        phi = rand_formula(3)
        prefix = tuple(rng.choice(letters) for _ in range(rng.randint(0, 2)))
        period = tuple(rng.choice(letters) for _ in range(rng.randint(1, 3)))
        t = Trace(prefix, period)
        # unroll one extra lap of the period into the prefix
        t2 = Trace(prefix + period, period)
        t3 = Trace(prefix + period, period + period)
        assert evaluate(phi, t) == evaluate(phi, t2) == evaluate(phi, t3)
