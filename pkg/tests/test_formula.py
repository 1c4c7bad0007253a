import pytest

from specgan import grammar as g
from specgan.formula import (
    Formula,
    IncompleteTreeError,
    UnknownTokenError,
    atom,
    finally_,
    formula_atoms,
    globally,
    land,
    lnot,
    parse_prefix,
    print_prefix,
    subformulas,
    tree_size,
    until,
)

LTL = g.ltl_grammar()
MATH = g.math_grammar()


def test_parse_until_not():
    phi, leftover = parse_prefix(["U", "!", "a", "b"], LTL)
    assert phi == until(lnot(atom("a")), atom("b"))
    assert leftover == 0


def test_parse_leftover():
    phi, leftover = parse_prefix(["a", "b"], LTL)
    assert phi == atom("a")
    assert leftover == 1


def test_parse_incomplete():
    # binary & at the root needs two subtrees; G!(& p0 p1) only gives one
    with pytest.raises(IncompleteTreeError):
        parse_prefix(["&", "G", "!", "&", "a", "b"], LTL)


def test_parse_unknown_token():
    with pytest.raises(UnknownTokenError) as ei:
        parse_prefix(["&", "a", "zz"], LTL)
    assert ei.value.position == 2


def test_pad_never_parses():
    with pytest.raises(UnknownTokenError):
        parse_prefix([g.PAD_TOKEN], LTL)


def test_print_prefix():
    assert print_prefix(until(lnot(atom("a")), atom("b"))) == ["U", "!", "a", "b"]
    assert print_prefix(atom("a")) == ["a"]
    phi = land(finally_(atom("a")), globally(lnot(atom("a"))))
    assert print_prefix(phi) == ["&", "F", "a", "G", "!", "a"]


def test_roundtrip_random():
    import random

    rng = random.Random(7)
    ops = [(t, LTL.arity(t)) for t in LTL.tokens if LTL.kind(t) in (g.KIND_UNARY, g.KIND_BINARY)]
    leaves = LTL.atoms() + [g.TRUE, g.FALSE]

    def rand_formula(budget):
        if budget <= 1 or rng.random() < 0.3:
            return Formula(rng.choice(leaves))
        tok, arity = rng.choice(ops)
        if arity == 1:
            return Formula(tok, (rand_formula(budget - 1),))
        half = (budget - 1) // 2
        return Formula(tok, (rand_formula(half), rand_formula(budget - 1 - half)))

    for _ in range(300):
        phi = rand_formula(rng.randint(1, 25))
        seq = print_prefix(phi)
        back, leftover = parse_prefix(seq, LTL)
        assert leftover == 0
        assert back == phi
        assert tree_size(phi) == len(seq)


def test_math_digit_runs():
    phi, leftover = parse_prefix(["*", "4", "2", "x"], MATH)
    assert leftover == 0
    assert phi == Formula("*", (Formula("42", number=True), Formula("x")))
    assert tree_size(phi) == 4
    assert print_prefix(phi) == ["*", "4", "2", "x"]


def test_math_unary():
    phi, leftover = parse_prefix(["tanh", "1", "2", "2"], MATH)
    assert leftover == 0
    assert phi.token == "tanh"
    assert phi.children[0].token == "122"


def test_formula_atoms():
    phi, _ = parse_prefix(["&", "F", "a", "U", "b", "1"], LTL)
    assert formula_atoms(phi) == {"a", "b"}


def test_subformulas_dedup():
    phi = land(atom("a"), atom("a"))
    subs = subformulas(phi)
    assert len(subs) == 2
    assert subs[-1] == phi


def test_grammar_file_roundtrip(tmp_path):
    path = tmp_path / "ltl.grammar"
    g.save_grammar(LTL, path)
    back = g.load_grammar(path)
    assert back.tokens == LTL.tokens
    assert all(back.arity(t) == LTL.arity(t) for t in LTL.tokens)


def test_grammar_invariants():
    with pytest.raises(g.GrammarError):
        g.Grammar("bad", [("a", 0, g.KIND_ATOM), ("a", 0, g.KIND_ATOM), (g.PAD_TOKEN, 0, g.KIND_PAD)])
    with pytest.raises(g.GrammarError):
        g.Grammar("bad", [("f", 3, g.KIND_UNARY), (g.PAD_TOKEN, 0, g.KIND_PAD)])
    with pytest.raises(g.GrammarError):
        g.Grammar("bad", [("a", 0, g.KIND_ATOM)])
