import pytest

from specgan import grammar as g
from specgan.formula import (
    FALSE,
    TRUE,
    Formula,
    atom,
    finally_,
    globally,
    land,
    lnot,
    lor,
    nxt,
    parse_prefix,
    release,
    until,
)
from specgan.trace import all_lassos, evaluate
from specgan.transforms import NotInNNFError, temporal_relaxation, to_nnf

LTL = g.ltl_grammar()


def nnf_ok(phi):
    """Only &, |, U, R, X above literal level; ! only on atoms/constants."""
    if not phi.children:
        return True
    if phi.token == g.NOT:
        return not phi.children[0].children
    if phi.token not in (g.AND, g.OR, g.UNTIL, g.RELEASE, g.NEXT):
        return False
    return all(nnf_ok(c) for c in phi.children)


def test_nnf_demorgan_next():
    phi = lnot(land(atom("a"), nxt(atom("b"))))
    assert to_nnf(phi) == lor(lnot(atom("a")), nxt(lnot(atom("b"))))


def test_nnf_until_release_dual():
    phi = lnot(until(atom("a"), atom("b")))
    assert to_nnf(phi) == release(lnot(atom("a")), lnot(atom("b")))


def test_nnf_not_globally_finally():
    phi = lnot(globally(finally_(atom("a"))))
    assert to_nnf(phi) == until(TRUE, release(FALSE, lnot(atom("a"))))


def test_nnf_equivalence_random():
    import random

    rng = random.Random(11)
    leaves = ["a", "b", "c", g.TRUE, g.FALSE]
    unary = [g.NOT, g.NEXT, g.GLOBALLY, g.FINALLY]
    binary = [g.AND, g.OR, g.IMPLIES, g.EQUIV, g.UNTIL, g.RELEASE, g.WEAK_UNTIL]

    def rand_formula(size):
        if size <= 1:
            return Formula(rng.choice(leaves))
        if size == 2 or rng.random() < 0.4:
            return Formula(rng.choice(unary), (rand_formula(size - 1),))
        k = rng.randint(1, size - 2)
        return Formula(rng.choice(binary), (rand_formula(k), rand_formula(size - 1 - k)))

    lassos = list(all_lassos(["a", "b", "c"], 2, 2))
    for _ in range(60):
        phi = rand_formula(rng.randint(1, 10))
        psi = to_nnf(phi)
        assert nnf_ok(psi)
        for t in lassos:
            assert evaluate(phi, t) == evaluate(psi, t)


def test_relaxation_boolean_unsat_example():
    # (a|b) & !b & G!a relaxes to (a|b) & !b & !a
    phi, _ = parse_prefix(["&", "&", "|", "a", "b", "!", "b", "G", "!", "a"], LTL)
    rel = temporal_relaxation(phi)
    want, _ = parse_prefix(["&", "&", "|", "a", "b", "!", "b", "!", "a"], LTL)
    assert rel == want


def test_relaxation_temporal_unsat_example():
    # (!a U b) & G!b & Fa relaxes to (!a|b) & !b & 1
    phi, _ = parse_prefix(["&", "&", "U", "!", "a", "b", "G", "!", "b", "F", "a"], LTL)
    rel = temporal_relaxation(phi)
    want, _ = parse_prefix(["&", "&", "|", "!", "a", "b", "!", "b", "1"], LTL)
    assert rel == want


def test_relaxation_next_is_true():
    for phi in (nxt(atom("a")), nxt(globally(land(atom("a"), atom("b"))))):
        assert temporal_relaxation(phi) == TRUE


def test_relaxation_propositional_output():
    import random

    rng = random.Random(5)
    leaves = ["a", "b", g.TRUE]
    for _ in range(200):

        def rand_nnf(size):
            if size <= 1:
                tok = rng.choice(leaves)
                return Formula(tok) if rng.random() < 0.6 or tok == g.TRUE else lnot(Formula(tok))
            if rng.random() < 0.35:
                return Formula(rng.choice([g.NEXT, g.GLOBALLY, g.FINALLY]), (rand_nnf(size - 1),))
            k = rng.randint(1, max(1, size - 2))
            op = rng.choice([g.AND, g.OR, g.UNTIL, g.RELEASE, g.WEAK_UNTIL, g.IMPLIES])
            return Formula(op, (rand_nnf(k), rand_nnf(size - 1 - k)))

        rel = temporal_relaxation(rand_nnf(rng.randint(1, 12)))
        tokens = set()
        stack = [rel]
        while stack:
            n = stack.pop()
            tokens.add(n.token)
            stack.extend(n.children)
        assert not (tokens & g.TEMPORAL_TOKENS)


def test_relaxation_nested_globally_reapplies():
    # G(X a) keeps its operand verbatim, so a second pass strips the X
    phi = globally(nxt(atom("a")))
    assert temporal_relaxation(phi) == TRUE
    phi2 = globally(land(atom("a"), finally_(atom("b"))))
    assert temporal_relaxation(phi2) == land(atom("a"), TRUE)


def test_relaxation_rejects_negated_compound():
    with pytest.raises(NotInNNFError):
        temporal_relaxation(lnot(land(atom("a"), atom("b"))))
