"""Negation normal form and the temporal relaxation transform."""

from __future__ import annotations

from . import grammar as g
from .formula import FALSE, TRUE, Formula

NNF_LITERAL_BASES = (g.TRUE, g.FALSE)


class NotInNNFError(ValueError):
    pass


def is_literal(phi: Formula) -> bool:
    if not phi.children:
        return True
    return phi.token == g.NOT and not phi.children[0].children


def to_nnf(phi: Formula) -> Formula:
    """Rewrite into negation normal form.

    The result uses only &, |, U, R, X plus literals; G, F, W, -> and <-> are
    expanded away (G a == 0 R a, F a == 1 U a, a W b == (a U b) | G a) and
    negation is pushed down to atoms and constants.
    """
    return _nnf(phi, False)


def _nnf(phi: Formula, neg: bool) -> Formula:
    tok = phi.token
    kids = phi.children
    if not kids:
        if tok == g.TRUE:
            return FALSE if neg else TRUE
        if tok == g.FALSE:
            return TRUE if neg else FALSE
        return Formula(g.NOT, (phi,)) if neg else phi
    if tok == g.NOT:
        return _nnf(kids[0], not neg)
    if tok == g.AND:
        op = g.OR if neg else g.AND
        return Formula(op, (_nnf(kids[0], neg), _nnf(kids[1], neg)))
    if tok == g.OR:
        op = g.AND if neg else g.OR
        return Formula(op, (_nnf(kids[0], neg), _nnf(kids[1], neg)))
    if tok == g.IMPLIES:
        # a -> b == !a | b
        if neg:
            return Formula(g.AND, (_nnf(kids[0], False), _nnf(kids[1], True)))
        return Formula(g.OR, (_nnf(kids[0], True), _nnf(kids[1], False)))
    if tok == g.EQUIV:
        # a <-> b == (a & b) | (!a & !b); negated: (a & !b) | (!a & b)
        a_pos, a_neg = _nnf(kids[0], False), _nnf(kids[0], True)
        b_pos, b_neg = _nnf(kids[1], False), _nnf(kids[1], True)
        if neg:
            return Formula(g.OR, (Formula(g.AND, (a_pos, b_neg)), Formula(g.AND, (a_neg, b_pos))))
        return Formula(g.OR, (Formula(g.AND, (a_pos, b_pos)), Formula(g.AND, (a_neg, b_neg))))
    if tok == g.NEXT:
        return Formula(g.NEXT, (_nnf(kids[0], neg),))
    if tok == g.UNTIL:
        op = g.RELEASE if neg else g.UNTIL
        return Formula(op, (_nnf(kids[0], neg), _nnf(kids[1], neg)))
    if tok == g.RELEASE:
        op = g.UNTIL if neg else g.RELEASE
        return Formula(op, (_nnf(kids[0], neg), _nnf(kids[1], neg)))
    if tok == g.FINALLY:
        # F a == 1 U a; !F a == 0 R !a
        if neg:
            return Formula(g.RELEASE, (FALSE, _nnf(kids[0], True)))
        return Formula(g.UNTIL, (TRUE, _nnf(kids[0], False)))
    if tok == g.GLOBALLY:
        # G a == 0 R a; !G a == 1 U !a
        if neg:
            return Formula(g.UNTIL, (TRUE, _nnf(kids[0], True)))
        return Formula(g.RELEASE, (FALSE, _nnf(kids[0], False)))
    if tok == g.WEAK_UNTIL:
        # a W b == (a U b) | G a; negated: (!a R !b) & F !a
        a_pos, b_pos = _nnf(kids[0], False), _nnf(kids[1], False)
        a_neg, b_neg = _nnf(kids[0], True), _nnf(kids[1], True)
        if neg:
            return Formula(
                g.AND,
                (Formula(g.RELEASE, (a_neg, b_neg)), Formula(g.UNTIL, (TRUE, a_neg))),
            )
        return Formula(
            g.OR,
            (Formula(g.UNTIL, (a_pos, b_pos)), Formula(g.RELEASE, (FALSE, a_pos))),
        )
    raise NotInNNFError(f"operator {tok!r} has no NNF rule")


_REL_BOOLEAN = {g.AND, g.OR, g.IMPLIES, g.EQUIV}


def temporal_relaxation(phi: Formula) -> Formula:
    """Strip temporal structure, yielding a propositional over-approximation.

    Rules: boolean connectives distribute; U and W become disjunction of the
    relaxed operands; a R b keeps only the relaxed b; X and F collapse to
    true; G a keeps a. The input must have negations only on atoms and
    constants. Because the G rule keeps its operand un-relaxed, the transform
    is re-applied until no temporal operator remains (only nested temporal
    operators under G trigger another pass).
    """
    out = _relax(phi)
    while _has_temporal(out):
        out = _relax(out)
    return out


def _relax(phi: Formula) -> Formula:
    tok = phi.token
    if is_literal(phi):
        return phi
    if tok == g.NOT:
        raise NotInNNFError("negation guards a non-atom; convert to NNF first")
    if tok in _REL_BOOLEAN:
        return Formula(tok, tuple(_relax(c) for c in phi.children))
    if tok in (g.UNTIL, g.WEAK_UNTIL):
        return Formula(g.OR, (_relax(phi.children[0]), _relax(phi.children[1])))
    if tok == g.RELEASE:
        return _relax(phi.children[1])
    if tok in (g.NEXT, g.FINALLY):
        return TRUE
    if tok == g.GLOBALLY:
        return phi.children[0]
    raise NotInNNFError(f"operator {tok!r} has no relaxation rule")


def _has_temporal(phi: Formula) -> bool:
    if phi.token in g.TEMPORAL_TOKENS:
        return True
    return any(_has_temporal(c) for c in phi.children)
