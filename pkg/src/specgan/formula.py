"""Operator trees and their prefix token encoding."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import grammar as g


class ParseError(ValueError):
    pass


class UnknownTokenError(ParseError):
    def __init__(self, token, position):
        super().__init__(f"token {token!r} at position {position} is not parseable")
        self.token = token
        self.position = position


class IncompleteTreeError(ParseError):
    def __init__(self, position):
        super().__init__(f"ran out of tokens mid-tree at position {position}")
        self.position = position


@dataclass(frozen=True)
class Formula:
    """A node of a prefix-encoded operator tree.

    ``token`` is a grammar token, except for integer leaves of digit grammars
    where it holds the full digit run (``number=True``).
    """

    token: str
    children: tuple["Formula", ...] = ()
    number: bool = False

    def __str__(self):
        return " ".join(print_prefix(self))


def tree_size(phi: Formula) -> int:
    """Node count; equals the length of the prefix token sequence."""
    n = len(phi.token) if phi.number else 1
    for c in phi.children:
        n += tree_size(c)
    return n


def formula_atoms(phi: Formula) -> set[str]:
    """Leaf tokens that are neither constants nor numbers."""
    out = set()
    stack = [phi]
    while stack:
        node = stack.pop()
        if node.children:
            stack.extend(node.children)
        elif not node.number and node.token not in (g.TRUE, g.FALSE):
            out.add(node.token)
    return out


def subformulas(phi: Formula) -> list[Formula]:
    """Unique subformulas in post order (children before parents)."""
    seen = {}
    order = []

    def visit(node):
        if node in seen:
            return
        for c in node.children:
            visit(c)
        seen[node] = True
        order.append(node)

    visit(phi)
    return order


def parse_prefix(tokens, grammar: g.Grammar) -> tuple[Formula, int]:
    """Parse one prefix tree from the front of ``tokens``.

    Returns the tree and the number of leftover tokens. A sequence is "fully
    correct" iff parsing succeeds and no tokens are left over. The pad token
    never parses.
    """
    tokens = list(tokens)
    pos = 0

    def parse_node():
        nonlocal pos
        if pos >= len(tokens):
            raise IncompleteTreeError(pos)
        tok = tokens[pos]
        if tok not in grammar or grammar.kind(tok) == g.KIND_PAD:
            raise UnknownTokenError(tok, pos)
        if grammar.kind(tok) == g.KIND_DIGIT:
            run = tok
            pos += 1
            while pos < len(tokens) and tokens[pos] in grammar and grammar.kind(tokens[pos]) == g.KIND_DIGIT:
                run += tokens[pos]
                pos += 1
            return Formula(run, (), number=True)
        pos += 1
        kids = tuple(parse_node() for _ in range(grammar.arity(tok)))
        return Formula(tok, kids)

    phi = parse_node()
    return phi, len(tokens) - pos


def print_prefix(phi: Formula) -> list[str]:
    """Inverse of parse_prefix: the prefix token sequence of the tree."""
    out = []
    stack = [phi]
    while stack:
        node = stack.pop()
        if node.number:
            out.extend(node.token)
        else:
            out.append(node.token)
        stack.extend(reversed(node.children))
    return out


# Convenience constructors used throughout tests and generators.
def atom(name) -> Formula:
    return Formula(name)


def lnot(phi) -> Formula:
    return Formula(g.NOT, (phi,))


def land(a, b) -> Formula:
    return Formula(g.AND, (a, b))


def lor(a, b) -> Formula:
    return Formula(g.OR, (a, b))


def implies(a, b) -> Formula:
    return Formula(g.IMPLIES, (a, b))


def equiv(a, b) -> Formula:
    return Formula(g.EQUIV, (a, b))


def nxt(phi) -> Formula:
    return Formula(g.NEXT, (phi,))


def globally(phi) -> Formula:
    return Formula(g.GLOBALLY, (phi,))


def finally_(phi) -> Formula:
    return Formula(g.FINALLY, (phi,))


def until(a, b) -> Formula:
    return Formula(g.UNTIL, (a, b))


def weak_until(a, b) -> Formula:
    return Formula(g.WEAK_UNTIL, (a, b))


def release(a, b) -> Formula:
    return Formula(g.RELEASE, (a, b))


TRUE = Formula(g.TRUE)
FALSE = Formula(g.FALSE)
