"""Lasso traces and exact LTL evaluation on them."""

from __future__ import annotations

from dataclasses import dataclass

from . import grammar as g
from .formula import Formula, formula_atoms

UNROLL_CAP = 10_000


class NonLTLGrammarError(ValueError):
    pass


class UnrollBudgetError(ValueError):
    pass


@dataclass(frozen=True)
class Trace:
    """An infinite trace in lasso form: prefix then period repeated forever."""

    prefix: tuple[frozenset, ...]
    period: tuple[frozenset, ...]

    def __post_init__(self):
        if len(self.period) < 1:
            raise ValueError("lasso period must be non-empty")

    def state(self, i):
        if i < len(self.prefix):
            return self.prefix[i]
        return self.period[(i - len(self.prefix)) % len(self.period)]

    def __str__(self):
        fmt = lambda s: "{" + " ".join(sorted(s)) + "}"
        return "".join(map(fmt, self.prefix)) + "(" + "".join(map(fmt, self.period)) + ")^w"


def make_trace(prefix, period) -> Trace:
    return Trace(tuple(frozenset(s) for s in prefix), tuple(frozenset(s) for s in period))


def evaluate(phi: Formula, trace: Trace) -> bool:
    """Decide trace satisfaction exactly.

    Truth values of every subformula are computed for each of the
    prefix+period positions; positions past the prefix wrap through the
    period, and until/release are solved as fix points over the cycle. This
    is exact for lassos. Derived operators (F, G, W, ->, <->) are expanded by
    their definitions.
    """
    p, q = len(trace.prefix), len(trace.period)
    n = p + q
    if p + 2 * q * (2 ** len(formula_atoms(phi))) > UNROLL_CAP:
        raise UnrollBudgetError(f"trace unrolling would exceed {UNROLL_CAP} steps")

    def nxt_pos(i):
        return i + 1 if i + 1 < n else p

    memo = {}

    def vals(node) -> list[bool]:
        if node in memo:
            return memo[node]
        tok = node.token
        if node.number:
            raise NonLTLGrammarError(f"numeric leaf {tok!r} has no trace semantics")
        if node.children:
            kid = [vals(c) for c in node.children]
        if tok == g.TRUE:
            v = [True] * n
        elif tok == g.FALSE:
            v = [False] * n
        elif not node.children:
            v = [tok in trace.state(i) for i in range(n)]
        elif tok == g.NOT:
            v = [not x for x in kid[0]]
        elif tok == g.AND:
            v = [a and b for a, b in zip(kid[0], kid[1])]
        elif tok == g.OR:
            v = [a or b for a, b in zip(kid[0], kid[1])]
        elif tok == g.IMPLIES:
            v = [(not a) or b for a, b in zip(kid[0], kid[1])]
        elif tok == g.EQUIV:
            v = [a == b for a, b in zip(kid[0], kid[1])]
        elif tok == g.NEXT:
            v = [kid[0][nxt_pos(i)] for i in range(n)]
        elif tok == g.UNTIL:
            v = _until(kid[0], kid[1], nxt_pos, n)
        elif tok == g.RELEASE:
            # phi R psi == not (not phi U not psi)
            nu = _until([not x for x in kid[0]], [not x for x in kid[1]], nxt_pos, n)
            v = [not x for x in nu]
        elif tok == g.FINALLY:
            v = _until([True] * n, kid[0], nxt_pos, n)
        elif tok == g.GLOBALLY:
            nu = _until([True] * n, [not x for x in kid[0]], nxt_pos, n)
            v = [not x for x in nu]
        elif tok == g.WEAK_UNTIL:
            u = _until(kid[0], kid[1], nxt_pos, n)
            nu = _until([True] * n, [not x for x in kid[0]], nxt_pos, n)
            v = [a or not b for a, b in zip(u, nu)]
        else:
            raise NonLTLGrammarError(f"operator {tok!r} has no trace semantics")
        memo[node] = v
        return v

    return vals(phi)[0]


def _until(left, right, nxt_pos, n):
    """Least fix point of v[i] = right[i] or (left[i] and v[next(i)])."""
    v = list(right)
    changed = True
    while changed:
        changed = False
        for i in reversed(range(n)):
            nv = right[i] or (left[i] and v[nxt_pos(i)])
            if nv != v[i]:
                v[i] = nv
                changed = True
    return v


def all_lassos(atom_names, max_prefix, max_period):
    """Every lasso over subsets of ``atom_names`` within the given bounds."""
    from itertools import product

    atom_names = sorted(atom_names)
    letters = []
    for bits in range(1 << len(atom_names)):
        letters.append(frozenset(a for k, a in enumerate(atom_names) if bits >> k & 1))
    for pl in range(max_prefix + 1):
        for ql in range(1, max_period + 1):
            for prefix in product(letters, repeat=pl):
                for period in product(letters, repeat=ql):
                    yield Trace(prefix, period)
