"""Satisfiability oracles: propositional truth tables, an LTL tableau, and a
bounded-lasso witness search that cross-checks the tableau."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .. import grammar as g
from ..formula import Formula, formula_atoms
from ..trace import Trace, evaluate
from ..transforms import temporal_relaxation, to_nnf
from . import kernels
from .encode import encode_nnf, letter_to_state

DEFAULT_MAX_STATES = 200_000
DEFAULT_TIME_BUDGET = 10.0
LASSO_ENUM_GUARD = 10_000_000

BOOLEAN_UNSAT = "boolean-unsat"
TEMPORALLY_UNSAT = "temporally-unsat"


class OracleError(ValueError):
    pass


class TemporalTokenPresentError(OracleError):
    pass


class EnumerationTooLargeError(OracleError):
    pass


class PreconditionViolatedError(OracleError):
    pass


class OracleTimeoutError(OracleError):
    pass


@dataclass
class SatVerdict:
    status: str  # 'sat' | 'unsat' | 'timeout'
    witness: Trace | None = None
    method: str = ""

    @property
    def is_sat(self):
        return self.status == "sat"

    @property
    def is_unsat(self):
        return self.status == "unsat"


_STATUS = {kernels.SAT: "sat", kernels.UNSAT: "unsat", kernels.TIMEOUT: "timeout"}


def _contains_temporal(phi: Formula) -> bool:
    if phi.token in g.TEMPORAL_TOKENS:
        return True
    return any(_contains_temporal(c) for c in phi.children)


def _prop_value(phi: Formula, assignment: frozenset) -> bool:
    tok = phi.token
    if not phi.children:
        if tok == g.TRUE:
            return True
        if tok == g.FALSE:
            return False
        return tok in assignment
    vals = [_prop_value(c, assignment) for c in phi.children]
    if tok == g.NOT:
        return not vals[0]
    if tok == g.AND:
        return vals[0] and vals[1]
    if tok == g.OR:
        return vals[0] or vals[1]
    if tok == g.IMPLIES:
        return not vals[0] or vals[1]
    if tok == g.EQUIV:
        return vals[0] == vals[1]
    raise TemporalTokenPresentError(f"operator {tok!r} is not propositional")


def prop_sat(phi: Formula) -> SatVerdict:
    """Exact propositional satisfiability by truth table over the formula's atoms."""
    if _contains_temporal(phi):
        raise TemporalTokenPresentError("formula contains temporal operators")
    atoms = sorted(formula_atoms(phi))
    for bits in range(1 << len(atoms)):
        assignment = frozenset(a for i, a in enumerate(atoms) if bits >> i & 1)
        if _prop_value(phi, assignment):
            witness = Trace((), (assignment,))
            return SatVerdict("sat", witness, "truth-table")
    return SatVerdict("unsat", None, "truth-table")


def ltl_sat(
    phi: Formula,
    max_states=DEFAULT_MAX_STATES,
    time_budget=DEFAULT_TIME_BUDGET,
    want_witness=False,
) -> SatVerdict:
    """LTL satisfiability via a tableau over the closure of the NNF.

    States are the maximal consistent closure subsets; the formula is
    satisfiable iff a fair (every until fulfilled) non-trivial SCC is
    reachable from a state containing the formula. Budget exhaustion yields a
    'timeout' verdict, never a wrong answer.
    """
    enc = encode_nnf(to_nnf(phi))
    if want_witness:
        status, prefix, period = kernels.tableau_witness(enc, max_states, time_budget)
        if status != kernels.SAT:
            return SatVerdict(_STATUS[status], None, "tableau")
        witness = Trace(
            tuple(letter_to_state(x, enc.atoms) for x in prefix),
            tuple(letter_to_state(x, enc.atoms) for x in period),
        )
        if not evaluate(phi, witness):
            raise AssertionError("tableau produced a non-model witness")
        return SatVerdict("sat", witness, "tableau")
    status = kernels.tableau_sat(enc, max_states, time_budget)
    return SatVerdict(_STATUS[status], None, "tableau")


def bounded_lasso_sat(phi: Formula, max_prefix=4, max_period=4) -> SatVerdict:
    """Search all lassos within the bounds for a model of ``phi``.

    A 'sat' verdict carries a checked witness. An 'unsat' verdict only means
    no model exists *within the bounds*; callers use this as a witness finder
    and as a refutation check against tableau verdicts.
    """
    enc = encode_nnf(to_nnf(phi))
    n_letters = 1 << len(enc.atoms)
    total = sum(n_letters ** (p + q) for p in range(max_prefix + 1) for q in range(1, max_period + 1))
    if total > LASSO_ENUM_GUARD:
        raise EnumerationTooLargeError(f"{total} candidate lassos exceed the {LASSO_ENUM_GUARD} guard")
    found = kernels.lasso_search(enc, max_prefix, max_period)
    if found is None:
        return SatVerdict("unsat", None, "bounded-lasso")
    prefix, period = found
    witness = Trace(
        tuple(letter_to_state(x, enc.atoms) for x in prefix),
        tuple(letter_to_state(x, enc.atoms) for x in period),
    )
    if not evaluate(phi, witness):
        raise AssertionError("lasso search produced a non-model witness")
    return SatVerdict("sat", witness, "bounded-lasso")


def naive_lasso_sat(phi: Formula, max_prefix=4, max_period=4) -> SatVerdict:
    """Reference bounded search: enumerate every lasso and call evaluate.

    Exponentially slower than bounded_lasso_sat; used to validate the kernels.
    """
    atoms = sorted(formula_atoms(to_nnf(phi)))
    letters = [frozenset(a for i, a in enumerate(atoms) if bits >> i & 1) for bits in range(1 << len(atoms))]
    total = sum(len(letters) ** (p + q) for p in range(max_prefix + 1) for q in range(1, max_period + 1))
    if total > LASSO_ENUM_GUARD:
        raise EnumerationTooLargeError(f"{total} candidate lassos exceed the {LASSO_ENUM_GUARD} guard")
    for q in range(1, max_period + 1):
        for period in product(letters, repeat=q):
            for p in range(max_prefix + 1):
                for prefix in product(letters, repeat=p):
                    t = Trace(prefix, period)
                    if evaluate(phi, t):
                        return SatVerdict("sat", t, "bounded-lasso")
    return SatVerdict("unsat", None, "bounded-lasso")


def classify_unsat(phi: Formula, assume_unsat=False, **sat_kwargs) -> str:
    """Split unsatisfiable formulas into boolean vs genuinely temporal ones.

    A formula is boolean-unsat when its temporal relaxation is already
    propositionally unsatisfiable.
    """
    if not assume_unsat:
        verdict = ltl_sat(phi, **sat_kwargs)
        if verdict.status == "timeout":
            raise OracleTimeoutError("could not verify unsatisfiability within budget")
        if verdict.is_sat:
            raise PreconditionViolatedError("formula is satisfiable")
    relaxed = temporal_relaxation(to_nnf(phi))
    return BOOLEAN_UNSAT if prop_sat(relaxed).is_unsat else TEMPORALLY_UNSAT
