"""Compact array encoding of NNF formulas for the oracle kernels.

Nodes are unique subformulas in post order (children precede parents, root
last). Kinds are small integers shared with the compiled kernel.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .. import grammar as g
from ..formula import Formula, subformulas

K_FALSE, K_TRUE, K_ATOM, K_NOTATOM, K_AND, K_OR, K_NEXT, K_UNTIL, K_RELEASE = range(9)

_BINARY = {g.AND: K_AND, g.OR: K_OR, g.UNTIL: K_UNTIL, g.RELEASE: K_RELEASE}

TEMPORAL_KINDS = (K_NEXT, K_UNTIL, K_RELEASE)


class EncodingError(ValueError):
    pass


@dataclass
class EncodedNNF:
    kinds: np.ndarray  # uint8
    left: np.ndarray  # int32, -1 when absent
    right: np.ndarray  # int32, -1 when absent
    atom_id: np.ndarray  # int32, -1 for non-atom nodes
    atoms: list  # atom tokens; index is the letter bit

    def __len__(self):
        return len(self.kinds)


def encode_nnf(phi: Formula) -> EncodedNNF:
    """Encode a formula already in primitive NNF (&, |, U, R, X, literals)."""
    nodes = subformulas(phi)
    index = {node: i for i, node in enumerate(nodes)}
    atoms = sorted({n.token for n in nodes if not n.children and n.token not in (g.TRUE, g.FALSE) and not n.number})
    atom_index = {a: i for i, a in enumerate(atoms)}

    n = len(nodes)
    kinds = np.zeros(n, dtype=np.uint8)
    left = np.full(n, -1, dtype=np.int32)
    right = np.full(n, -1, dtype=np.int32)
    atom_id = np.full(n, -1, dtype=np.int32)

    for i, node in enumerate(nodes):
        tok = node.token
        if node.number:
            raise EncodingError("numeric leaves cannot be encoded for the oracle")
        if not node.children:
            if tok == g.TRUE:
                kinds[i] = K_TRUE
            elif tok == g.FALSE:
                kinds[i] = K_FALSE
            else:
                kinds[i] = K_ATOM
                atom_id[i] = atom_index[tok]
        elif tok == g.NOT:
            child = node.children[0]
            if child.children or child.token in (g.TRUE, g.FALSE) or child.number:
                raise EncodingError("negation allowed on atoms only; convert to NNF first")
            kinds[i] = K_NOTATOM
            left[i] = index[child]
            atom_id[i] = atom_index[child.token]
        elif tok == g.NEXT:
            kinds[i] = K_NEXT
            left[i] = index[node.children[0]]
        elif tok in _BINARY:
            kinds[i] = _BINARY[tok]
            left[i] = index[node.children[0]]
            right[i] = index[node.children[1]]
        else:
            raise EncodingError(f"operator {tok!r} is not primitive NNF")
    return EncodedNNF(kinds, left, right, atom_id, atoms)


def letter_to_state(letter: int, atoms) -> frozenset:
    return frozenset(a for i, a in enumerate(atoms) if letter >> i & 1)
