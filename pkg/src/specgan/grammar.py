"""Token grammars for prefix-encoded operator trees.

A grammar is an ordered vocabulary of tokens, each with an arity and a kind.
The token order defines the one-hot axis used by all models, with the padding
token always present. Two grammars ship built in (LTL and prefix math);
arbitrary grammars can be loaded from a tab-separated text file so external
datasets can bring their own vocabulary.
"""

from __future__ import annotations

from dataclasses import dataclass

KIND_ATOM = "atom"
KIND_UNARY = "unary-op"
KIND_BINARY = "binary-op"
KIND_CONST = "constant"
KIND_DIGIT = "digit"
KIND_PAD = "pad"

_KINDS = {KIND_ATOM, KIND_UNARY, KIND_BINARY, KIND_CONST, KIND_DIGIT, KIND_PAD}

PAD_TOKEN = "<pad>"

# LTL operator tokens; semantic code dispatches on these exact strings.
NOT, AND, OR, IMPLIES, EQUIV = "!", "&", "|", "->", "<->"
NEXT, GLOBALLY, FINALLY = "X", "G", "F"
UNTIL, WEAK_UNTIL, RELEASE = "U", "W", "R"
TRUE, FALSE = "1", "0"

TEMPORAL_TOKENS = frozenset({NEXT, GLOBALLY, FINALLY, UNTIL, WEAK_UNTIL, RELEASE})
BOOLEAN_UNARY = frozenset({NOT})
BOOLEAN_BINARY = frozenset({AND, OR, IMPLIES, EQUIV})
LTL_ATOMS = tuple("abcdefghij")


class GrammarError(ValueError):
    pass


@dataclass(frozen=True)
class TokenInfo:
    index: int
    arity: int
    kind: str


class Grammar:
    """Ordered token vocabulary with arities and kinds."""

    def __init__(self, name, tokens, max_tree_size=50):
        self.name = name
        self.max_tree_size = max_tree_size
        self.tokens = []
        self._info = {}
        for tok, arity, kind in tokens:
            if tok in self._info:
                raise GrammarError(f"duplicate token {tok!r}")
            if arity not in (0, 1, 2):
                raise GrammarError(f"token {tok!r} has arity {arity}, expected 0..2")
            if kind not in _KINDS:
                raise GrammarError(f"token {tok!r} has unknown kind {kind!r}")
            if kind == KIND_PAD and arity != 0:
                raise GrammarError("pad token must have arity 0")
            self._info[tok] = TokenInfo(len(self.tokens), arity, kind)
            self.tokens.append(tok)
        pads = [t for t in self.tokens if self._info[t].kind == KIND_PAD]
        if len(pads) != 1:
            raise GrammarError("grammar needs exactly one pad token")
        self.pad_token = pads[0]
        if max_tree_size < 1:
            raise GrammarError("max_tree_size must be positive")

    def __len__(self):
        return len(self.tokens)

    def __contains__(self, tok):
        return tok in self._info

    def info(self, tok) -> TokenInfo:
        try:
            return self._info[tok]
        except KeyError:
            raise GrammarError(f"token {tok!r} not in grammar {self.name!r}") from None

    def arity(self, tok) -> int:
        return self.info(tok).arity

    def kind(self, tok) -> str:
        return self.info(tok).kind

    def index(self, tok) -> int:
        return self.info(tok).index

    @property
    def pad_index(self) -> int:
        return self._info[self.pad_token].index

    def atoms(self):
        return [t for t in self.tokens if self._info[t].kind == KIND_ATOM]

    def digits(self):
        return [t for t in self.tokens if self._info[t].kind == KIND_DIGIT]


def ltl_grammar(n_atoms=10, max_tree_size=50) -> Grammar:
    """LTL vocabulary: atoms a..j, constants 1/0, ! X G F, & | -> <-> U W R, pad."""
    if not 1 <= n_atoms <= len(LTL_ATOMS):
        raise GrammarError(f"n_atoms must be in 1..{len(LTL_ATOMS)}")
    toks = [(PAD_TOKEN, 0, KIND_PAD)]
    toks += [(TRUE, 0, KIND_CONST), (FALSE, 0, KIND_CONST)]
    toks += [(t, 1, KIND_UNARY) for t in (NOT, NEXT, GLOBALLY, FINALLY)]
    toks += [(t, 2, KIND_BINARY) for t in (AND, OR, IMPLIES, EQUIV, UNTIL, WEAK_UNTIL, RELEASE)]
    toks += [(a, 0, KIND_ATOM) for a in LTL_ATOMS[:n_atoms]]
    return Grammar("ltl", toks, max_tree_size)


MATH_BINARY = ("+", "-", "*", "/", "pow")
MATH_UNARY = ("ln", "exp", "sin", "cos", "tan", "tanh", "asin", "acos", "atan", "acosh", "sqrt", "neg")


def math_grammar(max_tree_size=50) -> Grammar:
    """Prefix math vocabulary; integers appear as runs of digit tokens."""
    toks = [(PAD_TOKEN, 0, KIND_PAD)]
    toks += [(t, 2, KIND_BINARY) for t in MATH_BINARY]
    toks += [(t, 1, KIND_UNARY) for t in MATH_UNARY]
    toks += [("x", 0, KIND_ATOM)]
    toks += [(str(d), 0, KIND_DIGIT) for d in range(10)]
    return Grammar("math", toks, max_tree_size)


def load_grammar(path, name=None, max_tree_size=50) -> Grammar:
    """Read a grammar from a file of `token<TAB>arity<TAB>kind` lines."""
    tokens = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise GrammarError(f"{path}:{lineno}: expected 3 tab-separated fields")
            tok, arity, kind = parts
            try:
                arity = int(arity)
            except ValueError:
                raise GrammarError(f"{path}:{lineno}: bad arity {parts[1]!r}") from None
            tokens.append((tok, arity, kind))
    return Grammar(name or path, tokens, max_tree_size)


def save_grammar(grammar: Grammar, path):
    with open(path, "w", encoding="utf-8") as fh:
        for tok in grammar.tokens:
            info = grammar.info(tok)
            fh.write(f"{tok}\t{info.arity}\t{info.kind}\n")
