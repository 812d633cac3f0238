"""First-order arithmetic syntax: terms, formulas, parsing and printing.

The language has function symbols 0, S, +, * and the numeral-substitution
term former sub(c, n); relations = and <=; propositional connectives;
unbounded and bounded quantifiers.  Successor chains are stored run-length
compressed (``Succ(base, count)``) so numerals of very large naturals stay
O(1) in memory.  ``S[k](t)`` is concrete syntax for a k-fold successor.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Union


# ---------------------------------------------------------------------------
# Terms


class Term:
    __slots__ = ()

    def __str__(self) -> str:
        return print_term(self)


@dataclass(frozen=True)
class Var(Term):
    name: str


@dataclass(frozen=True)
class Zero(Term):
    pass


@dataclass(frozen=True)
class Succ(Term):
    """count-fold successor of base; base is never itself a Succ."""

    base: Term
    count: int

    def __post_init__(self) -> None:
        if self.count < 1:
            raise ValueError("successor count must be positive")
        if isinstance(self.base, Succ):
            raise ValueError("successor chains must be flattened")


@dataclass(frozen=True)
class Plus(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Times(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Subnum(Term):
    """Object-level numeral substitution: sub(c, n) denotes the code of the
    formula coded by c with numeral(n) substituted for its first free
    variable."""

    code: Term
    arg: Term


ZERO = Zero()


def successor(t: Term) -> Term:
    if isinstance(t, Succ):
        return Succ(t.base, t.count + 1)
    return Succ(t, 1)


def numeral(n: int) -> Term:
    """The n-fold successor of zero."""
    if n < 0:
        raise ValueError("numerals denote naturals")
    if n == 0:
        return ZERO
    return Succ(ZERO, n)


# ---------------------------------------------------------------------------
# Formulas


class Formula:
    __slots__ = ()

    def __str__(self) -> str:
        return print_formula(self)


@dataclass(frozen=True)
class Eq(Formula):
    left: Term
    right: Term


@dataclass(frozen=True)
class Le(Formula):
    left: Term
    right: Term


@dataclass(frozen=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Imp(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class ForAll(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class Exists(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class BoundedForAll(Formula):
    """forall v <= t (body); the bound t may not mention v."""

    var: str
    bound: Term
    body: Formula


@dataclass(frozen=True)
class BoundedExists(Formula):
    var: str
    bound: Term
    body: Formula


@dataclass(frozen=True)
class SignedFormula:
    """base with sign 0 (the formula itself) or 1 (its negation)."""

    base: Formula
    sign: int

    def formula(self) -> Formula:
        return signed(self.base, self.sign)


def signed(f: Formula, i: int) -> Formula:
    """Sign 0 is f itself, sign 1 is its literal negation (no collapsing)."""
    if i == 0:
        return f
    if i == 1:
        return Not(f)
    raise ValueError("sign must be 0 or 1")


BINARY_FORMULAS = (And, Or, Imp, Iff)
QUANTIFIERS = (ForAll, Exists, BoundedForAll, BoundedExists)


# ---------------------------------------------------------------------------
# Traversal helpers


def term_vars(t: Term, acc: set[str]) -> None:
    if isinstance(t, Var):
        acc.add(t.name)
    elif isinstance(t, Succ):
        term_vars(t.base, acc)
    elif isinstance(t, (Plus, Times)):
        term_vars(t.left, acc)
        term_vars(t.right, acc)
    elif isinstance(t, Subnum):
        term_vars(t.code, acc)
        term_vars(t.arg, acc)


def free_variables(f: Formula) -> set[str]:
    out: set[str] = set()
    _free(f, out, frozenset())
    return out


def _free(f: Formula, acc: set[str], bound: frozenset[str]) -> None:
    if isinstance(f, (Eq, Le)):
        names: set[str] = set()
        term_vars(f.left, names)
        term_vars(f.right, names)
        acc.update(names - bound)
    elif isinstance(f, Not):
        _free(f.body, acc, bound)
    elif isinstance(f, BINARY_FORMULAS):
        _free(f.left, acc, bound)
        _free(f.right, acc, bound)
    elif isinstance(f, (ForAll, Exists)):
        _free(f.body, acc, bound | {f.var})
    elif isinstance(f, (BoundedForAll, BoundedExists)):
        names: set[str] = set()
        term_vars(f.bound, names)
        acc.update(names - bound)
        _free(f.body, acc, bound | {f.var})
    else:
        raise TypeError(f"not a formula: {f!r}")


def is_sentence(f: Formula) -> bool:
    return not free_variables(f)


def term_is_closed(t: Term) -> bool:
    names: set[str] = set()
    term_vars(t, names)
    return not names


def subformulas(f: Formula) -> Iterator[Formula]:
    """All subformulas of f, including f itself (pre-order)."""
    yield f
    if isinstance(f, Not):
        yield from subformulas(f.body)
    elif isinstance(f, BINARY_FORMULAS):
        yield from subformulas(f.left)
        yield from subformulas(f.right)
    elif isinstance(f, QUANTIFIERS):
        yield from subformulas(f.body)


# ---------------------------------------------------------------------------
# Substitution (capture avoiding, automatic renaming)


def substitute_term(t: Term, var: str, repl: Term) -> Term:
    if isinstance(t, Var):
        return repl if t.name == var else t
    if isinstance(t, Zero):
        return t
    if isinstance(t, Succ):
        new_base = substitute_term(t.base, var, repl)
        if new_base is t.base:
            return t
        if isinstance(new_base, Succ):
            return Succ(new_base.base, new_base.count + t.count)
        return Succ(new_base, t.count)
    if isinstance(t, Plus):
        return Plus(substitute_term(t.left, var, repl), substitute_term(t.right, var, repl))
    if isinstance(t, Times):
        return Times(substitute_term(t.left, var, repl), substitute_term(t.right, var, repl))
    if isinstance(t, Subnum):
        return Subnum(substitute_term(t.code, var, repl), substitute_term(t.arg, var, repl))
    raise TypeError(f"not a term: {t!r}")


def _fresh_name(base: str, taken: set[str]) -> str:
    i = 0
    while True:
        candidate = f"{base}_{i}"
        if candidate not in taken:
            return candidate
        i += 1


def substitute(f: Formula, var: str, repl: Term) -> Formula:
    """Replace free occurrences of var by repl, renaming bound variables
    whenever they would capture a variable of repl."""
    repl_vars: set[str] = set()
    term_vars(repl, repl_vars)
    return _subst(f, var, repl, repl_vars)


def _subst(f: Formula, var: str, repl: Term, repl_vars: set[str]) -> Formula:
    if isinstance(f, Eq):
        return Eq(substitute_term(f.left, var, repl), substitute_term(f.right, var, repl))
    if isinstance(f, Le):
        return Le(substitute_term(f.left, var, repl), substitute_term(f.right, var, repl))
    if isinstance(f, Not):
        return Not(_subst(f.body, var, repl, repl_vars))
    if isinstance(f, And):
        return And(_subst(f.left, var, repl, repl_vars), _subst(f.right, var, repl, repl_vars))
    if isinstance(f, Or):
        return Or(_subst(f.left, var, repl, repl_vars), _subst(f.right, var, repl, repl_vars))
    if isinstance(f, Imp):
        return Imp(_subst(f.left, var, repl, repl_vars), _subst(f.right, var, repl, repl_vars))
    if isinstance(f, Iff):
        return Iff(_subst(f.left, var, repl, repl_vars), _subst(f.right, var, repl, repl_vars))
    if isinstance(f, (ForAll, Exists)):
        cls = type(f)
        if f.var == var:
            return f
        if f.var in repl_vars and var in free_variables(f.body):
            taken = free_variables(f.body) | repl_vars | {var}
            fresh = _fresh_name(f.var, taken)
            body = _subst(f.body, f.var, Var(fresh), {fresh})
            return cls(fresh, _subst(body, var, repl, repl_vars))
        return cls(f.var, _subst(f.body, var, repl, repl_vars))
    if isinstance(f, (BoundedForAll, BoundedExists)):
        cls = type(f)
        bound = substitute_term(f.bound, var, repl)
        if f.var == var:
            return cls(f.var, bound, f.body)
        if f.var in repl_vars and var in free_variables(f.body):
            taken = free_variables(f.body) | repl_vars | {var}
            fresh = _fresh_name(f.var, taken)
            body = _subst(f.body, f.var, Var(fresh), {fresh})
            return cls(fresh, bound, _subst(body, var, repl, repl_vars))
        return cls(f.var, bound, _subst(f.body, var, repl, repl_vars))
    raise TypeError(f"not a formula: {f!r}")


# ---------------------------------------------------------------------------
# Syntactic classification


DELTA0 = "Delta0"
SIGMA1 = "Sigma1"
PI1 = "Pi1"
OTHER = "other"


def classify(f: Formula) -> str:
    """Conservative arithmetical-hierarchy class of f.

    Only closure rules that hold over a weak base theory without collection
    are applied; anything beyond Delta0 / Sigma1 / Pi1 reports "other".
    """
    if isinstance(f, (Eq, Le)):
        return DELTA0
    if isinstance(f, Not):
        inner = classify(f.body)
        if inner == DELTA0:
            return DELTA0
        if inner == SIGMA1:
            return PI1
        if inner == PI1:
            return SIGMA1
        return OTHER
    if isinstance(f, (And, Or)):
        a, b = classify(f.left), classify(f.right)
        if a == DELTA0 and b == DELTA0:
            return DELTA0
        if a in (DELTA0, SIGMA1) and b in (DELTA0, SIGMA1):
            return SIGMA1
        if a in (DELTA0, PI1) and b in (DELTA0, PI1):
            return PI1
        return OTHER
    if isinstance(f, Imp):
        a = classify(Not(f.left))
        b = classify(f.right)
        if a == DELTA0 and b == DELTA0:
            return DELTA0
        if a in (DELTA0, SIGMA1) and b in (DELTA0, SIGMA1):
            return SIGMA1
        if a in (DELTA0, PI1) and b in (DELTA0, PI1):
            return PI1
        return OTHER
    if isinstance(f, Iff):
        if classify(f.left) == DELTA0 and classify(f.right) == DELTA0:
            return DELTA0
        return OTHER
    if isinstance(f, Exists):
        inner = classify(f.body)
        if inner in (DELTA0, SIGMA1):
            return SIGMA1
        return OTHER
    if isinstance(f, ForAll):
        inner = classify(f.body)
        if inner in (DELTA0, PI1):
            return PI1
        return OTHER
    if isinstance(f, BoundedExists):
        inner = classify(f.body)
        if inner == DELTA0:
            return DELTA0
        if inner == SIGMA1:
            return SIGMA1
        return OTHER
    if isinstance(f, BoundedForAll):
        inner = classify(f.body)
        if inner == DELTA0:
            return DELTA0
        if inner == PI1:
            return PI1
        return OTHER
    raise TypeError(f"not a formula: {f!r}")


# ---------------------------------------------------------------------------
# Printer (canonical, fully parenthesized ASCII)


def print_term(t: Term) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Zero):
        return "0"
    if isinstance(t, Succ):
        inner = print_term(t.base)
        if t.count == 1:
            return f"S({inner})"
        return f"S[{t.count}]({inner})"
    if isinstance(t, Plus):
        return f"({print_term(t.left)} + {print_term(t.right)})"
    if isinstance(t, Times):
        return f"({print_term(t.left)} * {print_term(t.right)})"
    if isinstance(t, Subnum):
        return f"sub({print_term(t.code)}, {print_term(t.arg)})"
    raise TypeError(f"not a term: {t!r}")


def print_formula(f: Formula) -> str:
    if isinstance(f, Eq):
        return f"({print_term(f.left)} = {print_term(f.right)})"
    if isinstance(f, Le):
        return f"({print_term(f.left)} <= {print_term(f.right)})"
    if isinstance(f, Not):
        return f"(~ {print_formula(f.body)})"
    if isinstance(f, And):
        return f"({print_formula(f.left)} & {print_formula(f.right)})"
    if isinstance(f, Or):
        return f"({print_formula(f.left)} | {print_formula(f.right)})"
    if isinstance(f, Imp):
        return f"({print_formula(f.left)} -> {print_formula(f.right)})"
    if isinstance(f, Iff):
        return f"({print_formula(f.left)} <-> {print_formula(f.right)})"
    if isinstance(f, ForAll):
        return f"(forall {f.var} {print_formula(f.body)})"
    if isinstance(f, Exists):
        return f"(exists {f.var} {print_formula(f.body)})"
    if isinstance(f, BoundedForAll):
        return f"(forall {f.var} <= {print_term(f.bound)} {print_formula(f.body)})"
    if isinstance(f, BoundedExists):
        return f"(exists {f.var} <= {print_term(f.bound)} {print_formula(f.body)})"
    raise TypeError(f"not a formula: {f!r}")


# ---------------------------------------------------------------------------
# Parser


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at offset {position}")
        self.position = position


_UNICODE_ALIASES = {
    "¬": "~",       # negation sign
    "∧": "&",       # logical and
    "∨": "|",       # logical or
    "→": "->",      # right arrow
    "↔": "<->",     # double arrow
    "∀": "forall ",
    "∃": "exists ",
    "≤": "<=",
    "×": "*",
}

_KEYWORDS = {"forall", "exists", "sub", "S"}


@dataclass
class _Token:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    for alias, ascii_form in _UNICODE_ALIASES.items():
        text = text.replace(alias, ascii_form)
    tokens: list[_Token] = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(_Token("num", text[i:j], i))
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            kind = "kw" if word in _KEYWORDS else "ident"
            tokens.append(_Token(kind, word, i))
            i = j
            continue
        for op in ("<->", "->", "<=", "~", "&", "|", "=", "(", ")", "[", "]", ",", "+", "*"):
            if text.startswith(op, i):
                tokens.append(_Token("op", op, i))
                i += len(op)
                break
        else:
            raise ParseError(f"unexpected character {c!r}", i)
    tokens.append(_Token("eof", "", n))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.i = 0

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def next(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, text: str) -> _Token:
        tok = self.peek()
        if tok.text != text or tok.kind == "eof":
            raise ParseError(f"expected {text!r}", tok.pos)
        return self.next()

    def fail(self, message: str) -> ParseError:
        return ParseError(message, self.peek().pos)

    # formula := iff; right-associative chains for -> and <->
    def formula(self) -> Formula:
        left = self.imp()
        if self.peek().text == "<->":
            self.next()
            return Iff(left, self.formula())
        return left

    def imp(self) -> Formula:
        left = self.disj()
        if self.peek().text == "->":
            self.next()
            return Imp(left, self.imp())
        return left

    def disj(self) -> Formula:
        left = self.conj()
        while self.peek().text == "|":
            self.next()
            left = Or(left, self.conj())
        return left

    def conj(self) -> Formula:
        left = self.unary()
        while self.peek().text == "&":
            self.next()
            left = And(left, self.unary())
        return left

    def unary(self) -> Formula:
        tok = self.peek()
        if tok.text == "~":
            self.next()
            return Not(self.unary())
        if tok.kind == "kw" and tok.text in ("forall", "exists"):
            self.next()
            var = self.peek()
            if var.kind != "ident":
                raise self.fail("expected variable after quantifier")
            self.next()
            bound = None
            if self.peek().text == "<=":
                self.next()
                bound = self.term()
            body = self.unary()
            if tok.text == "forall":
                return BoundedForAll(var.text, bound, body) if bound is not None else ForAll(var.text, body)
            return BoundedExists(var.text, bound, body) if bound is not None else Exists(var.text, body)
        return self.atom()

    def atom(self) -> Formula:
        # Either a parenthesized formula or a term relation.  A '(' is
        # ambiguous, so try the relation first and fall back.
        if self.peek().text == "(":
            mark = self.i
            try:
                return self.relation()
            except ParseError as rel_err:
                self.i = mark
                self.next()
                try:
                    inner = self.formula()
                    self.expect(")")
                    return inner
                except ParseError as f_err:
                    raise rel_err if rel_err.position >= f_err.position else f_err
        return self.relation()

    def relation(self) -> Formula:
        left = self.term()
        tok = self.peek()
        if tok.text == "=":
            self.next()
            return Eq(left, self.term())
        if tok.text == "<=":
            self.next()
            return Le(left, self.term())
        raise self.fail("expected '=' or '<='")

    def term(self) -> Term:
        left = self.term_atom()
        while self.peek().text in ("+", "*"):
            op = self.next().text
            right = self.term_atom()
            left = Plus(left, right) if op == "+" else Times(left, right)
        return left

    def term_atom(self) -> Term:
        tok = self.peek()
        if tok.text == "(":
            self.next()
            inner = self.term()
            self.expect(")")
            return inner
        if tok.kind == "num":
            self.next()
            return numeral(int(tok.text))
        if tok.kind == "kw" and tok.text == "S":
            self.next()
            count = 1
            if self.peek().text == "[":
                self.next()
                num = self.peek()
                if num.kind != "num":
                    raise self.fail("expected successor count")
                self.next()
                count = int(num.text)
                if count < 1:
                    raise ParseError("successor count must be positive", num.pos)
                self.expect("]")
            self.expect("(")
            inner = self.term()
            self.expect(")")
            if isinstance(inner, Succ):
                return Succ(inner.base, inner.count + count)
            return Succ(inner, count)
        if tok.kind == "kw" and tok.text == "sub":
            self.next()
            self.expect("(")
            code = self.term()
            self.expect(",")
            arg = self.term()
            self.expect(")")
            return Subnum(code, arg)
        if tok.kind == "ident":
            self.next()
            return Var(tok.text)
        raise self.fail("expected term")


def parse(text: str) -> Formula:
    """Parse a formula in the concrete syntax (see docs/grammar.ebnf)."""
    parser = _Parser(_tokenize(text))
    f = parser.formula()
    tok = parser.peek()
    if tok.kind != "eof":
        raise ParseError(f"trailing input {tok.text!r}", tok.pos)
    return f


def parse_term(text: str) -> Term:
    parser = _Parser(_tokenize(text))
    t = parser.term()
    tok = parser.peek()
    if tok.kind != "eof":
        raise ParseError(f"trailing input {tok.text!r}", tok.pos)
    return t


def _cached_hash(self):
    try:
        return self._hash_cache
    except AttributeError:
        values = tuple(getattr(self, name) for name in self.__match_args__)
        h = hash((self.__class__.__qualname__, values))
        object.__setattr__(self, "_hash_cache", h)
        return h


# dataclass-generated hashes re-walk the whole tree on every call, which
# dominates dict-heavy workloads; cache per node instead
for _cls in (Var, Zero, Succ, Plus, Times, Subnum, Eq, Le, Not, And, Or, Imp,
             Iff, ForAll, Exists, BoundedForAll, BoundedExists, SignedFormula):
    _cls.__hash__ = _cached_hash


Syntax = Union[Term, Formula]
