"""Monotone Goedel numbering via length-graded sequence ranks.

Objects are serialized to tagged symbol sequences; the code of an object is
the rank of its serialization in the length-lexicographic order of all
symbol strings.  A strict subobject serializes to a strictly shorter string,
so subformula codes are strictly below formula codes and every formula
occurring in a proof sits strictly below the proof's code, by construction.

Code 0 is the empty string and never a valid serialization, so it is free
to serve as the conventional non-formula output elsewhere.
"""

from __future__ import annotations

from typing import Union

from . import proofs, syntax
from .syntax import (
    And, BoundedExists, BoundedForAll, Eq, Exists, ForAll, Formula, Iff, Imp,
    Le, Not, Or, Plus, Subnum, Succ, Term, Times, Var, Zero,
)

Codable = Union[Term, Formula, proofs.ProofObject]


class NotACode(ValueError):
    pass


class NoFreeVariable(ValueError):
    pass


_TAGS = [
    "T_VAR", "T_ZERO", "T_SUCC", "T_PLUS", "T_TIMES", "T_SUB",
    "F_EQ", "F_LE", "F_NOT", "F_AND", "F_OR", "F_IMP", "F_IFF",
    "F_ALL", "F_EX", "F_BALL", "F_BEX",
    "P_PROOF", "J_LOGAX", "J_ASSUME", "J_MP", "J_GEN", "J_DEFAX",
    "END",
]
_NAME_CHARS = "abcdefghijklmnopqrstuvwxyz0123456789_"

_SYMBOLS = _TAGS + list(_NAME_CHARS)
_SYM_INDEX = {s: i for i, s in enumerate(_SYMBOLS)}
ALPHABET_SIZE = len(_SYMBOLS)

_T = {name: _SYM_INDEX[name] for name in _TAGS}


def _emit_name(out: list[int], name: str) -> None:
    for ch in name:
        idx = _SYM_INDEX.get(ch)
        if idx is None or ch in _TAGS:
            raise ValueError(f"name character {ch!r} outside the codable namespace")
        out.append(idx)
    out.append(_T["END"])


def _emit_nat(out: list[int], n: int) -> None:
    _emit_name(out, str(n))


def _serialize_term(out: list[int], t: Term) -> None:
    if isinstance(t, Var):
        out.append(_T["T_VAR"])
        _emit_name(out, t.name)
    elif isinstance(t, Zero):
        out.append(_T["T_ZERO"])
    elif isinstance(t, Succ):
        out.append(_T["T_SUCC"])
        _emit_nat(out, t.count)
        _serialize_term(out, t.base)
    elif isinstance(t, Plus):
        out.append(_T["T_PLUS"])
        _serialize_term(out, t.left)
        _serialize_term(out, t.right)
    elif isinstance(t, Times):
        out.append(_T["T_TIMES"])
        _serialize_term(out, t.left)
        _serialize_term(out, t.right)
    elif isinstance(t, Subnum):
        out.append(_T["T_SUB"])
        _serialize_term(out, t.code)
        _serialize_term(out, t.arg)
    else:
        raise TypeError(f"not a term: {t!r}")


_BINARY_TAGS = {And: "F_AND", Or: "F_OR", Imp: "F_IMP", Iff: "F_IFF"}


def _serialize_formula(out: list[int], f: Formula) -> None:
    if isinstance(f, Eq):
        out.append(_T["F_EQ"])
        _serialize_term(out, f.left)
        _serialize_term(out, f.right)
    elif isinstance(f, Le):
        out.append(_T["F_LE"])
        _serialize_term(out, f.left)
        _serialize_term(out, f.right)
    elif isinstance(f, Not):
        out.append(_T["F_NOT"])
        _serialize_formula(out, f.body)
    elif isinstance(f, (And, Or, Imp, Iff)):
        out.append(_T[_BINARY_TAGS[type(f)]])
        _serialize_formula(out, f.left)
        _serialize_formula(out, f.right)
    elif isinstance(f, ForAll):
        out.append(_T["F_ALL"])
        _emit_name(out, f.var)
        _serialize_formula(out, f.body)
    elif isinstance(f, Exists):
        out.append(_T["F_EX"])
        _emit_name(out, f.var)
        _serialize_formula(out, f.body)
    elif isinstance(f, BoundedForAll):
        out.append(_T["F_BALL"])
        _emit_name(out, f.var)
        _serialize_term(out, f.bound)
        _serialize_formula(out, f.body)
    elif isinstance(f, BoundedExists):
        out.append(_T["F_BEX"])
        _emit_name(out, f.var)
        _serialize_term(out, f.bound)
        _serialize_formula(out, f.body)
    else:
        raise TypeError(f"not a formula: {f!r}")


def _serialize_proof(out: list[int], p: proofs.ProofObject) -> None:
    out.append(_T["P_PROOF"])
    _emit_nat(out, len(p.lines))
    for line in p.lines:
        _serialize_formula(out, line.formula)
        j = line.justification
        if isinstance(j, proofs.LogicalAxiom):
            out.append(_T["J_LOGAX"])
            _emit_name(out, j.scheme)
        elif isinstance(j, proofs.Assumption):
            out.append(_T["J_ASSUME"])
        elif isinstance(j, proofs.ModusPonens):
            out.append(_T["J_MP"])
            _emit_nat(out, j.imp)
            _emit_nat(out, j.arg)
        elif isinstance(j, proofs.Generalization):
            out.append(_T["J_GEN"])
            _emit_nat(out, j.source)
            _emit_name(out, j.var)
        elif isinstance(j, proofs.DefinitionalAxiom):
            out.append(_T["J_DEFAX"])
        else:
            raise TypeError(f"not a justification: {j!r}")


def serialize(obj: Codable) -> list[int]:
    out: list[int] = []
    if isinstance(obj, Term):
        _serialize_term(out, obj)
    elif isinstance(obj, Formula):
        _serialize_formula(out, obj)
    elif isinstance(obj, proofs.ProofObject):
        _serialize_proof(out, obj)
    else:
        raise TypeError(f"not codable: {obj!r}")
    return out


def _rank(symbols: list[int]) -> int:
    length = len(symbols)
    # number of strings strictly shorter, then lexicographic offset
    shorter = (ALPHABET_SIZE**length - 1) // (ALPHABET_SIZE - 1)
    offset = 0
    for s in symbols:
        offset = offset * ALPHABET_SIZE + s
    return shorter + offset


def _unrank(code: int) -> list[int]:
    if code < 0:
        raise NotACode(f"negative value {code}")
    length = 0
    total = 1  # strings of length < 1 (the empty string)
    block = 1
    while code >= total:
        length += 1
        block *= ALPHABET_SIZE
        total += block
    offset = code - (total - block)
    symbols = []
    for _ in range(length):
        offset, digit = divmod(offset, ALPHABET_SIZE)
        symbols.append(digit)
    symbols.reverse()
    return symbols


def encode(obj: Codable) -> int:
    return _rank(serialize(obj))


class _Reader:
    def __init__(self, symbols: list[int]):
        self.symbols = symbols
        self.i = 0

    def next(self) -> int:
        if self.i >= len(self.symbols):
            raise NotACode("truncated serialization")
        s = self.symbols[self.i]
        self.i += 1
        return s

    def read_name(self) -> str:
        chars = []
        while True:
            s = self.next()
            if s == _T["END"]:
                break
            if s < len(_TAGS):
                raise NotACode("tag inside name")
            chars.append(_SYMBOLS[s])
        if not chars:
            raise NotACode("empty name")
        return "".join(chars)

    def read_nat(self) -> int:
        text = self.read_name()
        if not text.isdigit() or (len(text) > 1 and text[0] == "0"):
            raise NotACode(f"bad number literal {text!r}")
        return int(text)

    def done(self) -> bool:
        return self.i == len(self.symbols)


def _read_term(r: _Reader) -> Term:
    tag = r.next()
    if tag == _T["T_VAR"]:
        return Var(r.read_name())
    if tag == _T["T_ZERO"]:
        return syntax.ZERO
    if tag == _T["T_SUCC"]:
        count = r.read_nat()
        if count < 1:
            raise NotACode("zero successor count")
        base = _read_term(r)
        if isinstance(base, Succ):
            raise NotACode("non-canonical successor chain")
        return Succ(base, count)
    if tag == _T["T_PLUS"]:
        return Plus(_read_term(r), _read_term(r))
    if tag == _T["T_TIMES"]:
        return Times(_read_term(r), _read_term(r))
    if tag == _T["T_SUB"]:
        return Subnum(_read_term(r), _read_term(r))
    raise NotACode(f"bad term tag {tag}")


def _read_formula(r: _Reader) -> Formula:
    tag = r.next()
    if tag == _T["F_EQ"]:
        return Eq(_read_term(r), _read_term(r))
    if tag == _T["F_LE"]:
        return Le(_read_term(r), _read_term(r))
    if tag == _T["F_NOT"]:
        return Not(_read_formula(r))
    if tag == _T["F_AND"]:
        return And(_read_formula(r), _read_formula(r))
    if tag == _T["F_OR"]:
        return Or(_read_formula(r), _read_formula(r))
    if tag == _T["F_IMP"]:
        return Imp(_read_formula(r), _read_formula(r))
    if tag == _T["F_IFF"]:
        return Iff(_read_formula(r), _read_formula(r))
    if tag == _T["F_ALL"]:
        return ForAll(r.read_name(), _read_formula(r))
    if tag == _T["F_EX"]:
        return Exists(r.read_name(), _read_formula(r))
    if tag == _T["F_BALL"]:
        name = r.read_name()
        return BoundedForAll(name, _read_term(r), _read_formula(r))
    if tag == _T["F_BEX"]:
        name = r.read_name()
        return BoundedExists(name, _read_term(r), _read_formula(r))
    raise NotACode(f"bad formula tag {tag}")


def _read_proof(r: _Reader) -> proofs.ProofObject:
    tag = r.next()
    if tag != _T["P_PROOF"]:
        raise NotACode("expected proof tag")
    count = r.read_nat()
    lines = []
    for _ in range(count):
        formula = _read_formula(r)
        jtag = r.next()
        if jtag == _T["J_LOGAX"]:
            just: proofs.Justification = proofs.LogicalAxiom(r.read_name())
        elif jtag == _T["J_ASSUME"]:
            just = proofs.Assumption()
        elif jtag == _T["J_MP"]:
            just = proofs.ModusPonens(r.read_nat(), r.read_nat())
        elif jtag == _T["J_GEN"]:
            just = proofs.Generalization(r.read_nat(), r.read_name())
        elif jtag == _T["J_DEFAX"]:
            just = proofs.DefinitionalAxiom()
        else:
            raise NotACode(f"bad justification tag {jtag}")
        lines.append(proofs.ProofLine(formula, just))
    return proofs.ProofObject(tuple(lines))


def decode(code: int) -> Codable:
    """Inverse of encode; raises NotACode off the image."""
    symbols = _unrank(code)
    if not symbols:
        raise NotACode("0 is not a serialization")
    r = _Reader(symbols)
    first = symbols[0]
    if first in (_T["T_VAR"], _T["T_ZERO"], _T["T_SUCC"], _T["T_PLUS"], _T["T_TIMES"], _T["T_SUB"]):
        obj: Codable = _read_term(r)
    elif first == _T["P_PROOF"]:
        obj = _read_proof(r)
    elif first < len(_TAGS):
        obj = _read_formula(r)
    else:
        raise NotACode(f"bad leading symbol {first}")
    if not r.done():
        raise NotACode("trailing symbols")
    return obj


def designated_variable(f: Formula) -> str | None:
    """The substitution slot of a formula: its least free variable."""
    fv = syntax.free_variables(f)
    return min(fv) if fv else None


def subnum_eval(code: int, n: int) -> int:
    """Code of the formula coded by `code` with numeral(n) substituted for
    its designated free variable; identity on sentences."""
    obj = decode(code)
    if not isinstance(obj, Formula):
        raise NoFreeVariable(f"code {code} is not a formula code")
    var = designated_variable(obj)
    if var is None:
        return code
    return encode(syntax.substitute(obj, var, syntax.numeral(n)))


def subnum_total(code: int, n: int) -> int:
    """Total extension of subnum_eval used for object-level term values:
    identity outside formula codes."""
    try:
        return subnum_eval(code, n)
    except (NotACode, NoFreeVariable):
        return code
