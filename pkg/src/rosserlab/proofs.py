"""Hilbert-style proof objects (pure data; checking lives in kernel)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .syntax import Formula


@dataclass(frozen=True)
class LogicalAxiom:
    scheme: str


@dataclass(frozen=True)
class Assumption:
    pass


@dataclass(frozen=True)
class ModusPonens:
    """implication holds at line `imp`, antecedent at line `arg`."""

    imp: int
    arg: int


@dataclass(frozen=True)
class Generalization:
    source: int
    var: str


@dataclass(frozen=True)
class DefinitionalAxiom:
    pass


Justification = Union[LogicalAxiom, Assumption, ModusPonens, Generalization, DefinitionalAxiom]


@dataclass(frozen=True)
class ProofLine:
    formula: Formula
    justification: Justification


@dataclass(frozen=True)
class ProofObject:
    lines: tuple[ProofLine, ...]

    def conclusion(self) -> Formula:
        if not self.lines:
            raise ValueError("empty proof has no conclusion")
        return self.lines[-1].formula

    def assumption_formulas(self) -> set[Formula]:
        return {line.formula for line in self.lines if isinstance(line.justification, Assumption)}
