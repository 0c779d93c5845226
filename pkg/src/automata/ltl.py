"""
LTL formulas and their exact evaluation on lassos

Only the syntax tree and a lasso evaluator live here; formulas are built
with the constructors, there is no parser. The evaluator computes, for every
position of the lasso, whether the suffix starting there satisfies the
formula. Positions past the end of the cycle wrap to its start, so the sets
are exact for the infinite word.
"""
from dataclasses import dataclass
from typing import FrozenSet, Set

from src.automata.lasso import Lasso


class Formula:
    """Base class of LTL syntax nodes"""

    def __and__(self, other: "Formula") -> "Formula":
        return And(self, other)

    def __or__(self, other: "Formula") -> "Formula":
        return Or(self, other)

    def __invert__(self) -> "Formula":
        return Not(self)


@dataclass(frozen=True)
class TrueConst(Formula):
    def __str__(self):
        return "true"


@dataclass(frozen=True)
class Prop(Formula):
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula

    def __str__(self):
        return f"!{self.arg}"


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula

    def __str__(self):
        return f"({self.left} & {self.right})"


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula

    def __str__(self):
        return f"({self.left} | {self.right})"


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula

    def __str__(self):
        return f"({self.left} -> {self.right})"


@dataclass(frozen=True)
class Next(Formula):
    arg: Formula

    def __str__(self):
        return f"X {self.arg}"


@dataclass(frozen=True)
class Until(Formula):
    left: Formula
    right: Formula

    def __str__(self):
        return f"({self.left} U {self.right})"


@dataclass(frozen=True)
class Eventually(Formula):
    arg: Formula

    def __str__(self):
        return f"F {self.arg}"


@dataclass(frozen=True)
class Always(Formula):
    arg: Formula

    def __str__(self):
        return f"G {self.arg}"


def _positions(formula: Formula, w: Lasso) -> FrozenSet[int]:
    everything = frozenset(range(w.length))

    if isinstance(formula, TrueConst):
        return everything
    if isinstance(formula, Prop):
        return frozenset(i for i in everything if formula.name in w.letter_at(i))
    if isinstance(formula, Not):
        return everything - _positions(formula.arg, w)
    if isinstance(formula, And):
        return _positions(formula.left, w) & _positions(formula.right, w)
    if isinstance(formula, Or):
        return _positions(formula.left, w) | _positions(formula.right, w)
    if isinstance(formula, Implies):
        return (everything - _positions(formula.left, w)) | _positions(formula.right, w)
    if isinstance(formula, Next):
        inner = _positions(formula.arg, w)
        return frozenset(i for i in everything if w.next_position(i) in inner)
    if isinstance(formula, Until):
        return _until(_positions(formula.left, w), _positions(formula.right, w), w)
    if isinstance(formula, Eventually):
        return _until(everything, _positions(formula.arg, w), w)
    if isinstance(formula, Always):
        return everything - _until(everything, everything - _positions(formula.arg, w), w)
    raise TypeError(f"unsupported formula node {type(formula).__name__}")


def _until(left: FrozenSet[int], right: FrozenSet[int], w: Lasso) -> FrozenSet[int]:
    # least fixpoint of X = right ∪ (left ∩ pre(X))
    current: Set[int] = set(right)
    changed = True
    while changed:
        changed = False
        for i in range(w.length):
            if i not in current and i in left and w.next_position(i) in current:
                current.add(i)
                changed = True
    return frozenset(current)


def holds_on_lasso(formula: Formula, w: Lasso) -> bool:
    """True iff the infinite word u·v^ω satisfies the formula"""
    return 0 in _positions(formula, w)
