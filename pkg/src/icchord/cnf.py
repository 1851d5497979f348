"""3-SAT instances, DIMACS parsing and a brute-force satisfiability oracle."""
from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional

MAX_BRUTE_FORCE_VARS = 24


class CnfError(ValueError):
    pass


class Literal(NamedTuple):
    var: int
    positive: bool

    @classmethod
    def from_int(cls, v: int) -> "Literal":
        if v == 0:
            raise CnfError("0 is not a literal")
        return cls(abs(v), v > 0)

    def to_int(self) -> int:
        return self.var if self.positive else -self.var

    @property
    def tag(self) -> str:
        """``x`` for the variable itself, ``nx`` for its negation."""
        return "x" if self.positive else "nx"

    def negated(self) -> "Literal":
        return Literal(self.var, not self.positive)

    def __str__(self) -> str:
        return f"x{self.var}" if self.positive else f"~x{self.var}"


@dataclass(frozen=True)
class CnfInstance:
    alpha: int
    clauses: tuple[tuple[Literal, ...], ...]

    def __post_init__(self):
        if self.alpha < 1:
            raise CnfError("an instance needs at least one variable")
        for clause in self.clauses:
            if not clause:
                raise CnfError("empty clause")
            if len(clause) > 3:
                raise CnfError(f"clause {clause} has more than 3 literals")
            if len(set(clause)) != len(clause):
                raise CnfError(f"clause {clause} repeats a literal")
            vars_ = [lit.var for lit in clause]
            if len(set(vars_)) != len(vars_):
                raise CnfError(f"clause {clause} contains a variable and its negation")
            for lit in clause:
                if not 1 <= lit.var <= self.alpha:
                    raise CnfError(f"variable {lit.var} out of range 1..{self.alpha}")

    @classmethod
    def from_ints(cls, alpha: int, clauses: Iterable[Iterable[int]]) -> "CnfInstance":
        return cls(alpha, tuple(tuple(Literal.from_int(v) for v in c) for c in clauses))

    @property
    def beta(self) -> int:
        return len(self.clauses)

    def satisfied_by(self, asg) -> bool:
        return all(any(asg[lit.var - 1] == lit.positive for lit in c) for c in self.clauses)

    def to_dimacs(self) -> str:
        lines = [f"p cnf {self.alpha} {self.beta}"]
        lines += [" ".join(str(l.to_int()) for l in c) + " 0" for c in self.clauses]
        return "\n".join(lines) + "\n"

    def digest(self) -> str:
        return hashlib.sha256(self.to_dimacs().encode()).hexdigest()[:12]

    def __str__(self) -> str:
        if not self.clauses:
            return "(true)"
        return " & ".join("(" + " | ".join(str(l) for l in c) + ")" for c in self.clauses)


class Assignment(tuple):
    """Truth values for variables 1..alpha (stored 0-based)."""

    def value(self, var: int) -> bool:
        return self[var - 1]

    def __repr__(self) -> str:
        return "Assignment(" + ", ".join(f"x{i + 1}={'T' if v else 'F'}" for i, v in enumerate(self)) + ")"


def parse_dimacs(text: str) -> CnfInstance:
    header = None
    tokens: list[int] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if header is not None or len(parts) != 4 or parts[1] != "cnf":
                raise CnfError(f"malformed header: {raw!r}")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError as exc:
                raise CnfError(f"malformed header: {raw!r}") from exc
            continue
        if header is None:
            raise CnfError("clause before 'p cnf' header")
        try:
            tokens.extend(int(tok) for tok in line.split())
        except ValueError as exc:
            raise CnfError(f"bad clause line: {raw!r}") from exc
    if header is None:
        raise CnfError("missing 'p cnf' header")
    nvars, nclauses = header
    clauses = []
    current: list[int] = []
    for tok in tokens:
        if tok == 0:
            if not current:
                raise CnfError("empty clause")
            clauses.append(current)
            current = []
            continue
        if abs(tok) > nvars:
            raise CnfError(f"variable {abs(tok)} out of range 1..{nvars}")
        current.append(tok)
    if current:
        clauses.append(current)
    if len(clauses) != nclauses:
        raise CnfError(f"header announces {nclauses} clauses, found {len(clauses)}")
    return CnfInstance.from_ints(nvars, clauses)


def brute_force_sat(instance: CnfInstance) -> Optional[Assignment]:
    """First satisfying assignment in lexicographic order (False < True)."""
    if instance.alpha > MAX_BRUTE_FORCE_VARS:
        raise CnfError(f"brute force is capped at {MAX_BRUTE_FORCE_VARS} variables")
    for values in itertools.product((False, True), repeat=instance.alpha):
        if instance.satisfied_by(values):
            return Assignment(values)
    return None


def all_clauses(alpha: int) -> list[tuple[Literal, ...]]:
    """Every admissible clause over ``alpha`` variables, in a fixed order."""
    out = []
    for size in (1, 2, 3):
        for vars_ in itertools.combinations(range(1, alpha + 1), size):
            for signs in itertools.product((True, False), repeat=size):
                out.append(tuple(Literal(v, s) for v, s in zip(vars_, signs)))
    return out


def satisfying_clause_assignments(clause) -> list[dict[int, bool]]:
    """The 2**k - 1 assignments to a clause's variables that satisfy it."""
    out = []
    for values in itertools.product((True, False), repeat=len(clause)):
        if any(v == lit.positive for v, lit in zip(values, clause)):
            out.append({lit.var: v for v, lit in zip(values, clause)})
    return out
