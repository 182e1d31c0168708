"""3-CNF formulas, truth assignments, and DIMACS parsing.

Literals are signed 1-based variable indices, DIMACS style. Every clause has
exactly three literals; duplicate literals inside a clause are permitted.
"""

from dataclasses import dataclass, field
from itertools import product


class CnfError(ValueError):
    """Malformed formula or DIMACS input."""


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: tuple

    def __post_init__(self):
        if self.num_vars < 1:
            raise CnfError("formula needs at least one variable")
        if not self.clauses:
            raise CnfError("formula needs at least one clause")
        norm = []
        for clause in self.clauses:
            clause = tuple(clause)
            if len(clause) != 3:
                raise CnfError(f"clause {clause!r} does not have exactly 3 literals")
            for lit in clause:
                if not isinstance(lit, int) or lit == 0 or abs(lit) > self.num_vars:
                    raise CnfError(f"literal {lit!r} out of range")
            norm.append(clause)
        object.__setattr__(self, "clauses", tuple(norm))

    @property
    def num_clauses(self):
        return len(self.clauses)

    def evaluate(self, values):
        """Truth value under ``values``: mapping variable index -> bool."""
        for clause in self.clauses:
            if not any(values[abs(l)] == (l > 0) for l in clause):
                return False
        return True

    def satisfying_assignment(self):
        """First satisfying assignment in truth-table order, or None."""
        for bits in product((False, True), repeat=self.num_vars):
            values = {i + 1: b for i, b in enumerate(bits)}
            if self.evaluate(values):
                return values
        return None

    def is_satisfiable(self):
        return self.satisfying_assignment() is not None


@dataclass
class Assignment:
    """Truth assignment, flagging variables no constraint ever pinned."""

    values: dict
    unconstrained: frozenset = field(default_factory=frozenset)

    def to_json(self):
        return {
            "values": {str(i): v for i, v in sorted(self.values.items())},
            "unconstrained": sorted(self.unconstrained),
        }

    @staticmethod
    def from_json(data):
        return Assignment(
            {int(i): bool(v) for i, v in data["values"].items()},
            frozenset(data.get("unconstrained", ())),
        )


def parse_dimacs(text):
    """Parse a DIMACS CNF with exactly 3 literals per clause."""
    num_vars = num_clauses = None
    literals = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            if num_vars is not None:
                raise CnfError("duplicate DIMACS header")
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise CnfError(f"malformed DIMACS header {line!r}")
            try:
                num_vars, num_clauses = int(parts[2]), int(parts[3])
            except ValueError as exc:
                raise CnfError(f"malformed DIMACS header {line!r}") from exc
            continue
        if num_vars is None:
            raise CnfError("clause before DIMACS header")
        try:
            literals.extend(int(tok) for tok in line.split())
        except ValueError as exc:
            raise CnfError(f"malformed clause line {line!r}") from exc
    if num_vars is None:
        raise CnfError("missing DIMACS header")
    clauses = []
    current = []
    for lit in literals:
        if lit == 0:
            if len(current) != 3:
                raise CnfError(f"clause {current!r} does not have exactly 3 literals")
            clauses.append(tuple(current))
            current = []
        else:
            if abs(lit) > num_vars:
                raise CnfError(f"variable {abs(lit)} exceeds declared count {num_vars}")
            current.append(lit)
    if current:
        raise CnfError("trailing clause without terminating 0")
    if num_clauses is not None and len(clauses) != num_clauses:
        raise CnfError(f"header declares {num_clauses} clauses, found {len(clauses)}")
    return CnfFormula(num_vars, tuple(clauses))


def to_dimacs(phi):
    lines = [f"p cnf {phi.num_vars} {phi.num_clauses}"]
    for clause in phi.clauses:
        lines.append(" ".join(str(l) for l in clause) + " 0")
    return "\n".join(lines) + "\n"
