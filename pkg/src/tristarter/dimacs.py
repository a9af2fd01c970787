"""DIMACS CNF bridge: one-hot export, model decoding, subprocess runner.

Each ternary variable x becomes three booleans "x = 0/1/2" (one at-least-one
clause plus three pairwise at-most-one clauses); every constraint is expanded
into clauses forbidding each violating combination.  The text form is
standard DIMACS (`p cnf <vars> <clauses>`, clauses terminated by 0) with the
ternary-to-boolean map recorded in comments so documents round-trip.

External solvers are invoked as a command template receiving the CNF path
and are expected to print SAT-competition style output (`s SATISFIABLE` /
`s UNSATISFIABLE` plus `v` literal lines).
"""

from __future__ import annotations

import itertools
import shlex
import subprocess
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional

from .errors import DecodeError, ExternalSolverError, StructuralError
from .model import AllDifferent, FixZero, LinearBinding, SudokuInstance, SudokuSolution


@dataclass(frozen=True)
class CnfDocument:
    num_ternary: int
    num_bools: int
    clauses: tuple[tuple[int, ...], ...]
    # 1-based index of the boolean "ternary var t == 0"; value v is base + v
    var_base: tuple[int, ...]

    def literal(self, ternary_id: int, value: int) -> int:
        return self.var_base[ternary_id] + value


def export_dimacs(instance: SudokuInstance) -> CnfDocument:
    """One-hot CNF encoding of the whole instance."""
    n = instance.num_variables
    var_base = tuple(1 + 3 * t for t in range(n))
    clauses: list[tuple[int, ...]] = []

    for t in range(n):
        b = var_base[t]
        clauses.append((b, b + 1, b + 2))
        clauses.append((-b, -(b + 1)))
        clauses.append((-b, -(b + 2)))
        clauses.append((-(b + 1), -(b + 2)))

    for c in instance.constraints:
        if isinstance(c, FixZero):
            clauses.append((var_base[c.var],))
        elif isinstance(c, LinearBinding):
            for va, vb, vc in itertools.product(range(3), repeat=3):
                if (va + c.b_sign * vb - vc) % 3 != 0:
                    clauses.append((
                        -(var_base[c.a] + va),
                        -(var_base[c.b] + vb),
                        -(var_base[c.c] + vc),
                    ))
        elif isinstance(c, AllDifferent):
            for x, y in itertools.combinations(c.vars, 2):
                for v in range(3):
                    clauses.append((-(var_base[x] + v), -(var_base[y] + v)))

    return CnfDocument(
        num_ternary=n,
        num_bools=3 * n,
        clauses=tuple(clauses),
        var_base=var_base,
    )


def to_dimacs_text(doc: CnfDocument) -> str:
    lines = [f"c ternary {doc.num_ternary} one-hot booleans {doc.num_bools}"]
    for t, base in enumerate(doc.var_base):
        lines.append(f"c tmap {t} {base}")
    lines.append(f"p cnf {doc.num_bools} {len(doc.clauses)}")
    for clause in doc.clauses:
        lines.append(" ".join(map(str, clause)) + " 0")
    return "\n".join(lines) + "\n"


def parse_dimacs_text(text: str) -> CnfDocument:
    """Parse DIMACS text back into a document (tmap comments honored)."""
    num_bools = None
    declared_clauses = None
    clauses: list[tuple[int, ...]] = []
    tmap: dict[int, int] = {}
    pending: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("c"):
            fields = line.split()
            if len(fields) == 4 and fields[1] == "tmap":
                tmap[int(fields[2])] = int(fields[3])
            continue
        if line.startswith("p"):
            fields = line.split()
            if len(fields) != 4 or fields[1] != "cnf":
                raise StructuralError(f"line {lineno}: bad problem line {line!r}")
            num_bools = int(fields[2])
            declared_clauses = int(fields[3])
            continue
        if num_bools is None:
            raise StructuralError(f"line {lineno}: clause before problem line")
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                clauses.append(tuple(pending))
                pending = []
            else:
                pending.append(lit)
    if pending:
        raise StructuralError("unterminated clause at end of file")
    if num_bools is None:
        raise StructuralError("missing problem line")
    if declared_clauses != len(clauses):
        raise StructuralError(
            f"header declares {declared_clauses} clauses, found {len(clauses)}")
    if tmap:
        num_ternary = len(tmap)
        var_base = tuple(tmap[t] for t in range(num_ternary))
    else:
        num_ternary = num_bools // 3
        var_base = tuple(1 + 3 * t for t in range(num_ternary))
    return CnfDocument(
        num_ternary=num_ternary,
        num_bools=num_bools,
        clauses=tuple(clauses),
        var_base=var_base,
    )


def import_dimacs_model(doc: CnfDocument, literals: Iterable[int]) -> SudokuSolution:
    """Decode a boolean model (iterable of signed literals) to ternary values.

    Every ternary variable must have exactly one of its three booleans true;
    anything else names the offending variable in a `DecodeError`.
    """
    true_lits = {lit for lit in literals if lit > 0}
    values = []
    for t in range(doc.num_ternary):
        base = doc.var_base[t]
        hits = [v for v in range(3) if base + v in true_lits]
        if len(hits) != 1:
            raise DecodeError(
                f"ternary variable {t} has {len(hits)} true booleans, expected 1")
        values.append(hits[0])
    return SudokuSolution(tuple(values))


def check_cnf(doc: CnfDocument, literals: Iterable[int]) -> bool:
    """True when the literal set satisfies every clause (for cross-checks)."""
    true_lits = {lit for lit in literals if lit != 0}
    for clause in doc.clauses:
        if not any(lit in true_lits for lit in clause):
            return False
    return True


def parse_solver_output(text: str) -> tuple[str, Optional[list[int]]]:
    """Extract status and model from SAT-competition style output."""
    status = None
    literals: list[int] = []
    for raw in text.splitlines():
        line = raw.strip()
        if line.startswith("s "):
            word = line[2:].strip().upper()
            if word.startswith("SAT"):
                status = "SAT"
            elif word.startswith("UNSAT"):
                status = "UNSAT"
            else:
                status = word
        elif line.startswith("v ") or line.startswith("v\t"):
            for tok in line[2:].split():
                lit = int(tok)
                if lit != 0:
                    literals.append(lit)
    if status is None:
        raise ExternalSolverError("no 's' status line in solver output")
    return status, (literals if status == "SAT" else None)


def run_external_solver(
    doc: CnfDocument,
    command_template: str,
    timeout: Optional[float] = None,
) -> tuple[str, Optional[list[int]]]:
    """Write the CNF to a temp file and run the solver command on it.

    The template may reference the file as ``{cnf}``; otherwise the path is
    appended as the last argument.  Nonzero exit codes 10/20 (the SAT
    convention) are accepted.
    """
    with tempfile.TemporaryDirectory(prefix="tristarter-cnf-") as tmp:
        cnf_path = Path(tmp) / "instance.cnf"
        cnf_path.write_text(to_dimacs_text(doc))
        if "{cnf}" in command_template:
            command = command_template.replace("{cnf}", str(cnf_path))
            argv = shlex.split(command)
        else:
            argv = shlex.split(command_template) + [str(cnf_path)]
        try:
            proc = subprocess.run(
                argv, capture_output=True, text=True, timeout=timeout, check=False)
        except OSError as exc:
            raise ExternalSolverError(f"cannot run {argv[0]!r}: {exc}") from exc
        except subprocess.TimeoutExpired as exc:
            raise ExternalSolverError(f"solver timed out after {timeout}s") from exc
        if proc.returncode not in (0, 10, 20):
            raise ExternalSolverError(
                f"solver exited with {proc.returncode}: {proc.stderr.strip()[:500]}")
        return parse_solver_output(proc.stdout)


def dimacs_status_of(outcome_status: str) -> str:
    """Map a native solve status to the external solver vocabulary."""
    return {"SAT": "SAT", "UNSAT": "UNSAT"}.get(outcome_status, outcome_status)


def solve_via_external(
    instance: SudokuInstance,
    command_template: str,
    timeout: Optional[float] = None,
) -> tuple[str, Optional[SudokuSolution], CnfDocument]:
    """Full bridge: export, run, decode; SAT models come back as solutions."""
    doc = export_dimacs(instance)
    status, literals = run_external_solver(doc, command_template, timeout=timeout)
    solution = None
    if status == "SAT":
        if literals is None:
            raise ExternalSolverError("SAT status without a model")
        solution = import_dimacs_model(doc, literals)
    return status, solution, doc
