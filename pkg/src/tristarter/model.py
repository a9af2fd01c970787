"""Encoding of a triplication table as a ternary constraint problem.

Variables over {0, 1, 2}: U_i, V_i per extension pair, a difference D_i per
pair, a sum S_i per weak pair only, and one fixed zero Z.  Constraints:

* Z = 0, and bindings D_i = U_i - V_i, S_i = U_i + V_i (mod 3);
* per regular row, the three D are all different;
* per weak set, the member sums are all different (zero-sum sets include Z,
  forcing the sums nonzero as well);
* per monochrome color, the variables at its positions are all different
  (color 0 includes Z).

An all-different over more than three variables cannot hold over three
values, so such an instance is emitted flagged as trivially unsatisfiable
with the offending constraint named (reachable only through the non-starter
or non-strong overrides).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from .errors import StructuralError
from .starters import Pair
from .triplication import (
    TriplicationTable,
    compute_monochrome_sets,
    compute_weak_sets,
)

ROLE_U = "U"
ROLE_V = "V"
ROLE_D = "D"
ROLE_S = "S"
ROLE_Z = "Z"

#: The value transposition 0 -> 0, 1 -> 2, 2 -> 1 (negation mod 3).
PHI = (0, 2, 1)


@dataclass(frozen=True)
class TernaryVariable:
    id: int
    role: str
    index: Optional[int]

    @property
    def name(self) -> str:
        return self.role if self.index is None else f"{self.role}{self.index}"


@dataclass(frozen=True)
class FixZero:
    var: int
    provenance: str

    @property
    def vars(self) -> tuple[int, ...]:
        return (self.var,)


@dataclass(frozen=True)
class LinearBinding:
    """(a + b_sign*b - c) % 3 == 0; covers both U-V-D and U+V-S bindings."""

    a: int
    b: int
    c: int
    b_sign: int
    provenance: str

    @property
    def vars(self) -> tuple[int, ...]:
        return (self.a, self.b, self.c)


@dataclass(frozen=True)
class AllDifferent:
    vars: tuple[int, ...]
    provenance: str


Constraint = Union[FixZero, LinearBinding, AllDifferent]


@dataclass(frozen=True)
class SudokuInstance:
    table: TriplicationTable
    variables: tuple[TernaryVariable, ...]
    constraints: tuple[Constraint, ...]
    u_ids: tuple[int, ...]
    v_ids: tuple[int, ...]
    d_ids: tuple[int, ...]
    s_ids: dict[int, int] = field(repr=False)
    z_id: int = 0
    trivially_unsat_reason: Optional[str] = None

    @property
    def num_variables(self) -> int:
        return len(self.variables)


@dataclass(frozen=True)
class SudokuSolution:
    """Total assignment, indexed densely by variable id."""

    values: tuple[int, ...]

    def value_of(self, var_id: int) -> int:
        return self.values[var_id]


def encode(table: TriplicationTable) -> SudokuInstance:
    """Encode the table's constraint problem (classes 0 through 3)."""
    k = len(table.extension)
    weak_sets = compute_weak_sets(table)
    mono_sets = compute_monochrome_sets(table)

    variables: list[TernaryVariable] = []
    u_ids, v_ids = [], []
    for i in range(k):
        u_ids.append(len(variables))
        variables.append(TernaryVariable(len(variables), ROLE_U, i))
        v_ids.append(len(variables))
        variables.append(TernaryVariable(len(variables), ROLE_V, i))
    d_ids = []
    for i in range(k):
        d_ids.append(len(variables))
        variables.append(TernaryVariable(len(variables), ROLE_D, i))
    s_ids: dict[int, int] = {}
    for w in weak_sets:
        for i in w.members:
            s_ids[i] = -1
    for i in sorted(s_ids):
        s_ids[i] = len(variables)
        variables.append(TernaryVariable(len(variables), ROLE_S, i))
    z_id = len(variables)
    variables.append(TernaryVariable(z_id, ROLE_Z, None))

    constraints: list[Constraint] = [FixZero(z_id, "dummy variable")]
    for i in range(k):
        constraints.append(
            LinearBinding(u_ids[i], v_ids[i], d_ids[i], -1, f"difference binding D{i}"))
    for i in sorted(s_ids):
        constraints.append(
            LinearBinding(u_ids[i], v_ids[i], s_ids[i], +1, f"sum binding S{i}"))
    for row in range(1, table.q + 1):
        triple = (d_ids[3 * row - 2], d_ids[3 * row - 1], d_ids[3 * row])
        constraints.append(AllDifferent(triple, f"row {row} differences"))
    for w in weak_sets:
        members = tuple(s_ids[i] for i in w.members)
        if w.sum == 0:
            members = members + (z_id,)
        constraints.append(AllDifferent(members, f"weak set with sum {w.sum}"))
    for m in mono_sets:
        ids = tuple(
            z_id if pos.is_dummy
            else (u_ids[pos.pair_index] if pos.slot == 0 else v_ids[pos.pair_index])
            for pos in m.positions)
        constraints.append(AllDifferent(ids, f"color {m.color}"))

    reason = None
    for c in constraints:
        if isinstance(c, AllDifferent) and len(c.vars) > 3:
            reason = (f"{c.provenance}: {len(c.vars)} mutually distinct "
                      "variables cannot fit in three values")
            break

    return SudokuInstance(
        table=table,
        variables=tuple(variables),
        constraints=tuple(constraints),
        u_ids=tuple(u_ids),
        v_ids=tuple(v_ids),
        d_ids=tuple(d_ids),
        s_ids=s_ids,
        z_id=z_id,
        trivially_unsat_reason=reason,
    )


def _check_total(instance: SudokuInstance, solution: SudokuSolution) -> None:
    if len(solution.values) != instance.num_variables:
        raise StructuralError(
            f"assignment covers {len(solution.values)} of "
            f"{instance.num_variables} variables")
    for v in solution.values:
        if v not in (0, 1, 2):
            raise StructuralError(f"value {v!r} outside {{0, 1, 2}}")


def _holds(constraint: Constraint, values: tuple[int, ...]) -> bool:
    if isinstance(constraint, FixZero):
        return values[constraint.var] == 0
    if isinstance(constraint, LinearBinding):
        return (values[constraint.a]
                + constraint.b_sign * values[constraint.b]
                - values[constraint.c]) % 3 == 0
    seen = 0
    for var in constraint.vars:
        bit = 1 << values[var]
        if seen & bit:
            return False
        seen |= bit
    return True


def check_solution(
    instance: SudokuInstance, solution: SudokuSolution
) -> tuple[bool, tuple[Constraint, ...]]:
    """Evaluate every constraint; violations come back with provenance."""
    _check_total(instance, solution)
    violated = tuple(c for c in instance.constraints if not _holds(c, solution.values))
    return not violated, violated


def apply_phi(solution: SudokuSolution) -> SudokuSolution:
    """Transpose values 1 and 2 everywhere (an involution fixing 0)."""
    return SudokuSolution(tuple(PHI[v] for v in solution.values))


def solution_from_uv(instance: SudokuInstance, uv: list[Pair]) -> SudokuSolution:
    """Build a total solution from (U_i, V_i) values, inducing D, S and Z."""
    k = len(instance.table.extension)
    if len(uv) != k:
        raise StructuralError(f"expected {k} (U, V) pairs, got {len(uv)}")
    values = [0] * instance.num_variables
    for i, (u, v) in enumerate(uv):
        if u not in (0, 1, 2) or v not in (0, 1, 2):
            raise StructuralError(f"pair {i} outside {{0, 1, 2}}: {(u, v)!r}")
        values[instance.u_ids[i]] = u
        values[instance.v_ids[i]] = v
        values[instance.d_ids[i]] = (u - v) % 3
        if i in instance.s_ids:
            values[instance.s_ids[i]] = (u + v) % 3
    values[instance.z_id] = 0
    return SudokuSolution(tuple(values))


def uv_pairs(instance: SudokuInstance, solution: SudokuSolution) -> tuple[Pair, ...]:
    """Extract the (U_i, V_i) part of a solution in extension order."""
    return tuple(
        (solution.values[instance.u_ids[i]], solution.values[instance.v_ids[i]])
        for i in range(len(instance.table.extension)))


def constraint_census(instance: SudokuInstance) -> dict[str, int]:
    """Counts per constraint family, for reporting and invariant checks."""
    census = {"fix_zero": 0, "difference_bindings": 0, "sum_bindings": 0,
              "row_all_different": 0, "weak_all_different": 0, "color_all_different": 0}
    for c in instance.constraints:
        if isinstance(c, FixZero):
            census["fix_zero"] += 1
        elif isinstance(c, LinearBinding):
            if c.b_sign < 0:
                census["difference_bindings"] += 1
            else:
                census["sum_bindings"] += 1
        elif c.provenance.startswith("row"):
            census["row_all_different"] += 1
        elif c.provenance.startswith("weak"):
            census["weak_all_different"] += 1
        else:
            census["color_all_different"] += 1
    return census
