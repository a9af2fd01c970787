"""CRT merge of the extension with a mod-3 solution, and the full pipeline.

A residue mod 3p is recovered from its residues mod p and mod 3 via the
Chinese Remainder Theorem; merging the extension with the (U, V) part of a
checked solution (optionally transposed by phi) yields a pairing of order
3p that is guaranteed strong whenever the base was a starter and the
solution satisfies the instance.  `triplicate` runs the whole route:
verify base, check the key, build, encode, solve, merge both variants,
re-verify.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Union

from .errors import (
    InternalConsistencyError,
    KeyNotAdmissibleError,
    RefusedError,
)
from .model import (
    PHI,
    SudokuInstance,
    SudokuSolution,
    check_solution,
    encode,
    uv_pairs,
)
from .solver import (
    BUDGET_EXHAUSTED,
    SAT,
    UNSAT,
    SolveOutcome,
    SolverConfig,
    SolveStats,
    solve,
)
from .starters import Pairing, VerificationReport, verify_pairing
from .triplication import TriplicationTable, build_table, check_key_admissible

IDENTITY = "identity"
PHI_VARIANT = "phi"


@lru_cache(maxsize=None)
def _crt_coefficients(p: int) -> tuple[int, int, int]:
    n = 3 * p
    inv3 = pow(3, -1, p)
    invp = pow(p, -1, 3)
    return 3 * inv3 % n, p * invp % n, n


def crt(residue_p: int, residue_3: int, p: int) -> int:
    """The unique x in [0, 3p) with x = residue_p (mod p), x = residue_3 (mod 3)."""
    if p % 3 == 0:
        raise RefusedError(f"p must be coprime to 3, got {p}")
    c_p, c_3, n = _crt_coefficients(p)
    return (residue_p % p * c_p + residue_3 % 3 * c_3) % n


def crt_merge(
    table: TriplicationTable,
    solution: SudokuSolution,
    variant: str = IDENTITY,
    instance: Optional[SudokuInstance] = None,
) -> Pairing:
    """Merge extension and solution pairwise into a pairing of order 3p.

    The solution must satisfy the instance encoded from the table (pass the
    instance to skip re-encoding); otherwise the strongness guarantee would
    not apply and the merge is refused.
    """
    if variant not in (IDENTITY, PHI_VARIANT):
        raise RefusedError(f"unknown merge variant {variant!r}")
    if instance is None:
        instance = encode(table)
    ok, violated = check_solution(instance, solution)
    if not ok:
        raise RefusedError(
            "solution violates the instance ("
            + "; ".join(c.provenance for c in violated[:3])
            + ("..." if len(violated) > 3 else "")
            + "); refusing to merge")
    uv = uv_pairs(instance, solution)
    if variant == PHI_VARIANT:
        uv = tuple((PHI[u3], PHI[v3]) for u3, v3 in uv)
    p = table.p
    pairs = tuple(
        (crt(u, u3, p), crt(v, v3, p))
        for (u, v), (u3, v3) in zip(table.extension, uv))
    return Pairing(3 * p, pairs)


@dataclass(frozen=True)
class TriplicationResult:
    """SAT outcome: both phi-paired starters plus everything to re-check them."""

    starter_a: Pairing
    starter_b: Pairing
    table: TriplicationTable
    solution: SudokuSolution
    report_a: VerificationReport
    report_b: VerificationReport
    stats: SolveStats

    @property
    def status(self) -> str:
        return SAT


@dataclass(frozen=True)
class UnsatReport:
    """Non-SAT outcome; `cause` names a structural reason when one is known."""

    status: str
    cause: Optional[str]
    table: TriplicationTable
    stats: SolveStats


def triplicate(
    base: Pairing,
    key: int,
    config: SolverConfig = SolverConfig(),
    force: bool = False,
    allow_nonstrong: bool = False,
) -> Union[TriplicationResult, UnsatReport]:
    """Run the full pipeline for (base, key).

    The base must be a starter, and strong unless ``allow_nonstrong``.  An
    inadmissible key is refused unless ``force`` (the forced run then
    reports UNSAT with the violated condition as its cause).
    """
    base_report = verify_pairing(base)
    if not base_report.is_starter:
        raise RefusedError(
            "base is not a starter: " + "; ".join(base_report.diagnostics))
    if not base_report.is_strong and not allow_nonstrong:
        raise RefusedError(
            "base is a starter but not strong ("
            + "; ".join(base_report.diagnostics)
            + "); pass allow_nonstrong to run regardless")
    admissible, reason = check_key_admissible(base, key)
    if not admissible and not force:
        raise KeyNotAdmissibleError(
            f"key {key} is not admissible ({reason}): a solvable instance "
            "requires the key to avoid 0 and the base pair sums; "
            "pass force to attempt it anyway")

    table = build_table(base, key)
    instance = encode(table)
    if instance.trivially_unsat_reason is not None:
        return UnsatReport(
            status=UNSAT,
            cause=instance.trivially_unsat_reason,
            table=table,
            stats=SolveStats(0, 0, 0, 0),
        )
    outcome: SolveOutcome = solve(instance, config)
    if outcome.status == BUDGET_EXHAUSTED:
        return UnsatReport(
            status=BUDGET_EXHAUSTED,
            cause=f"step budget {config.step_budget} exhausted",
            table=table,
            stats=outcome.stats,
        )
    if outcome.status == UNSAT:
        return UnsatReport(
            status=UNSAT,
            cause=None if admissible else reason,
            table=table,
            stats=outcome.stats,
        )

    starter_a = crt_merge(table, outcome.solution, IDENTITY, instance=instance)
    starter_b = crt_merge(table, outcome.solution, PHI_VARIANT, instance=instance)
    report_a = verify_pairing(starter_a)
    report_b = verify_pairing(starter_b)
    if not (report_a.is_strong and report_b.is_strong):
        raise InternalConsistencyError(
            "merged pairing failed strong verification although the base "
            "was a starter and the solution checked out; this is a bug")
    if starter_a.pairs == starter_b.pairs:
        raise InternalConsistencyError(
            "identity and phi merges coincide; this is a bug")
    return TriplicationResult(
        starter_a=starter_a,
        starter_b=starter_b,
        table=table,
        solution=outcome.solution,
        report_a=report_a,
        report_b=report_b,
        stats=outcome.stats,
    )
