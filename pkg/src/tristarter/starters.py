"""Residue pairings, starter verification, enumeration and generation.

A *pairing* of odd order n is an ordered tuple of (n-1)/2 ordered residue
pairs.  It is a starter when its pairs partition Z_n \\ {0} and the 2k
signed differences cover every nonzero residue exactly once; it is strong
when additionally the pair sums are pairwise distinct and nonzero.  Pair
order and within-pair order are significant downstream (the triplication
table is order-sensitive), so nothing here canonicalizes implicitly;
`normalize` exists for set-level comparisons only.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Optional

from . import _kernels
from .errors import InternalConsistencyError, RefusedError, SearchBudgetError, StructuralError

Pair = tuple[int, int]

DEFAULT_ENUMERATION_BOUND = 21
DEFAULT_HILL_CLIMB_STEPS = 1_000_000

# orders with no strong starter; everything else odd >= 7 works
_NO_STRONG_STARTER = frozenset({3, 5, 9})


def _check_pairs(modulus: int, pairs: tuple[Pair, ...], expect_len: Optional[int]) -> None:
    if expect_len is not None and len(pairs) != expect_len:
        raise StructuralError(
            f"pairing of order {modulus} must have {expect_len} pairs, got {len(pairs)}")
    for i, pair in enumerate(pairs):
        if len(pair) != 2:
            raise StructuralError(f"pair {i} is not a pair: {pair!r}")
        a, b = pair
        if not (isinstance(a, int) and isinstance(b, int)):
            raise StructuralError(f"pair {i} has non-integer entries: {pair!r}")
        if not (0 <= a < modulus and 0 <= b < modulus):
            raise StructuralError(
                f"pair {i} entry out of range [0, {modulus}): {pair!r}")


@dataclass(frozen=True)
class Pairing:
    """Ordered tuple of ordered residue pairs with a declared odd modulus."""

    modulus: int
    pairs: tuple[Pair, ...]

    def __post_init__(self):
        if not isinstance(self.modulus, int) or self.modulus < 3 or self.modulus % 2 == 0:
            raise StructuralError(f"modulus must be an odd integer >= 3, got {self.modulus!r}")
        object.__setattr__(self, "pairs", tuple((int(a), int(b)) for a, b in self.pairs))
        _check_pairs(self.modulus, self.pairs, (self.modulus - 1) // 2)

    @property
    def order(self) -> int:
        return self.modulus

    def elements(self) -> tuple[int, ...]:
        return tuple(x for pair in self.pairs for x in pair)


@dataclass(frozen=True)
class ReducedTuple:
    """Entrywise modular reduction of a pairing; keeps pair and entry order."""

    modulus: int
    pairs: tuple[Pair, ...]

    def __post_init__(self):
        if not isinstance(self.modulus, int) or self.modulus < 2:
            raise StructuralError(f"reduction modulus must be >= 2, got {self.modulus!r}")
        object.__setattr__(self, "pairs", tuple((int(a), int(b)) for a, b in self.pairs))
        _check_pairs(self.modulus, self.pairs, None)


@dataclass(frozen=True)
class VerificationReport:
    """Flags and diagnostics from checking the starter definitions."""

    is_partition: bool
    is_starter: bool
    is_strong: bool
    pair_sums: tuple[int, ...]
    pair_differences: tuple[int, ...]
    diagnostics: tuple[str, ...] = field(default=())


def pair_sums(pairing: Pairing) -> tuple[int, ...]:
    """Sums (a_i + b_i) mod n in pair order (multiplicity preserved)."""
    n = pairing.modulus
    return tuple((a + b) % n for a, b in pairing.pairs)


def pair_differences(pairing: Pairing) -> tuple[int, ...]:
    """The 2k signed differences ±(a_i - b_i) mod n, sorted as a multiset."""
    n = pairing.modulus
    out = []
    for a, b in pairing.pairs:
        out.append((a - b) % n)
        out.append((b - a) % n)
    return tuple(sorted(out))


def verify_pairing(pairing: Pairing) -> VerificationReport:
    """Check the partition / starter / strong-starter definitions.

    Structural problems (wrong length, range) are impossible here because
    `Pairing` validates on construction; every definitional violation is
    reported as a flag plus a diagnostic, never an exception.
    """
    n = pairing.modulus
    diagnostics: list[str] = []

    elements = pairing.elements()
    seen: set[int] = set()
    dup: set[int] = set()
    for x in elements:
        if x in seen:
            dup.add(x)
        seen.add(x)
    for x in sorted(dup):
        diagnostics.append(f"duplicate element {x}")
    if 0 in seen:
        diagnostics.append("element 0 present")
    is_partition = not dup and 0 not in seen

    diffs = pair_differences(pairing)
    diff_set = set(diffs)
    zero_diff = 0 in diff_set
    if zero_diff:
        diagnostics.append("zero difference (pair with equal entries)")
    repeated = len(diffs) != len(diff_set)
    if repeated or zero_diff:
        missing = sorted(set(range(1, n)) - diff_set)
        if missing:
            diagnostics.append("missing differences " + ", ".join(map(str, missing)))
    is_starter = is_partition and not zero_diff and not repeated

    sums = pair_sums(pairing)
    sum_seen: set[int] = set()
    sum_dup: set[int] = set()
    for s in sums:
        if s in sum_seen:
            sum_dup.add(s)
        sum_seen.add(s)
    for s in sorted(sum_dup):
        diagnostics.append(f"repeated sum {s}")
    if 0 in sum_seen:
        diagnostics.append("zero sum")
    is_strong = is_starter and not sum_dup and 0 not in sum_seen

    return VerificationReport(
        is_partition=is_partition,
        is_starter=is_starter,
        is_strong=is_strong,
        pair_sums=sums,
        pair_differences=diffs,
        diagnostics=tuple(diagnostics),
    )


def normalize(pairing: Pairing) -> Pairing:
    """Canonical form for set-level comparison and digesting.

    Orients each pair so its difference representative lies in [1, (n-1)/2]
    and sorts the pairs; the result is equal for any reordering/reorientation
    of the same underlying set of pairs.
    """
    n = pairing.modulus
    q = (n - 1) // 2
    oriented = []
    for a, b in pairing.pairs:
        d = (a - b) % n
        if d == 0 or d <= q:
            oriented.append((a, b))
        else:
            oriented.append((b, a))
    return Pairing(n, tuple(sorted(oriented)))


def reduce_mod(pairing: Pairing, m: int) -> ReducedTuple:
    """Entrywise reduction mod a divisor m of the order."""
    if not isinstance(m, int) or m < 2:
        raise StructuralError(f"reduction modulus must be an integer >= 2, got {m!r}")
    if pairing.modulus % m != 0:
        raise StructuralError(f"{m} does not divide the order {pairing.modulus}")
    return ReducedTuple(m, tuple((a % m, b % m) for a, b in pairing.pairs))


@dataclass(frozen=True)
class EnumerationResult:
    order: int
    count: int
    starters: Optional[tuple[Pairing, ...]]


def enumerate_strong_starters(
    n: int,
    cap: Optional[int] = None,
    bound: int = DEFAULT_ENUMERATION_BOUND,
) -> EnumerationResult:
    """Exact count of labeled strong starters of order n by exhaustive search.

    Pairings are counted as sets of unordered pairs.  With ``cap`` set, up to
    that many starters are also returned (normalized pair order as found by
    the search).  Orders above ``bound`` are refused; raising the bound past
    the default emits a warning because the search space grows steeply.
    """
    if not isinstance(n, int) or n < 3 or n % 2 == 0:
        raise StructuralError(f"order must be an odd integer >= 3, got {n!r}")
    if bound > DEFAULT_ENUMERATION_BOUND:
        warnings.warn(
            f"enumeration bound {bound} above the default "
            f"{DEFAULT_ENUMERATION_BOUND}; expect a long run",
            stacklevel=2,
        )
    if n > bound:
        raise RefusedError(
            f"order {n} above the enumeration bound {bound}; "
            "pass a larger bound explicitly to override")
    count, collected = _kernels.count_strong_starters(n, cap if cap else 0)
    starters = None
    if cap:
        starters = tuple(Pairing(n, tuple(pairs)) for pairs in collected)
    return EnumerationResult(order=n, count=count, starters=starters)


def hill_climb(n: int, seed: int = 0, max_steps: int = DEFAULT_HILL_CLIMB_STEPS) -> Pairing:
    """Generate a strong starter of order n; deterministic for fixed (n, seed)."""
    if not isinstance(n, int) or n < 3 or n % 2 == 0:
        raise StructuralError(f"order must be an odd integer >= 3, got {n!r}")
    if n in _NO_STRONG_STARTER:
        raise RefusedError(f"no strong starter of order {n} exists")
    pairs = _kernels.hill_climb_pairs(n, seed, max_steps)
    if pairs is None:
        raise SearchBudgetError(
            f"hill climb for order {n} exhausted {max_steps} steps "
            f"(seed {seed}); retry with another seed or a larger budget")
    result = Pairing(n, tuple(pairs))
    if not verify_pairing(result).is_strong:
        raise InternalConsistencyError(
            f"hill climb returned a non-strong pairing for order {n}")
    return result


def kernel_backend() -> str:
    """Which kernel implementation is active: 'compiled' or 'pure'."""
    return _kernels.BACKEND
