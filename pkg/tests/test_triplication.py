import pytest

from tristarter import (
    Pairing,
    RefusedError,
    StructuralError,
    build_table,
    check_key_admissible,
    compute_monochrome_sets,
    compute_weak_sets,
    hill_climb,
    row_differences,
)
from tristarter.triplication import admissible_keys, cardinality_violations

from fixtures import DEMO_DELTAS, DEMO_EXTENSION, DEMO_KEY, DEMO_MONO, DEMO_WEAK, T7, T13


def test_demo_table_extension():
    table = build_table(T7, DEMO_KEY)
    assert table.extension == DEMO_EXTENSION
    assert table.q == 3


def test_key_zero_duplicates_first_column():
    table = build_table(T7, 0)
    for i in range(1, table.q + 1):
        assert table.extension[3 * i - 2] == table.extension[3 * i - 1]


def test_table_formulas_for_other_key():
    # recompute the two column formulas independently
    t, p = 2, 7
    table = build_table(T7, t)
    for i, (x, y) in enumerate(T7.pairs, start=1):
        assert table.extension[3 * i - 2] == (x, y)
        assert table.extension[3 * i - 1] == ((t + x) % p, (t + y) % p)
        assert table.extension[3 * i] == ((t - y) % p, (t - x) % p)


def test_row_col_mapping():
    table = build_table(T7, DEMO_KEY)
    assert table.row_col(0) == (0, 2)
    assert [table.row_col(j) for j in range(1, 10)] == [
        (1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3)]
    for j in range(1, 10):
        assert table.index_of(*table.row_col(j)) == j


def test_build_table_refusals():
    with pytest.raises(RefusedError):
        build_table(Pairing(5, ((1, 4), (2, 3))), 1)   # p < 7
    with pytest.raises(RefusedError):
        build_table(Pairing(9, tuple((i, i + 1) for i in (1, 3, 5, 7))), 1)  # 3 | p
    with pytest.raises(StructuralError):
        build_table(T7, 7)   # key out of range
    nonstarter = Pairing(7, ((1, 2), (3, 4), (5, 6)))
    with pytest.raises(RefusedError):
        build_table(nonstarter, 1)
    build_table(nonstarter, 1, allow_nonstarter=True)


def test_demo_row_differences():
    table = build_table(T7, DEMO_KEY)
    assert row_differences(table) == DEMO_DELTAS


def test_row_differences_constant_per_row():
    table = build_table(T7, 4)
    deltas = row_differences(table)
    assert deltas[0] == 0
    for i, (x, y) in enumerate(T7.pairs, start=1):
        d = (x - y) % 7
        assert deltas[3 * i - 2] == deltas[3 * i - 1] == deltas[3 * i] == d


def test_demo_weak_sets():
    table = build_table(T7, DEMO_KEY)
    got = {w.sum: w.members for w in compute_weak_sets(table)}
    assert got == DEMO_WEAK
    kinds = {w.sum: w.kind for w in compute_weak_sets(table)}
    assert kinds == {0: 1, 3: 2, 5: 2, 6: 2}


def test_weak_sets_disjoint():
    table = build_table(T7, DEMO_KEY)
    seen = set()
    for w in compute_weak_sets(table):
        assert not (seen & set(w.members))
        seen |= set(w.members)


def test_t13_key3_has_type4_weak_set():
    table = build_table(T13, 3, allow_nonstarter=True)
    weak = {w.sum: w.kind for w in compute_weak_sets(table)}
    assert weak[1] == 4
    assert any("sum 1 has 4 members" in v for v in cardinality_violations(table))


def test_demo_monochrome_sets():
    table = build_table(T7, DEMO_KEY)
    sets = compute_monochrome_sets(table)
    for m in sets:
        real = tuple((pos.pair_index, pos.slot) for pos in m.positions if not pos.is_dummy)
        assert real == DEMO_MONO[m.color]
    assert any(pos.is_dummy for pos in sets[0].positions)
    assert not any(pos.is_dummy for m in sets[1:] for pos in m.positions)


@pytest.mark.parametrize("key", [0, 1, 4])
def test_monochrome_cardinalities_guaranteed(key):
    # cardinality 3 for nonzero colors, 2 for color 0, both key branches
    table = build_table(T7, key)
    for m in compute_monochrome_sets(table):
        real = sum(1 for pos in m.positions if not pos.is_dummy)
        assert real == (2 if m.color == 0 else 3)
    if key != 0:
        top = {(pos.pair_index, pos.slot) for pos in compute_monochrome_sets(table)[key].positions}
        assert {(0, 0), (0, 1)} <= top


def test_weak_set_bounds_for_strong_bases():
    # cardinality <= 3 overall and <= 2 at sum zero, across orders and keys
    for p in (7, 11, 13):
        base = hill_climb(p, seed=1)
        for key in range(p):
            table = build_table(base, key)
            for w in compute_weak_sets(table):
                assert w.kind <= 3
                if w.sum == 0:
                    assert w.kind <= 2
            assert cardinality_violations(table) == ()


def test_key_admissibility():
    assert check_key_admissible(T7, 0) == (False, "key is zero")
    assert check_key_admissible(T7, 5) == (False, "key in pair sums")
    assert check_key_admissible(T7, 1) == (True, "admissible")
    assert admissible_keys(T7) == (1, 2, 4)


def test_admissible_key_count_law():
    for p in (7, 11, 13, 17):
        base = hill_climb(p, seed=0)
        assert len(admissible_keys(base)) == (p - 1) // 2
