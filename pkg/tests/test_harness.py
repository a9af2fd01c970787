import pytest

from tristarter import RefusedError, hill_climb, verify_pairing
from tristarter.files import load_starter
from tristarter.harness import (
    CSV_HEADER,
    run_inverse_sampling,
    run_key_sweep,
    run_order_sweep,
    run_repeat_subseries,
    starter_digest,
    write_key_means_csv,
    write_records_csv,
)
from tristarter.starters import Pairing, normalize

from fixtures import T7


def test_key_sweep_demo_base():
    records = run_key_sweep(T7)
    assert [r.key for r in records] == [1, 2, 4]
    assert all(r.status == "SAT" for r in records)
    assert all(r.order_base == 7 and r.order_result == 21 for r in records)
    assert all(r.starter_digest for r in records)


def test_key_sweep_count_law():
    for p in (7, 11, 13):
        base = hill_climb(p, seed=2)
        records = run_key_sweep(base)
        assert len(records) == (p - 1) // 2


def test_key_sweep_requires_strong_base():
    with pytest.raises(RefusedError):
        run_key_sweep(Pairing(7, ((1, 2), (3, 4), (5, 6))))


def test_key_sweep_worker_pool_same_records():
    serial = run_key_sweep(T7)
    pooled = run_key_sweep(T7, workers=3)
    assert [r.key for r in pooled] == [r.key for r in serial]
    assert [r.starter_digest for r in pooled] == [r.starter_digest for r in serial]


def test_digest_is_normalization_invariant():
    variant = Pairing(7, ((5, 1), (3, 2), (4, 6)))
    assert starter_digest(variant) == starter_digest(T7)
    other = hill_climb(7, seed=9)
    if normalize(other) != normalize(T7):
        assert starter_digest(other) != starter_digest(T7)


def test_csv_schema(tmp_path):
    records = run_key_sweep(T7)
    out = tmp_path / "sweep.csv"
    text = write_records_csv(records, out)
    lines = text.splitlines()
    assert lines[0] == CSV_HEADER
    assert len(lines) == 1 + len(records)
    assert out.read_text() == text
    # UNSAT rows leave the digest column empty, seeds are blank when absent
    for line in lines[1:]:
        fields = line.split(",")
        assert fields[3] == "SAT" and fields[7]


def test_order_sweep():
    result = run_order_sweep([7, 11, 13], seed=4)
    assert len(result.records) == 3
    assert result.failures == ()
    assert [r.order_base for r in result.records] == [7, 11, 13]
    assert all(r.status == "SAT" and r.seed is not None for r in result.records)


def test_order_sweep_empty():
    result = run_order_sweep([], seed=0)
    assert result.records == ()


def test_order_sweep_failure_does_not_abort():
    result = run_order_sweep([9, 7], seed=0)
    assert len(result.records) == 1
    assert result.records[0].order_base == 7
    assert len(result.failures) == 1 and result.failures[0][0] == 9


def test_order_sweep_deterministic():
    a = run_order_sweep([7, 13], seed=12)
    b = run_order_sweep([7, 13], seed=12)
    assert [r.starter_digest for r in a.records] == [r.starter_digest for r in b.records]
    assert [r.key for r in a.records] == [r.key for r in b.records]


def test_repeat_subseries_counts(tmp_path):
    result = run_repeat_subseries(T7, repeats=4)
    assert len(result.records) == 4 * 3
    assert len(result.key_means) == 3
    for key, mean in result.key_means:
        times = [r.solve_ms for r in result.records if r.key == key]
        assert len(times) == 4
        assert mean == pytest.approx(sum(times) / 4)
    statuses = {(r.key, r.status) for r in result.records}
    assert statuses == {(1, "SAT"), (2, "SAT"), (4, "SAT")}
    text = write_key_means_csv(result.key_means, 4, tmp_path / "means.csv")
    assert text.splitlines()[0] == "key,runs,mean_solve_ms"


def test_inverse_sampling_small():
    summary = run_inverse_sampling(21, samples=300, seed=5)
    assert summary.samples == 300
    assert summary.generation_failures == 0
    assert 0 < summary.inconclusive < 300
    assert summary.fraction == pytest.approx(summary.inconclusive / 300)


def test_inverse_sampling_order39_rarely_hits():
    summary = run_inverse_sampling(39, samples=60, seed=5)
    assert summary.inconclusive == 0


def test_sat_starter_digest_reloads_strong(tmp_path):
    from tristarter.assembly import triplicate

    result = triplicate(T7, 1)
    path = tmp_path / "a.json"
    from tristarter.files import save_starter

    save_starter(result.starter_a, path)
    reloaded = load_starter(path)
    assert verify_pairing(reloaded).is_strong
    assert starter_digest(reloaded) == starter_digest(result.starter_a)


def test_csv_identical_modulo_durations():
    def scrub(text):
        rows = []
        for line in text.splitlines()[1:]:
            fields = line.split(",")
            fields[4] = "_"
            rows.append(",".join(fields))
        return rows

    a = write_records_csv(run_order_sweep([7, 13, 19], seed=6).records, None)
    b = write_records_csv(run_order_sweep([7, 13, 19], seed=6).records, None)
    assert scrub(a) == scrub(b)


def test_series_spec_dispatch():
    from tristarter.harness import SeriesSpec, run_series

    records = run_series(SeriesSpec(mode="key-sweep", base=T7))
    assert [r.key for r in records] == [1, 2, 4]
    sweep = run_series(SeriesSpec(mode="order-sweep", orders=(7,), seed=2))
    assert len(sweep.records) == 1
    summary = run_series(SeriesSpec(mode="inverse-sampling", orders=(21,), samples=20, seed=1))
    assert summary.samples == 20
    with pytest.raises(RefusedError):
        SeriesSpec(mode="bogus")
    with pytest.raises(RefusedError):
        run_series(SeriesSpec(mode="key-sweep"))
