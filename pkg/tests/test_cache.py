import json
from pathlib import Path

from asm_qdet.core.cache import DeterminantCache
from asm_qdet.exactalg import QLaurent, X


def test_cache_counts_hits_and_misses():
    cache = DeterminantCache()
    calls: list[int] = []

    def compute() -> QLaurent:
        calls.append(1)
        return QLaurent.const(X + 2)

    assert cache.get_or_compute((2, 1), compute) == QLaurent.const(X + 2)
    assert cache.get_or_compute((2, 1), compute) == QLaurent.const(X + 2)

    assert len(calls) == 1
    assert cache.stats.misses == 1
    assert cache.stats.hits == 1
    assert (2, 1) in cache
    assert len(cache) == 1


def test_cache_clear():
    cache = DeterminantCache()
    cache.put((1, 1), QLaurent.const(1))
    cache.clear()

    assert len(cache) == 0
    assert cache.get((1, 1)) is None
    assert cache.stats.hits == 0


def test_cache_persists_to_disk(tmp_path: Path):
    value = QLaurent.monomial(-1, -(X + 1))
    DeterminantCache(tmp_path).put((2, 0), value)

    assert json.loads((tmp_path / "d_2_0.json").read_text()) == {"-1": ["-1/1", "-1/1"]}

    fresh = DeterminantCache(tmp_path)
    assert fresh.get((2, 0)) == value
    assert fresh.stats.disk_hits == 1
    assert fresh.get((2, 0)) == value
    assert fresh.stats.hits == 1


def test_cache_ignores_unreadable_entries(tmp_path: Path):
    (tmp_path / "d_3_1.json").write_text("not json")
    cache = DeterminantCache(tmp_path)

    assert cache.get((3, 1)) is None
    assert cache.get_or_compute((3, 1), lambda: QLaurent.const(7)) == QLaurent.const(7)
    assert json.loads((tmp_path / "d_3_1.json").read_text()) == {"0": ["7/1"]}
