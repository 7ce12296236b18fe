import json
import logging

import pytest

from satake import cache
from satake.cache import KLCache, attach_cache, cache_path, encode_record
from satake.errors import CacheError
from satake.klhecke import kl_engine, reset_engines
from satake.polys import IntPoly
from satake.rootdata import build_root_datum
from satake.weyl import affine_weyl_group

A2 = build_root_datum("A2")


@pytest.fixture
def fresh():
    reset_engines()
    yield
    reset_engines()


def _theta_pair():
    g = affine_weyl_group(A2)
    return g.max_coset_rep((0, 0)), g.max_coset_rep((1, 1))


def test_missing_and_empty_files(tmp_path):
    assert len(KLCache(tmp_path / "none.jsonl")) == 0
    (tmp_path / "empty.jsonl").write_bytes(b"")
    assert len(KLCache(tmp_path / "empty.jsonl")) == 0


def test_round_trip(tmp_path, fresh):
    x, y = _theta_pair()
    engine, store = attach_cache(A2, tmp_path)
    p = engine.P(x, y)
    assert p == IntPoly({0: 1, 1: 1})
    path = cache_path(A2, tmp_path)
    head = json.loads(path.read_text().splitlines()[0])
    assert head["format"] == cache.FORMAT and head["version"] == cache.VERSION
    reloaded = KLCache(path)
    assert len(reloaded) == len(store) > 0 and not reloaded.warnings
    reset_engines()
    engine2, store2 = attach_cache(A2, tmp_path)
    assert engine2.P(x, y) == p
    assert len(store2) == len(store)


def test_checksum_covers_polynomial():
    a = json.loads(encode_record("x", "y", IntPoly({0: 1})))
    b = json.loads(encode_record("x", "y", IntPoly({0: 2})))
    assert a["sha256"] != b["sha256"]


def test_corrupt_record_skipped(tmp_path, fresh, caplog):
    x, y = _theta_pair()
    engine, _ = attach_cache(A2, tmp_path)
    expected = engine.P(x, y)
    path = cache_path(A2, tmp_path)
    lines = path.read_bytes().split(b"\n")
    lines[1] = lines[1].replace(b'"p":{', b'"p":{"5":3,', 1)
    path.write_bytes(b"\n".join(lines))
    with caplog.at_level(logging.WARNING, logger=cache.__name__):
        store = KLCache(path)
    assert len(store.warnings) == 1 and "corrupted" in store.warnings[0]
    assert any("corrupted" in r.message for r in caplog.records)
    reset_engines()
    engine2, _ = attach_cache(A2, tmp_path)
    assert engine2.P(x, y) == expected


def test_truncated_tail_then_append(tmp_path, fresh):
    x, y = _theta_pair()
    engine, store = attach_cache(A2, tmp_path)
    engine.P(x, y)
    n = len(store)
    path = cache_path(A2, tmp_path)
    data = path.read_bytes()
    path.write_bytes(data[:-15])
    damaged = KLCache(path)
    assert len(damaged) == n - 1 and len(damaged.warnings) == 1
    g = affine_weyl_group(A2)
    damaged.record(g, x, y, IntPoly({0: 1, 1: 1}))
    healed = KLCache(path)
    assert not healed.warnings
    assert path.read_bytes().endswith(b"\n")


def test_version_mismatch_refused(tmp_path):
    p = tmp_path / "v.jsonl"
    p.write_text('{"format":"%s","version":99}\n' % cache.FORMAT)
    with pytest.raises(CacheError):
        KLCache(p)
    p.write_text('{"format":"something-else","version":1}\n')
    with pytest.raises(CacheError):
        KLCache(p)
    p.write_text("not json\n")
    with pytest.raises(CacheError):
        KLCache(p)


def test_env_var_directory(tmp_path, monkeypatch):
    monkeypatch.setenv(cache.ENV_VAR, str(tmp_path / "here"))
    assert cache.default_dir() == tmp_path / "here"
    assert cache_path(A2).parent == tmp_path / "here"


def test_warm_engine_matches_cold(tmp_path, fresh):
    g = affine_weyl_group(A2)
    pairs = [(g.max_coset_rep(m), g.max_coset_rep(l))
             for l, m in [((2, 2), (1, 1)), ((2, 2), (0, 0)), ((3, 0), (1, 1))]]
    cold_engine = kl_engine(A2)
    cold = [cold_engine.P(x, y) for x, y in pairs]
    reset_engines()
    warm_engine, _ = attach_cache(A2, tmp_path)
    assert [warm_engine.P(x, y) for x, y in pairs] == cold
    reset_engines()
    again, store = attach_cache(A2, tmp_path)
    assert len(store) > 0
    assert [again.P(x, y) for x, y in pairs] == cold
