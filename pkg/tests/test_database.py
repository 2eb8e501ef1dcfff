import dataclasses
import filecmp

import pytest

from g2red import database as db
from g2red.forms import BinaryForm
from g2red.genus2 import AutLabel, absolute_invariants, igusa


def test_shells():
    assert db.shell(0) == [(0, 0)]
    for h in (1, 2, 7):
        s = db.shell(h)
        assert len(s) == 8 * h
        assert all(max(abs(a), abs(b)) == h for a, b in s)
        assert len(set(s)) == len(s)


def test_tuple_form():
    assert db.tuple_form(3, -7) == BinaryForm([1, 0, 3, 0, -7, 0, 1])


def test_swap_symmetry():
    # x -> 1/x swaps a and b
    for a, b in [(3, -7), (10, 1), (-4, 9)]:
        assert absolute_invariants(igusa(db.tuple_form(a, b))) == absolute_invariants(igusa(db.tuple_form(b, a)))


def test_degenerate_small_box():
    assert db.degenerate_tuples(5) == [(-1, -1), (3, 3)]


@pytest.fixture(scope="module")
def small_build():
    return db.build_database(12)


def test_first_rows_match_fixture(small_build):
    recs, stats = small_build
    ref = db.read_stats(db.fixture_path("table1.csv"))[:12]
    assert [s.table_row() for s in stats] == [s.table_row() for s in ref]
    assert stats[0].table_row() == (8, 5, 1, 0, 5)


def test_records_are_consistent(small_build):
    recs, stats = small_build
    assert len(recs) == 25 ** 2
    new = [r for r in recs if r.is_new_moduli_point]
    assert len(new) == stats[-1].cum_points
    assert all(r.aut is not None for r in recs if r.j10_nonzero)
    assert sum(1 for r in recs if not r.j10_nonzero) == 2


def test_moduli_dedup_is_finer(small_build):
    recs, stats = small_build
    _, stats_m = db.build_database(12, dedup="moduli")
    assert stats_m[-1].cum_points >= stats[-1].cum_points


def test_csv_roundtrip_and_determinism(tmp_path, small_build):
    recs, stats = small_build
    p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
    db.export_csv(recs, p1, kind="records")
    db.export_csv(db.build_database(12)[0], p2, kind="records")
    assert filecmp.cmp(p1, p2, shallow=False)
    back = db.read_records(p1)
    assert [(r.a, r.b, r.key, r.aut, r.is_new_moduli_point) for r in back] == \
           [(r.a, r.b, r.key, r.aut, r.is_new_moduli_point) for r in recs]
    s = tmp_path / "s.csv"
    db.export_csv(stats, s, kind="stats")
    assert [x.table_row() for x in db.read_stats(s)] == [x.table_row() for x in stats]


def test_parallel_matches_serial():
    assert [s.table_row() for s in db.build_table1(6, jobs=2)] == [s.table_row() for s in db.build_table1(6)]


def test_verify_table1_detects_mismatch(tmp_path):
    stats = db.build_table1(4)
    assert not db.verify_table1(stats).ok          # rows 5..100 missing
    assert db.verify_table1(stats, upto=4).ok
    stats[2] = dataclasses.replace(stats[2], new_moduli=stats[2].new_moduli + 1)
    rep = db.verify_table1(stats, upto=4)
    assert not rep.ok and len(rep.mismatches) == 1


def test_table2_fixture_keys():
    rep = db.verify_table2()
    assert len(rep.rows) == 57
    assert all(r["key_ok"] for r in rep.rows)
    assert all(r["r_ok"] for r in rep.rows)


def test_table2_listed_groups():
    # row 22 is listed with the generic group although its model has the V4 involutions
    rep = db.verify_table2()
    assert [r["num"] for r in rep.rows if not r["label_ok"]] == [22]
    row = next(r for r in rep.rows if r["num"] == 22)
    assert row["label"] is AutLabel.V4


@pytest.fixture(scope="module")
def table3():
    return db.verify_table3()


def test_table3_heights(table3):
    rep = table3
    assert len(rep.rows) == 19
    assert all(r["height_ok"] for r in rep.rows)


def test_table3_listed_models(table3):
    # three listed reduced models differ from ours in one coefficient and lie
    # on a different moduli point than their inputs
    rep = table3
    assert sorted(r["case"] for r in rep.rows if not r["key_ok"]) == [47, 51, 52]
    assert sum(1 for r in rep.rows if r["exact"]) == 16
