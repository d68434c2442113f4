# test_results_store.py
import pandas as pd

from results_store import LIBRARY_VERSION, ResultsStore, digest, get_store, load_json, write_json


def test_digest_ignores_key_order():
    assert digest({"a": 1, "b": [1, 2]}) == digest({"b": [1, 2], "a": 1})
    assert digest({"a": 1}) != digest({"a": 2})


def test_report_with_tables(tmp_path):
    store = ResultsStore(str(tmp_path / "out"))
    df = pd.DataFrame({"omega": [0.1, 0.2], "defect": [1e-3, 4e-3]})
    assert store.save_report("scan", {"slope": 1.2}, {"rows": df}, config_hash="abc")
    report = store.load_report("scan")
    assert report["slope"] == 1.2
    assert report["meta"] == {"library_version": LIBRARY_VERSION, "config_hash": "abc", "alphabet_hash": None}
    assert report["tables"] == {"rows": "scan_rows.csv"}
    assert store.load_table("scan", "rows").equals(df)


def test_saving_twice_gives_identical_files(tmp_path):
    store = ResultsStore(str(tmp_path))
    store.save_report("r", {"x": [1, 2]})
    first = open(store.path("r"), encoding="utf-8").read()
    store.save_report("r", {"x": [1, 2]})
    assert open(store.path("r"), encoding="utf-8").read() == first


def test_missing_report_loads_as_none(tmp_path):
    assert ResultsStore(str(tmp_path)).load_report("absent") is None


def test_store_is_replaced_for_a_new_directory(tmp_path):
    a = get_store(str(tmp_path / "a"))
    assert get_store(str(tmp_path / "a")) is a
    assert get_store(str(tmp_path / "b")).out_dir == str(tmp_path / "b")


def test_json_helpers(tmp_path):
    path = str(tmp_path / "nested" / "x.json")
    write_json(path, {"k": [1, 2]})
    assert load_json(path) == {"k": [1, 2]}
