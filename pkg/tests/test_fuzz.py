from circline_lab import curves as C
from circline_lab.fuzz import invariant_suite, manifest_bytes, run_fuzz, worker_count

EXPECTED = {"simple_ccw", "four_vertices", "key_lemma", "four_vertex_report", "tait_kneser",
            "inversion_contact"}


def test_suite_passes_on_ellipse():
    checks = invariant_suite(C.ellipse(2, 1))
    assert set(checks) == EXPECTED
    assert all(c["ok"] for c in checks.values()), checks


def test_suite_flags_non_simple_curve():
    checks = invariant_suite(C.figure_eight())
    assert not checks["simple_ccw"]["ok"]


def test_manifest_independent_of_workers():
    a, _ = run_fuzz(3, 3, 0.2, 9, workers=1)
    b, _ = run_fuzz(3, 3, 0.2, 9, workers=2)
    assert manifest_bytes(a) == manifest_bytes(b)
    assert [c["index"] for c in a["cases"]] == [0, 1, 2]


def test_overrides_recorded():
    m, _ = run_fuzz(1, 2, 0.2, 3, overrides={"max_iter": 300}, workers=1)
    assert m["tolerances"] == {"max_iter": 300}


def test_thread_cap(monkeypatch):
    monkeypatch.setenv("CIRCLINE_LAB_THREADS", "1")
    assert worker_count() == 1
