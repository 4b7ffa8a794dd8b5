import numpy as np
import pytest

from stlopt import (
    EmptyWindowError,
    Interval,
    InsufficientHorizonError,
    Trace,
    TraceError,
    UnalignedTimeError,
    UnknownChannelError,
    load_trace_csv,
    save_trace_csv,
    window_indices,
)
from conftest import make_trace


def test_construction_invariants():
    with pytest.raises(ValueError, match="dt"):
        Trace(("x",), 0.0, 0.0, np.zeros((3, 1)))
    with pytest.raises(ValueError, match="at least one"):
        Trace(("x",), 0.0, 1.0, np.zeros((0, 1)))
    with pytest.raises(ValueError, match="columns"):
        Trace(("x", "y"), 0.0, 1.0, np.zeros((3, 1)))


def test_samples_are_frozen():
    tr = make_trace([1.0, 2.0])
    with pytest.raises(ValueError):
        tr.samples[0, 0] = 5.0


def test_time_index_alignment():
    tr = make_trace([0.0, 1.0, 2.0], dt=0.5)
    assert tr.time_index(0.5) == 1
    assert tr.time_index(0.5 + 5e-10) == 1
    with pytest.raises(UnalignedTimeError, match="unaligned"):
        tr.time_index(0.25)
    with pytest.raises(UnalignedTimeError, match="outside"):
        tr.time_index(7.0)


def test_unknown_channel():
    tr = make_trace([0.0])
    with pytest.raises(UnknownChannelError, match="unknown channel"):
        tr.column("z")


def test_window_indices_examples():
    tr = make_trace(np.zeros(6), dt=1.0)
    assert window_indices(tr, 0.0, Interval(3, 4)).tolist() == [3, 4]

    tr2 = make_trace(np.zeros(8), dt=0.5)
    assert window_indices(tr2, 1.0, Interval(1, 2)).tolist() == [4, 5, 6]


def test_window_empty_when_grid_skips():
    tr = make_trace(np.zeros(5), dt=5.0)
    with pytest.raises(EmptyWindowError, match="empty window"):
        window_indices(tr, 0.0, Interval(1, 2))


def test_window_past_trace_end():
    tr = make_trace(np.zeros(3), dt=1.0)
    with pytest.raises(InsufficientHorizonError):
        window_indices(tr, 0.0, Interval(2, 5))


def test_csv_roundtrip(tmp_path):
    path = str(tmp_path / "trace.csv")
    tr = make_trace(np.array([[0.1, 0.2], [0.3, 0.4], [0.5, 0.6]]), dt=0.1, channels=("x", "y"))
    save_trace_csv(tr, path)
    back = load_trace_csv(path)
    assert back.channels == ("x", "y")
    assert back.dt == pytest.approx(0.1, rel=1e-12)
    np.testing.assert_array_equal(back.samples, tr.samples)


def test_csv_rejects_non_uniform(tmp_path):
    path = str(tmp_path / "bad.csv")
    path_obj = tmp_path / "bad.csv"
    path_obj.write_text("time,x\n0.0,1\n1.0,2\n2.5,3\n")
    with pytest.raises(TraceError, match="non-uniform"):
        load_trace_csv(path)


def test_csv_rejects_decreasing_time(tmp_path):
    p = tmp_path / "bad.csv"
    p.write_text("time,x\n0.0,1\n2.0,2\n1.0,3\n")
    with pytest.raises(TraceError, match="strictly increasing"):
        load_trace_csv(str(p))


def test_csv_rejects_bad_header(tmp_path):
    p = tmp_path / "bad.csv"
    p.write_text("t,x\n0.0,1\n")
    with pytest.raises(TraceError, match="header"):
        load_trace_csv(str(p))


def test_csv_single_row(tmp_path):
    p = tmp_path / "one.csv"
    p.write_text("time,x\n0.0,1.5\n")
    tr = load_trace_csv(str(p))
    assert tr.n_samples == 1 and tr.value("x", 0) == 1.5
