import csv

import pytest

from mdse.bench import (
    BenchOp,
    BenchPoint,
    SizeAxis,
    bench_config,
    fit_scaling_exponent,
    parse_sizes,
    run_scaling_bench,
    time_median,
    write_csv,
)
from mdse.errors import NonMonotoneSizes, TooFewPoints
from mdse.generate import generate_graph


def _synthetic(power, scale=250.0):
    edges = [100 * 2**k for k in range(7)]
    return [BenchPoint(1, 1, e, int(scale * e**power), "mixture") for e in edges]


@pytest.mark.parametrize("power", [1.0, 2.0])
def test_recovers_synthetic_exponent(power):
    fit = fit_scaling_exponent(_synthetic(power))
    assert abs(fit.exponent - power) <= 0.01
    assert fit.r_squared > 0.999
    assert fit.size_axis is SizeAxis.EDGES


def test_n_times_m_axis():
    points = [BenchPoint(n, 4, 0, n * 4 * 10, "mixture") for n in (10, 20, 40, 80, 160)]
    assert fit_scaling_exponent(points, SizeAxis.N_TIMES_M).exponent == pytest.approx(1.0, abs=0.01)


def test_fit_errors():
    with pytest.raises(TooFewPoints):
        fit_scaling_exponent(_synthetic(1.0)[:4])
    pts = _synthetic(1.0)
    with pytest.raises(NonMonotoneSizes):
        fit_scaling_exponent(pts[:3] + [pts[1]] + pts[3:])


def test_empty_sizes():
    assert run_scaling_bench([], seed=0) == []


def test_repeated_size_is_stable():
    a, b = run_scaling_bench([(40, 6, 1.0), (40, 6, 1.0)], seed=0)
    assert max(a.wall_time, b.wall_time) / min(a.wall_time, b.wall_time) < 2.0


@pytest.mark.parametrize("op", list(BenchOp))
def test_ops_run(op):
    (p,) = run_scaling_bench([(10, 4, 0.5)], seed=3, op=op, repetitions=3)
    assert p.ops == op.value and p.repetitions == 3 and p.wall_time > 0


def test_bench_config_shape():
    g = generate_graph(bench_config(20, 7, 1.0, seed=1))
    assert g.shape.n == 20 and g.shape.m == 7
    assert [len(grp.members) for grp in g.groups] == [3, 4]


def test_time_median_positive():
    assert time_median(lambda: None, 3) >= 1


def test_parse_sizes():
    assert parse_sizes("60:8:1.0, 120:8:0.5,") == [(60, 8, 1.0), (120, 8, 0.5)]
    assert parse_sizes("") == []


def test_write_csv(tmp_path):
    path = tmp_path / "out.csv"
    write_csv(_synthetic(1.0)[:2], path)
    rows = list(csv.reader(path.open()))
    assert rows[0] == ["n", "m", "e", "median_ns", "repetitions"]
    assert rows[1] == ["1", "1", "100", "25000", "9"]
