import pytest
from hypothesis import given, settings, strategies as st

from toriczeta.lattice import resolution_fan, toric_ideal
from toriczeta.oracle import (
    JetCountTask, SearchSpaceTooLarge, active_backend, compare_with_series, count_image_jets,
    count_jets, finite_field, prime_power, singularity_task,
)

CROSS = [[(1, {0: 1, 1: 1})]]               # xy = 0
CUSP = [[(1, {0: 2}), (-1, {1: 3})]]         # x^2 = y^3
PARABOLA = [[(1, {1: 1}), (-1, {0: 2})]]     # y = x^2
A1 = [[(1, {0: 1, 2: 1}), (-1, {1: 2})]]     # xz = y^2


@pytest.fixture(params=["numba", "numpy"])
def backend(request, monkeypatch):
    monkeypatch.setenv("TORICZETA_KERNELS", request.param)
    assert active_backend() == request.param
    return request.param


@given(st.sampled_from([2, 3, 4, 5, 7, 8, 9]), st.data())
@settings(max_examples=40, deadline=None)
def test_field_axioms(q, data):
    F = finite_field(q)
    x, y, z = (data.draw(st.integers(0, q - 1)) for _ in range(3))
    assert F.add[F.add[x, y], z] == F.add[x, F.add[y, z]]
    assert F.mul[x, F.add[y, z]] == F.add[F.mul[x, y], F.mul[x, z]]
    assert F.add[x, F.neg[x]] == 0
    if x:
        assert any(F.mul[x, w] == 1 for w in range(q))


@pytest.mark.parametrize("bad", [0, 1, 6, 12])
def test_prime_power_rejects(bad):
    with pytest.raises(ValueError):
        prime_power(bad)


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_point_counts(backend, q):
    assert count_jets(JetCountTask(CROSS, 2, 0, q, at_origin=False)) == 2 * q - 1
    assert count_jets(JetCountTask(CUSP, 2, 0, q, at_origin=False)) == q
    assert count_jets(JetCountTask(A1, 3, 0, q, at_origin=False)) == q * q


@pytest.mark.parametrize("n", range(4))
def test_smooth_counts(backend, n):
    q = 3
    assert count_jets(JetCountTask([], 3, n, q)) == q ** (3 * n)
    assert count_jets(JetCountTask([], 2, n, q, at_origin=False)) == q ** (2 * (n + 1))
    assert count_jets(JetCountTask(PARABOLA, 2, n, q, at_origin=False)) == q ** (n + 1)
    assert count_jets(JetCountTask(PARABOLA, 2, n, q)) == q ** n


@pytest.mark.parametrize("pq,n,q", [((1, 2), 3, 3), ((3, 7), 2, 3), ((2, 7), 2, 5), ((1, 3), 4, 2), ((2, 5), 2, 4)])
def test_backends_agree(monkeypatch, pq, n, q):
    task = singularity_task(*pq, n, q)
    counts = {}
    for name in ("numba", "numpy"):
        monkeypatch.setenv("TORICZETA_KERNELS", name)
        counts[name] = count_jets(task)
    assert counts["numba"] == counts["numpy"]


@pytest.mark.parametrize("workers", [1, 2, 5])
def test_partition_independent(workers):
    task = singularity_task(3, 7, 2, 3)
    assert count_jets(task, workers=workers) == count_jets(task, workers=1)


def test_image_counts_decrease(backend):
    counts = [count_image_jets(CUSP, 2, m, 3, 2) for m in range(2, 6)]
    assert counts == sorted(counts, reverse=True)
    assert counts[0] == count_jets(JetCountTask(CUSP, 2, 2, 3))


def test_space_limit():
    task = singularity_task(3, 7, 6, 5, max_space=10**6)
    with pytest.raises(SearchSpaceTooLarge):
        count_jets(task)


def test_task_validation():
    with pytest.raises(ValueError):
        JetCountTask(CROSS, 1, 0, 3)
    with pytest.raises(ValueError):
        JetCountTask(CROSS, 2, -1, 3)
    with pytest.raises(ValueError):
        JetCountTask(CROSS, 2, 1, 6)
    with pytest.raises(ValueError):
        count_image_jets(CROSS, 3, 2, 3, 2)


def test_binomial_objects_accepted():
    from toriczeta.lattice import embedding_ideal
    c = resolution_fan((1, 3)).c_seq
    a = count_jets(JetCountTask(embedding_ideal(c), 3, 3, 3))
    b = count_jets(JetCountTask(toric_ideal(c), 3, 3, 3))
    assert a == b


def test_compare_reports_skipped_rows():
    check = compare_with_series(3, 7, 3, 5, max_space=10**6)
    assert [r["status"] for r in check.rows] == ["PASS", "PASS", "SKIPPED", "SKIPPED"]
    assert not check.passed
    assert set(check.to_json()) == {"p", "q", "field", "passed", "rows"}


def test_backend_flag_validated(monkeypatch):
    monkeypatch.setenv("TORICZETA_KERNELS", "fortran")
    with pytest.raises(ValueError):
        active_backend()
