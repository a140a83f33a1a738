import numpy as np
import pytest

import ejakit


def test_algebra_dimensions():
    a = ejakit.algebra({"kind": "complex", "n": 3}, {"kind": "spin", "k": 4})
    assert a.dim == 9 + 5
    assert a.rank == 3 + 2


def test_peel_documented_example():
    r3 = ejakit.algebra({"kind": "real", "n": 3})
    # Diagonal coordinates come first in the basis.
    v = ejakit.Element(r3, np.array([0.9, 0.9, 0.3, 0.0, 0.0, 0.0]))
    values, projections = ejakit.peel(v)
    assert values == pytest.approx([0.9, 0.3], abs=1e-12)
    assert len(projections) == 2
    assert all(ejakit.is_sharp(p) for p in projections)


def test_eigenvalues_match_numpy():
    r2 = ejakit.algebra({"kind": "real", "n": 2})
    rng = np.random.default_rng(5)
    for _ in range(10):
        a, b, c = rng.normal(size=3)
        # Coordinates: E11, E22, (E12 + E21) / sqrt(2).
        x = ejakit.Element(r2, np.array([a, b, c]))
        m = np.array([[a, c / np.sqrt(2)], [c / np.sqrt(2), b]])
        assert sorted(ejakit.eigenvalues(x)) == pytest.approx(sorted(np.linalg.eigvalsh(m)), abs=1e-12)
        values, _ = ejakit.diagonalize(x)
        assert sorted(values) == pytest.approx(sorted(np.linalg.eigvalsh(m)), abs=1e-8)


def test_transition_probability_is_symmetric():
    c3 = ejakit.algebra({"kind": "complex", "n": 3})
    p, q = ejakit.random_atom(c3, 1), ejakit.random_atom(c3, 2)
    assert ejakit.transition_probability(p, q) == pytest.approx(ejakit.transition_probability(q, p), abs=1e-12)


def test_run_check_reports():
    h2 = ejakit.algebra({"kind": "quaternion", "n": 2})
    report = ejakit.run_check("assert_bicomplement", h2, seed=3, trials=10)
    assert report["check_id"] == "assert_bicomplement"
    assert report["failures"] == 0
    assert set(ejakit.check_ids()) >= {"images", "self_duality"}


def test_tensor_and_scan():
    r2 = ejakit.algebra({"kind": "real", "n": 2})
    r3 = ejakit.algebra({"kind": "real", "n": 3})
    assert ejakit.tensor(r2, r3).dim == 21
    with pytest.raises(TypeError):
        ejakit.tensor(r2, ejakit.algebra({"kind": "complex", "n": 2}))
    quaternion = [e for e in ejakit.scan()["entries"] if e["kind"] == "quaternion"]
    assert all(e["excluded_at_power"] == 2 for e in quaternion)


def test_bad_input_raises():
    with pytest.raises(ValueError):
        ejakit.algebra({"kind": "octonion", "n": 3})
    with pytest.raises(ValueError):
        ejakit.Tolerances(op=-1.0)
