import itertools

import numpy as np
import pytest

from dualmeet import _purescore
from dualmeet import backend

from oracles import oracle_score

try:
    from dualmeet import _fastscore
except ImportError:  # pragma: no cover
    _fastscore = None

BACKENDS = [("pure", _purescore.score_batch)]
if _fastscore is not None:
    BACKENDS.append(("compiled", _fastscore.score_batch))


def full_label_matrix(m_a, m_b):
    total = m_a + m_b
    rows = []
    for combo in itertools.combinations(range(total), m_a):
        row = np.ones(total, dtype=np.uint8)
        row[list(combo)] = 0
        rows.append(row)
    return np.array(rows)


@pytest.mark.parametrize("name,kernel", BACKENDS, ids=[b[0] for b in BACKENDS])
@pytest.mark.parametrize("m_a,m_b,n", [(6, 6, 4), (7, 7, 5), (6, 7, 5), (3, 2, 2)])
@pytest.mark.parametrize("displacement", [True, False])
def test_kernel_matches_reference_scorer(name, kernel, m_a, m_b, n, displacement):
    labels = full_label_matrix(m_a, m_b)
    got_a, got_b = kernel(labels, n, displacement)
    for row, a, b in zip(labels, got_a.tolist(), got_b.tolist()):
        positions = [k + 1 for k, code in enumerate(row.tolist()) if code == 0]
        assert (a, b) == oracle_score(positions, m_a, m_b, n, displacement)


@pytest.mark.skipif(_fastscore is None, reason="compiled kernel not built")
@pytest.mark.parametrize("displacement", [True, False])
def test_backends_agree_on_random_batches(displacement):
    rng = np.random.default_rng(7)
    for m_a, m_b, n in [(6, 6, 4), (7, 7, 5), (9, 7, 5), (5, 8, 4)]:
        base = np.array([0] * m_a + [1] * m_b, dtype=np.uint8)
        labels = np.array([rng.permutation(base) for _ in range(500)])
        pa, pb = _purescore.score_batch(labels, n, displacement)
        ca, cb = _fastscore.score_batch(labels, n, displacement)
        assert np.array_equal(pa, ca)
        assert np.array_equal(pb, cb)


def test_selected_backend_exposed():
    assert backend.BACKEND in ("pure", "compiled")
    labels = full_label_matrix(3, 3)
    a, b = backend.score_batch(labels, 2, True)
    assert a.shape == b.shape == (labels.shape[0],)
