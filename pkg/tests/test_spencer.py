"""Spencer complex: differential, frozen dimensions, preimage solver."""

import pytest

from jetcartan.rings import Ring
from jetcartan.spencer import partial, complex_certificate, solve_preimage
from jetcartan.errors import NotClosed
from jetcartan.rand import Gen


def test_partial_squared_zero():
    g = Gen(1)
    for n in (1, 2, 3):
        for k in (0, 1, 2):
            ring = Ring.jet(n, k + 1)
            for l in range(0, n):
                c = g.cochain(ring, k + 1, l)
                assert partial(partial(c)).is_zero()


@pytest.mark.parametrize("n,k,dims,ranks", [
    (2, 0, (6, 8, 2), (6, 2)),
    (2, 1, (8, 12, 4), (8, 4)),
])
def test_frozen_certificates(n, k, dims, ranks):
    cert = complex_certificate(n, k)
    assert tuple(cert["dims"]) == dims
    assert tuple(cert["ranks"]) == ranks
    assert cert["exact"]


def test_exactness_small_range():
    for n in (1, 2, 3):
        for k in (0, 1, 2):
            assert complex_certificate(n, k)["exact"]


def test_preimage_round_trip():
    g = Gen(2)
    ring = Ring.jet(2, 2)
    for _ in range(5):
        a = g.cochain(ring, 1, 1)
        target = partial(a)
        s = solve_preimage(target, 1)
        assert partial(s) == target


def test_preimage_rejects_nonclosed():
    g = Gen(3)
    bad = g.cochain(Ring.jet(2, 2), 0, 1)
    if partial(bad).is_zero():      # exceedingly unlikely; make it loud
        pytest.fail("random cochain unexpectedly closed")
    with pytest.raises(NotClosed):
        solve_preimage(bad, 1)
