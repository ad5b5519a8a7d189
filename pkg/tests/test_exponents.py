import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ctrwfractal import (CoupledShlesinger, MixtureSubordinator, StableRadial,
                         SumExponent, eval_exponent)


def test_mixture_single_atom_value():
    fam = MixtureSubordinator([(0.5, 1.0)])
    v = eval_exponent(fam, 1.0, 0.0)
    assert v == pytest.approx(np.cos(np.pi / 4) - 1j * np.sin(np.pi / 4))


def test_all_families_vanish_at_origin():
    fams = [
        StableRadial(1.5, 2),
        MixtureSubordinator([(0.3, 2.0), (0.7, 1.0)]),
        CoupledShlesinger(0.6),
        SumExponent(MixtureSubordinator([(0.5, 1.0)]), StableRadial(2.0, 1)),
    ]
    for fam in fams:
        xi = np.zeros(getattr(fam, "d", 1) or 1)
        assert eval_exponent(fam, 0.0, xi) == 0.0


def test_shlesinger_on_axis():
    fam = CoupledShlesinger(0.5)
    assert eval_exponent(fam, 0.0, 1.0) == pytest.approx(1.0)
    assert eval_exponent(fam, 1.0, 0.0) == pytest.approx(1.0)
    assert eval_exponent(fam, 3.0, 1.0) == pytest.approx(2.0)


def test_stable_radial_matches_norm_power():
    fam = StableRadial(1.3, 2)
    v = eval_exponent(fam, 0.0, [3.0, 4.0])
    assert v == pytest.approx(5.0**1.3)


@settings(max_examples=200, deadline=None)
@given(
    eta=st.floats(-1e6, 1e6, allow_nan=False),
    b1=st.floats(0.05, 0.6),
    b2=st.floats(0.65, 0.95),
    d1=st.floats(0.1, 10.0),
    d2=st.floats(0.1, 10.0),
)
def test_mixture_hermitian_and_nonneg_real(eta, b1, b2, d1, d2):
    fam = MixtureSubordinator([(b1, d1), (b2, d2)])
    v = eval_exponent(fam, eta, 0.0)
    w = eval_exponent(fam, -eta, 0.0)
    assert v.real >= 0.0
    assert w == pytest.approx(v.conjugate(), rel=1e-12, abs=1e-12)


def test_nonnegative_real_part_on_grid():
    fam = SumExponent(MixtureSubordinator([(0.4, 1.0), (0.8, 0.5)]),
                      StableRadial(1.5, 1))
    etas = np.concatenate([-(2.0 ** np.arange(10)), [0.0], 2.0 ** np.arange(10)])
    for eta in etas:
        for xi in 2.0 ** np.arange(-5, 15):
            assert eval_exponent(fam, eta, xi).real >= 0.0


def test_mixture_laplace_form():
    fam = MixtureSubordinator([(0.5, 2.0), (0.8, 1.0)])
    s = np.array([0.5, 1.0, 4.0])
    want = (2.0 * s) ** 0.5 + s**0.8
    assert np.allclose(fam.laplace(s), want)


def test_parameter_validation():
    with pytest.raises(ValueError):
        StableRadial(2.5)
    with pytest.raises(ValueError):
        MixtureSubordinator([])
    with pytest.raises(ValueError):
        MixtureSubordinator([(1.2, 1.0)])
    with pytest.raises(ValueError):
        CoupledShlesinger(1.0)
