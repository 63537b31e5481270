import numpy as np
import pytest

from spinhall.errors import MediumDomainError
from spinhall.medium import (Homogeneous, LinearGradient, ParabolicGrin, adiabaticity, grad_n,
                             refractive_index)

PROFILES = [
    Homogeneous(1.5),
    LinearGradient(1.0, (0.05, -0.02, 0.1)),
    ParabolicGrin(1.5, 0.02),
    ParabolicGrin(2.0, 0.05, (1, 1, 0)),
]


def test_examples():
    assert refractive_index(Homogeneous(1.5), (3, -2, 7)) == 1.5
    assert refractive_index(LinearGradient(1.0, (0, 0, 0.1)), (0, 0, 2)) == pytest.approx(1.2)
    m = ParabolicGrin(1.5, 0.02)
    assert refractive_index(m, (1, 0, 5)) == pytest.approx(1.49)
    assert np.allclose(grad_n(m, (1, 0, 5)), (-0.02, 0, 0))
    assert np.array_equal(grad_n(Homogeneous(1.5), (1, 2, 3)), np.zeros(3))
    g = (0.1, 0.2, -0.3)
    assert np.array_equal(grad_n(LinearGradient(1.0, g), (0.4, 0.1, 0.2)), g)


@pytest.mark.parametrize("m", PROFILES)
def test_gradient_matches_finite_differences(m):
    rng = np.random.default_rng(11)
    h = 1e-5
    for x in rng.uniform(-1, 1, size=(1000, 3)):
        fd = np.array([(refractive_index(m, x + h * e) - refractive_index(m, x - h * e)) / (2 * h)
                       for e in np.eye(3)])
        assert np.abs(fd - grad_n(m, x)).max() <= 1e-8


def test_off_axis_grin_along_axis_unchanged():
    m = ParabolicGrin(2.0, 0.05, (1, 1, 0))
    assert refractive_index(m, (3, 3, 0)) == 2.0
    assert refractive_index(m, (0, 0, 1)) == pytest.approx(2.0 - 0.025)


def test_nonpositive_index():
    with pytest.raises(MediumDomainError):
        refractive_index(LinearGradient(1.0, (0, 0, -0.1)), (0, 0, 10))
    with pytest.raises(MediumDomainError):
        refractive_index(ParabolicGrin(1.0, 0.5), (3, 0, 0))


def test_constructor_checks():
    for bad in (lambda: Homogeneous(0), lambda: LinearGradient(-1, (0, 0, 0)),
                lambda: ParabolicGrin(1, -0.1), lambda: LinearGradient(1, (0, 0))):
        with pytest.raises(ValueError):
            bad()


def test_adiabaticity():
    m = LinearGradient(2.0, (0, 0.3, 0.4))
    assert adiabaticity(m, (0, 0, 0), 1e-3) == pytest.approx(0.5 * 1e-3 / 4)
