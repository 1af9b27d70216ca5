"""Shared randomized-input builders for the test suite."""

import numpy as np

from spinorbit_pd import ConverterParams, Strategy


def haar_unitary(dim, rng):
    """Haar-distributed unitary via QR of a complex Gaussian matrix."""
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_state(rng):
    amp = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    return amp / np.linalg.norm(amp)


def random_params(rng, theta_range=(0.0, 90.0), phi_range=(0.0, np.pi)):
    return ConverterParams(
        float(rng.uniform(*theta_range)), float(rng.uniform(*phi_range))
    )


def random_strategy(rng, **kw):
    p = random_params(rng, **kw)
    return Strategy.dialed(p.theta, p.phi)
