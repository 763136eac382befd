import numpy as np
import pytest


def composite_gauss(f, a, b, panels=20000, order=10):
    """Brute-force reference quadrature: fixed composite Gauss-Legendre."""
    x, w = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(a, b, panels + 1)
    mid = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * (edges[1] - edges[0])
    y = mid[:, None] + half * x[None, :]
    return float(half * np.sum(f(y) @ w))


@pytest.fixture(scope="session")
def reference_quadrature():
    return composite_gauss


def trapz(values, h):
    return float(np.trapezoid(values, dx=h)) if hasattr(np, "trapezoid") \
        else float(np.trapz(values, dx=h))
