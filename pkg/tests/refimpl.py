"""Independent reference implementations used as test oracles.

Everything here is written directly from the model formulas and brute-force
numerics (adaptive quadrature, nested quadrature, finite differences) with no
use of the package's closed-form antiderivatives or IVP reformulation, so
agreement between the two routes validates both.
"""

import numpy as np
from scipy.integrate import quad


def delta_formula(t, g, r, w0, nbar):
    """High-T diffusion coefficient, literal form."""
    wc = r * w0
    return (
        2.0 * g**2 * nbar * w0 * r**2 / (1.0 + r**2)
        * (1.0 - np.exp(-wc * t) * (np.cos(w0 * t) - np.sin(w0 * t) / r))
    )


def gamma_formula(t, g, r, w0, nbar):
    """Dissipation coefficient, literal form."""
    wc = r * w0
    return (
        g**2 * w0 * r**2 / (1.0 + r**2)
        * (1.0 - np.exp(-wc * t) * (np.cos(w0 * t) + r * np.sin(w0 * t)))
    )


def gamma_integral_quad(t, g, r, w0, nbar, epsrel=1e-13):
    value, _ = quad(
        lambda t1: gamma_formula(t1, g, r, w0, nbar),
        0.0, t, epsabs=1e-16, epsrel=epsrel, limit=800,
    )
    return value


def delta_integral_quad(t, g, r, w0, nbar, epsrel=1e-13):
    value, _ = quad(
        lambda t1: delta_formula(t1, g, r, w0, nbar),
        0.0, t, epsabs=1e-16, epsrel=epsrel, limit=800,
    )
    return value


def big_gamma_quad(t, g, r, w0, nbar, epsrel=1e-13):
    """Decay exponent by adaptive quadrature alone."""
    return 2.0 * gamma_integral_quad(t, g, r, w0, nbar, epsrel)


def damped_diffusion_nested_quad(t, g, r, w0, nbar):
    """Literal nested-quadrature evaluation of the damped diffusion integral.

    e^(-Gamma(t)) * int_0^t e^(Gamma(t1)) Delta(t1) dt1 with Gamma itself
    obtained by quadrature at every inner evaluation.  Only usable at small
    t, where e^(Gamma) is benign; that is exactly where it serves as oracle.
    """
    def integrand(t1):
        return np.exp(big_gamma_quad(t1, g, r, w0, nbar, epsrel=1e-11)) * delta_formula(
            t1, g, r, w0, nbar
        )

    inner, _ = quad(integrand, 0.0, t, epsabs=1e-16, epsrel=1e-11, limit=400)
    return np.exp(-big_gamma_quad(t, g, r, w0, nbar)) * inner


def central_difference(f, x, h):
    return (f(x + h) - f(x - h)) / (2.0 * h)
