"""Reference solutions that share no code with the package under test."""

import cmath
import math

import numpy as np


def exact_response(m, b, k, amp, omega, t, x0=0.0, v0=0.0):
    """Closed-form x(t), x_dot(t) of ``m x'' + b x' + k x = amp cos(omega t)``
    for an underdamped system (particular + homogeneous part)."""
    xp = amp / complex(k - m * omega**2, b * omega)
    disc = cmath.sqrt(b * b - 4 * m * k)
    r = (-b + disc) / (2 * m)
    assert r.imag > 0, "oracle handles the underdamped case only"
    # x_h = Re(c e^{rt}); match x(0) and x_dot(0)
    cr = x0 - xp.real
    target = v0 - (1j * omega * xp).real
    ci = (cr * r.real - target) / r.imag
    c = complex(cr, ci)
    t = np.asarray(t)
    e = np.exp(r * t)
    w = np.exp(1j * omega * t)
    x = (xp * w).real + (c * e).real
    xd = (1j * omega * xp * w).real + (c * r * e).real
    return x, xd


def argmax_on_grid(f, grid):
    vals = np.array([f(g) for g in grid])
    return grid[int(np.argmax(vals))], vals


def period_mean(f, omega, n=20000):
    """Mean of a T-periodic function via the midpoint rule on one period
    (spectrally accurate for smooth periodic integrands)."""
    T = 2 * math.pi / omega
    t = (np.arange(n) + 0.5) * T / n
    return float(np.mean(f(t)))
