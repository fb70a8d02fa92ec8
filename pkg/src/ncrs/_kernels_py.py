"""Pure numpy implementation of the pointwise kernels.

Used when the compiled ``_kernels`` extension is unavailable. Every function
here has a twin with the same signature in ``_kernels.pyx``.
"""
import numpy as np

BACKEND = "python"


def _flat(x):
    x = np.asarray(x, dtype=float)
    return x.ravel(), x.shape


def mollifier(x, a, norm):
    x, shape = _flat(x)
    out = np.zeros_like(x)
    m = np.abs(x) < 1.0
    xm = x[m]
    out[m] = np.exp(-a / (1.0 - xm * xm)) / norm
    return out.reshape(shape)


def mollifier_d(x, a, norm):
    x, shape = _flat(x)
    out = np.zeros_like(x)
    m = np.abs(x) < 1.0
    xm = x[m]
    q = 1.0 - xm * xm
    out[m] = -2.0 * a * xm / (q * q) * np.exp(-a / q) / norm
    return out.reshape(shape)


def _smoothstep(tau):
    return tau * tau * tau * (10.0 + tau * (-15.0 + 6.0 * tau))


def _smoothstep_d(tau):
    s = tau * (1.0 - tau)
    return 30.0 * s * s


def heps(x, eps, c):
    """Regularized Heaviside: 0 below -4eps, c on [-3eps, 3eps], 1 above 4eps."""
    x, shape = _flat(x)
    y = x / eps
    out = np.where(y >= 4.0, 1.0, 0.0)
    out = np.where((y >= -3.0) & (y <= 3.0), c, out)
    lo = (y > -4.0) & (y < -3.0)
    hi = (y > 3.0) & (y < 4.0)
    out[lo] = c * _smoothstep(y[lo] + 4.0)
    out[hi] = c + (1.0 - c) * _smoothstep(y[hi] - 3.0)
    return out.reshape(shape)


def heps_d(x, eps, c):
    x, shape = _flat(x)
    y = x / eps
    out = np.zeros_like(y)
    lo = (y > -4.0) & (y < -3.0)
    hi = (y > 3.0) & (y < 4.0)
    out[lo] = c * _smoothstep_d(y[lo] + 4.0) / eps
    out[hi] = (1.0 - c) * _smoothstep_d(y[hi] - 3.0) / eps
    return out.reshape(shape)


def _fields(x, t, params):
    u0, u1, s0, s1, phidot, edot, omega0, eps, c, a, norm = params
    x, t = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(t, dtype=float))
    xi = x - phidot * t
    e = edot * t
    if edot > 0.0:
        p = np.sqrt(2.0 * e / omega0)
        with np.errstate(divide="ignore", invalid="ignore"):
            pdot = np.where(p > 0.0, edot / (omega0 * p), 0.0)
    else:
        p = np.zeros_like(t)
        pdot = np.zeros_like(t)
    H = heps(-xi, eps, c)
    Hd = heps_d(-xi, eps, c)
    zr = (xi - 2.0 * eps) / eps
    zd = (xi + 2.0 * eps) / eps
    R = mollifier(zr, a, norm) / np.sqrt(eps)
    Rd = mollifier_d(zr, a, norm) / eps ** 1.5
    D = mollifier(zd, a, norm) / eps
    Dd = mollifier_d(zd, a, norm) / (eps * eps)
    return xi, e, p, pdot, H, Hd, R, Rd, D, Dd


def ansatz_values(x, t, params):
    u0, u1, s0, s1 = params[:4]
    _, e, p, _, H, _, R, _, D, _ = _fields(x, t, params)
    u = u0 + u1 * H + p * R
    sigma = s0 + s1 * H + e * D
    return u, sigma


def residual_density(x, t, params):
    """Pointwise u_t + u u_x - sigma_x and sigma_t + u sigma_x of the ansatz."""
    u0, u1, s0, s1, phidot, edot = params[:6]
    _, e, p, pdot, H, Hd, R, Rd, D, Dd = _fields(x, t, params)
    u = u0 + u1 * H + p * R
    u_x = -u1 * Hd + p * Rd
    u_t = u1 * phidot * Hd + pdot * R - p * phidot * Rd
    s_x = -s1 * Hd + e * Dd
    s_t = s1 * phidot * Hd + edot * D - e * phidot * Dd
    return u_t + u * u_x - s_x, s_t + u * s_x
