# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled pointwise kernels; same signatures as ``_kernels_py``."""
import numpy as np
cimport numpy as cnp
from libc.math cimport exp, sqrt, fabs

cnp.import_array()

BACKEND = "cython"


cdef inline double _moll(double x, double a, double norm) noexcept nogil:
    cdef double q
    if fabs(x) >= 1.0:
        return 0.0
    q = 1.0 - x * x
    return exp(-a / q) / norm


cdef inline double _moll_d(double x, double a, double norm) noexcept nogil:
    cdef double q
    if fabs(x) >= 1.0:
        return 0.0
    q = 1.0 - x * x
    return -2.0 * a * x / (q * q) * exp(-a / q) / norm


cdef inline double _step(double tau) noexcept nogil:
    return tau * tau * tau * (10.0 + tau * (-15.0 + 6.0 * tau))


cdef inline double _step_d(double tau) noexcept nogil:
    cdef double s = tau * (1.0 - tau)
    return 30.0 * s * s


cdef inline double _heps(double x, double eps, double c) noexcept nogil:
    cdef double y = x / eps
    if y <= -4.0:
        return 0.0
    if y >= 4.0:
        return 1.0
    if y < -3.0:
        return c * _step(y + 4.0)
    if y > 3.0:
        return c + (1.0 - c) * _step(y - 3.0)
    return c


cdef inline double _heps_d(double x, double eps, double c) noexcept nogil:
    cdef double y = x / eps
    if y > -4.0 and y < -3.0:
        return c * _step_d(y + 4.0) / eps
    if y > 3.0 and y < 4.0:
        return (1.0 - c) * _step_d(y - 3.0) / eps
    return 0.0


def mollifier(x, double a, double norm):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] xv = np.ascontiguousarray(x, dtype=np.float64).ravel()
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty_like(xv)
    cdef Py_ssize_t i, n = xv.shape[0]
    with nogil:
        for i in range(n):
            out[i] = _moll(xv[i], a, norm)
    return out.reshape(np.shape(x))


def mollifier_d(x, double a, double norm):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] xv = np.ascontiguousarray(x, dtype=np.float64).ravel()
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty_like(xv)
    cdef Py_ssize_t i, n = xv.shape[0]
    with nogil:
        for i in range(n):
            out[i] = _moll_d(xv[i], a, norm)
    return out.reshape(np.shape(x))


def heps(x, double eps, double c):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] xv = np.ascontiguousarray(x, dtype=np.float64).ravel()
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty_like(xv)
    cdef Py_ssize_t i, n = xv.shape[0]
    with nogil:
        for i in range(n):
            out[i] = _heps(xv[i], eps, c)
    return out.reshape(np.shape(x))


def heps_d(x, double eps, double c):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] xv = np.ascontiguousarray(x, dtype=np.float64).ravel()
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty_like(xv)
    cdef Py_ssize_t i, n = xv.shape[0]
    with nogil:
        for i in range(n):
            out[i] = _heps_d(xv[i], eps, c)
    return out.reshape(np.shape(x))


cdef void _point(double x, double t, double u0, double u1, double s0, double s1,
                 double phidot, double edot, double omega0, double eps, double c,
                 double a, double norm, double* out) noexcept nogil:
    # out: u, sigma, res1, res2
    cdef double xi = x - phidot * t
    cdef double e = edot * t
    cdef double p = 0.0, pdot = 0.0
    cdef double H, Hd, zr, zd, R, Rd, D, Dd, u, u_x, u_t, s_x, s_t
    cdef double seps = sqrt(eps)
    if edot > 0.0:
        p = sqrt(2.0 * e / omega0)
        if p > 0.0:
            pdot = edot / (omega0 * p)
    H = _heps(-xi, eps, c)
    Hd = _heps_d(-xi, eps, c)
    zr = (xi - 2.0 * eps) / eps
    zd = (xi + 2.0 * eps) / eps
    R = _moll(zr, a, norm) / seps
    Rd = _moll_d(zr, a, norm) / (eps * seps)
    D = _moll(zd, a, norm) / eps
    Dd = _moll_d(zd, a, norm) / (eps * eps)
    u = u0 + u1 * H + p * R
    u_x = -u1 * Hd + p * Rd
    u_t = u1 * phidot * Hd + pdot * R - p * phidot * Rd
    s_x = -s1 * Hd + e * Dd
    s_t = s1 * phidot * Hd + edot * D - e * phidot * Dd
    out[0] = u
    out[1] = s0 + s1 * H + e * D
    out[2] = u_t + u * u_x - s_x
    out[3] = s_t + u * s_x


def ansatz_values(x, t, params):
    cdef double u0, u1, s0, s1, phidot, edot, omega0, eps, c, a, norm
    u0, u1, s0, s1, phidot, edot, omega0, eps, c, a, norm = params
    xb, tb = np.broadcast_arrays(np.asarray(x, dtype=np.float64), np.asarray(t, dtype=np.float64))
    shape = xb.shape
    cdef cnp.ndarray[cnp.float64_t, ndim=1] xv = np.ascontiguousarray(xb).ravel()
    cdef cnp.ndarray[cnp.float64_t, ndim=1] tv = np.ascontiguousarray(tb).ravel()
    cdef Py_ssize_t i, n = xv.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] u = np.empty(n)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] s = np.empty(n)
    cdef double buf[4]
    with nogil:
        for i in range(n):
            _point(xv[i], tv[i], u0, u1, s0, s1, phidot, edot, omega0, eps, c, a, norm, buf)
            u[i] = buf[0]
            s[i] = buf[1]
    return u.reshape(shape), s.reshape(shape)


def residual_density(x, t, params):
    cdef double u0, u1, s0, s1, phidot, edot, omega0, eps, c, a, norm
    u0, u1, s0, s1, phidot, edot, omega0, eps, c, a, norm = params
    xb, tb = np.broadcast_arrays(np.asarray(x, dtype=np.float64), np.asarray(t, dtype=np.float64))
    shape = xb.shape
    cdef cnp.ndarray[cnp.float64_t, ndim=1] xv = np.ascontiguousarray(xb).ravel()
    cdef cnp.ndarray[cnp.float64_t, ndim=1] tv = np.ascontiguousarray(tb).ravel()
    cdef Py_ssize_t i, n = xv.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] r1 = np.empty(n)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] r2 = np.empty(n)
    cdef double buf[4]
    with nogil:
        for i in range(n):
            _point(xv[i], tv[i], u0, u1, s0, s1, phidot, edot, omega0, eps, c, a, norm, buf)
            r1[i] = buf[2]
            r2[i] = buf[3]
    return r1.reshape(shape), r2.reshape(shape)
