# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled shooting integrator, the hot kernel behind the ODE oracle.

Line-for-line twin of ``_shoot_py``; keep the two synchronized.  The
eigenvalue search evaluates this kernel thousands of times per level,
which is why it is compiled.
"""

from libc.math cimport exp, expm1, fabs, pow, sqrt

VARIANT_APPROX = 0
VARIANT_EXACT = 1

cdef double _A2 = 0.2, _A3 = 0.3, _A4 = 0.6, _A5 = 1.0, _A6 = 0.875
cdef double _B21 = 0.2
cdef double _B31 = 3.0 / 40.0, _B32 = 9.0 / 40.0
cdef double _B41 = 0.3, _B42 = -0.9, _B43 = 1.2
cdef double _B51 = -11.0 / 54.0, _B52 = 2.5, _B53 = -70.0 / 27.0, _B54 = 35.0 / 27.0
cdef double _B61 = 1631.0 / 55296.0, _B62 = 175.0 / 512.0, _B63 = 575.0 / 13824.0
cdef double _B64 = 44275.0 / 110592.0, _B65 = 253.0 / 4096.0
cdef double _C1 = 37.0 / 378.0, _C3 = 250.0 / 621.0, _C4 = 125.0 / 594.0, _C6 = 512.0 / 1771.0
cdef double _D1 = _C1 - 2825.0 / 27648.0
cdef double _D3 = _C3 - 18575.0 / 48384.0
cdef double _D4 = _C4 - 13525.0 / 55296.0
cdef double _D5 = -277.0 / 14336.0
cdef double _D6 = _C6 - 0.25
cdef double _RENORM = 1e100


cdef inline double _w(int variant, double m, double a, double g, double jj,
                      double E, double r) nogil:
    cdef double eps2 = m * m - E * E
    cdef double x, u, v, uv, inv_r, ear
    if variant == 0:
        x = -2.0 * a * r
        u = exp(x)
        v = -expm1(x)
        uv = u / v
        return (eps2
                + 4.0 * a * a * jj * (jj + 1.0) * uv / v
                - 4.0 * a * a * g * g * u * uv / v
                - 4.0 * a * E * g * uv)
    inv_r = 1.0 / r
    ear = exp(-a * r)
    return (jj * (jj + 1.0) * inv_r * inv_r
            - g * g * ear * ear * inv_r * inv_r
            - 2.0 * E * g * ear * inv_r
            + eps2)


def w_value(int variant, double m, double a, double g, double jj, double E, double r):
    """Coefficient W(r) of F'' = W(r) F for the chosen equation variant."""
    return _w(variant, m, a, g, jj, E, r)


cdef int _integrate(int variant, double m, double a, double g, double jj, double E,
                    double r, double r_end, double* f_io, double* fp_io,
                    double rtol, double h, long* nodes_io) nogil:
    cdef double direction = 1.0 if r_end > r else -1.0
    cdef double span = fabs(r_end - r)
    cdef double h_floor = span * 1e-15 + 1e-300
    cdef double f = f_io[0]
    cdef double fp = fp_io[0]
    cdef long nodes = 0
    cdef long guard = 0
    cdef long max_iter = 10000000
    cdef double w1, rf, yf, yp
    cdef double k1f, k1p, k2f, k2p, k3f, k3p, k4f, k4p, k5f, k5p, k6f, k6p
    cdef double f_new, fp_new, err_f, err_p, kbar, sc_f, sc_p, err, ep, factor, mag

    h = fabs(h) * direction
    while (r_end - r) * direction > 0.0:
        guard += 1
        if guard > max_iter:
            f_io[0] = f
            fp_io[0] = fp
            nodes_io[0] = nodes
            return 0
        if (r + h - r_end) * direction > 0.0:
            h = r_end - r

        w1 = _w(variant, m, a, g, jj, E, r)
        k1f = fp
        k1p = w1 * f

        rf = r + _A2 * h
        yf = f + h * _B21 * k1f
        yp = fp + h * _B21 * k1p
        k2f = yp
        k2p = _w(variant, m, a, g, jj, E, rf) * yf

        rf = r + _A3 * h
        yf = f + h * (_B31 * k1f + _B32 * k2f)
        yp = fp + h * (_B31 * k1p + _B32 * k2p)
        k3f = yp
        k3p = _w(variant, m, a, g, jj, E, rf) * yf

        rf = r + _A4 * h
        yf = f + h * (_B41 * k1f + _B42 * k2f + _B43 * k3f)
        yp = fp + h * (_B41 * k1p + _B42 * k2p + _B43 * k3p)
        k4f = yp
        k4p = _w(variant, m, a, g, jj, E, rf) * yf

        rf = r + _A5 * h
        yf = f + h * (_B51 * k1f + _B52 * k2f + _B53 * k3f + _B54 * k4f)
        yp = fp + h * (_B51 * k1p + _B52 * k2p + _B53 * k3p + _B54 * k4p)
        k5f = yp
        k5p = _w(variant, m, a, g, jj, E, rf) * yf

        rf = r + _A6 * h
        yf = f + h * (_B61 * k1f + _B62 * k2f + _B63 * k3f + _B64 * k4f + _B65 * k5f)
        yp = fp + h * (_B61 * k1p + _B62 * k2p + _B63 * k3p + _B64 * k4p + _B65 * k5p)
        k6f = yp
        k6p = _w(variant, m, a, g, jj, E, rf) * yf

        f_new = f + h * (_C1 * k1f + _C3 * k3f + _C4 * k4f + _C6 * k6f)
        fp_new = fp + h * (_C1 * k1p + _C3 * k3p + _C4 * k4p + _C6 * k6p)
        err_f = h * (_D1 * k1f + _D3 * k3f + _D4 * k4f + _D5 * k5f + _D6 * k6f)
        err_p = h * (_D1 * k1p + _D3 * k3p + _D4 * k4p + _D5 * k5p + _D6 * k6p)

        kbar = sqrt(fabs(w1)) + 1e-30
        sc_f = rtol * (fabs(f) + fabs(fp) / kbar) + 1e-290
        sc_p = rtol * (fabs(fp) + kbar * fabs(f)) + 1e-290
        err = fabs(err_f) / sc_f
        ep = fabs(err_p) / sc_p
        if ep > err:
            err = ep

        if err <= 1.0:
            r += h
            if f != 0.0 and f_new != 0.0 and (f > 0.0) != (f_new > 0.0):
                nodes += 1
            f = f_new
            fp = fp_new
            mag = fabs(f)
            if fabs(fp) > mag:
                mag = fabs(fp)
            if mag > _RENORM:
                f /= mag
                fp /= mag
        if err > 0.0:
            factor = 0.9 * pow(err, -0.2)
            if factor < 0.2:
                factor = 0.2
            elif factor > 5.0:
                factor = 5.0
        else:
            factor = 5.0
        h *= factor
        if fabs(h) < h_floor:
            f_io[0] = f
            fp_io[0] = fp
            nodes_io[0] = nodes
            return 0
    f_io[0] = f
    fp_io[0] = fp
    nodes_io[0] = nodes
    return 1


def shoot_kernel(int variant, double m, double a, double g, double jj, double E,
                 double r_min, double r_match, double r_max, double rtol,
                 double lam, double b1, double ic_scale=1.0):
    """Two-sided sweep; returns (f_out, fp_out, nodes_out, f_in, fp_in, nodes_in, ok)."""
    cdef double f = ic_scale * pow(r_min, lam) * (1.0 + b1 * r_min)
    cdef double fp = ic_scale * pow(r_min, lam - 1.0) * (lam + (lam + 1.0) * b1 * r_min)
    cdef long nodes_out = 0, nodes_in = 0
    cdef int ok1, ok2
    cdef double eps, arg, amp, fi, fpi

    with nogil:
        ok1 = _integrate(variant, m, a, g, jj, E, r_min, r_match, &f, &fp,
                         rtol, 0.01 * r_min, &nodes_out)
        eps = sqrt(m * m - E * E)
        arg = -eps * r_max
        if arg < -690.0:
            arg = -690.0
        amp = exp(arg)
        fi = ic_scale * amp
        fpi = -eps * fi
        ok2 = _integrate(variant, m, a, g, jj, E, r_max, r_match, &fi, &fpi,
                         rtol, 1e-4 * (r_max - r_match), &nodes_in)
    return f, fp, nodes_out, fi, fpi, nodes_in, ok1 * ok2
