"""Pure-Python shooting integrator, the fallback backend.

Mirrors the compiled extension step for step: same Cash-Karp tableau,
same error control, same node counting and renormalization.  The
backend parity tests hold the two implementations together; keep any
change synchronized with ``_shoot_cy.pyx``.
"""

from __future__ import annotations

import math

VARIANT_APPROX = 0
VARIANT_EXACT = 1

# Cash-Karp embedded 4(5) pair
_A2, _A3, _A4, _A5, _A6 = 0.2, 0.3, 0.6, 1.0, 0.875
_B21 = 0.2
_B31, _B32 = 3.0 / 40.0, 9.0 / 40.0
_B41, _B42, _B43 = 0.3, -0.9, 1.2
_B51, _B52, _B53, _B54 = -11.0 / 54.0, 2.5, -70.0 / 27.0, 35.0 / 27.0
_B61, _B62, _B63, _B64, _B65 = (
    1631.0 / 55296.0,
    175.0 / 512.0,
    575.0 / 13824.0,
    44275.0 / 110592.0,
    253.0 / 4096.0,
)
_C1, _C3, _C4, _C6 = 37.0 / 378.0, 250.0 / 621.0, 125.0 / 594.0, 512.0 / 1771.0
_D1 = _C1 - 2825.0 / 27648.0
_D3 = _C3 - 18575.0 / 48384.0
_D4 = _C4 - 13525.0 / 55296.0
_D5 = -277.0 / 14336.0
_D6 = _C6 - 0.25

_RENORM = 1e100


def w_value(variant: int, m: float, a: float, g: float, jj: float, E: float, r: float) -> float:
    """Coefficient W(r) of F'' = W(r) F for the chosen equation variant."""
    eps2 = m * m - E * E
    if variant == VARIANT_APPROX:
        x = -2.0 * a * r
        u = math.exp(x)
        v = -math.expm1(x)
        uv = u / v
        return (
            eps2
            + 4.0 * a * a * jj * (jj + 1.0) * uv / v
            - 4.0 * a * a * g * g * u * uv / v
            - 4.0 * a * E * g * uv
        )
    inv_r = 1.0 / r
    ear = math.exp(-a * r)
    return (
        jj * (jj + 1.0) * inv_r * inv_r
        - g * g * ear * ear * inv_r * inv_r
        - 2.0 * E * g * ear * inv_r
        + eps2
    )


def _integrate(variant, m, a, g, jj, E, r, r_end, f, fp, rtol, h):
    """Error-controlled Cash-Karp sweep from r to r_end.

    Returns (f, fp, nodes, ok).  The state is renormalized whenever it
    exceeds 1e100 in magnitude; sign changes of f on accepted steps are
    counted as nodes.
    """
    direction = 1.0 if r_end > r else -1.0
    h = abs(h) * direction
    span = abs(r_end - r)
    h_floor = span * 1e-15 + 1e-300
    nodes = 0
    guard = 0
    max_iter = 10_000_000
    while (r_end - r) * direction > 0.0:
        guard += 1
        if guard > max_iter:
            return f, fp, nodes, 0
        if (r + h - r_end) * direction > 0.0:
            h = r_end - r

        w1 = w_value(variant, m, a, g, jj, E, r)
        k1f = fp
        k1p = w1 * f

        rf = r + _A2 * h
        yf = f + h * _B21 * k1f
        yp = fp + h * _B21 * k1p
        k2f = yp
        k2p = w_value(variant, m, a, g, jj, E, rf) * yf

        rf = r + _A3 * h
        yf = f + h * (_B31 * k1f + _B32 * k2f)
        yp = fp + h * (_B31 * k1p + _B32 * k2p)
        k3f = yp
        k3p = w_value(variant, m, a, g, jj, E, rf) * yf

        rf = r + _A4 * h
        yf = f + h * (_B41 * k1f + _B42 * k2f + _B43 * k3f)
        yp = fp + h * (_B41 * k1p + _B42 * k2p + _B43 * k3p)
        k4f = yp
        k4p = w_value(variant, m, a, g, jj, E, rf) * yf

        rf = r + _A5 * h
        yf = f + h * (_B51 * k1f + _B52 * k2f + _B53 * k3f + _B54 * k4f)
        yp = fp + h * (_B51 * k1p + _B52 * k2p + _B53 * k3p + _B54 * k4p)
        k5f = yp
        k5p = w_value(variant, m, a, g, jj, E, rf) * yf

        rf = r + _A6 * h
        yf = f + h * (_B61 * k1f + _B62 * k2f + _B63 * k3f + _B64 * k4f + _B65 * k5f)
        yp = fp + h * (_B61 * k1p + _B62 * k2p + _B63 * k3p + _B64 * k4p + _B65 * k5p)
        k6f = yp
        k6p = w_value(variant, m, a, g, jj, E, rf) * yf

        f_new = f + h * (_C1 * k1f + _C3 * k3f + _C4 * k4f + _C6 * k6f)
        fp_new = fp + h * (_C1 * k1p + _C3 * k3p + _C4 * k4p + _C6 * k6p)
        err_f = h * (_D1 * k1f + _D3 * k3f + _D4 * k4f + _D5 * k5f + _D6 * k6f)
        err_p = h * (_D1 * k1p + _D3 * k3p + _D4 * k4p + _D5 * k5p + _D6 * k6p)

        # Balance the two components with the local wavenumber so the
        # control neither stalls at nodes (f ~ 0) nor at turning points.
        kbar = math.sqrt(abs(w1)) + 1e-30
        sc_f = rtol * (abs(f) + abs(fp) / kbar) + 1e-290
        sc_p = rtol * (abs(fp) + kbar * abs(f)) + 1e-290
        err = abs(err_f) / sc_f
        ep = abs(err_p) / sc_p
        if ep > err:
            err = ep

        if err <= 1.0:
            r += h
            if f != 0.0 and f_new != 0.0 and (f > 0.0) != (f_new > 0.0):
                nodes += 1
            f, fp = f_new, fp_new
            mag = abs(f)
            if abs(fp) > mag:
                mag = abs(fp)
            if mag > _RENORM:
                f /= mag
                fp /= mag
        if err > 0.0:
            factor = 0.9 * err ** -0.2
            if factor < 0.2:
                factor = 0.2
            elif factor > 5.0:
                factor = 5.0
        else:
            factor = 5.0
        h *= factor
        if abs(h) < h_floor:
            return f, fp, nodes, 0
    return f, fp, nodes, 1


def shoot_kernel(
    variant: int,
    m: float,
    a: float,
    g: float,
    jj: float,
    E: float,
    r_min: float,
    r_match: float,
    r_max: float,
    rtol: float,
    lam: float,
    b1: float,
    ic_scale: float = 1.0,
):
    """Two-sided sweep; returns (f_out, fp_out, nodes_out, f_in, fp_in, nodes_in, ok).

    Outward start is the regular series r^lam (1 + b1 r) at r_min;
    inward start is the decaying asymptote exp(-eps r) at r_max, whose
    admixture error damps away over the inward sweep.
    """
    f0 = ic_scale * r_min ** lam * (1.0 + b1 * r_min)
    fp0 = ic_scale * r_min ** (lam - 1.0) * (lam + (lam + 1.0) * b1 * r_min)
    fo, fpo, no, ok1 = _integrate(
        variant, m, a, g, jj, E, r_min, r_match, f0, fp0, rtol, 0.01 * r_min
    )

    eps = math.sqrt(m * m - E * E)
    amp = math.exp(max(-eps * r_max, -690.0))
    fi = ic_scale * amp
    fpi = -eps * fi
    fi, fpi, ni, ok2 = _integrate(
        variant, m, a, g, jj, E, r_max, r_match, fi, fpi, rtol, 1e-4 * (r_max - r_match)
    )
    return fo, fpo, no, fi, fpi, ni, ok1 * ok2
