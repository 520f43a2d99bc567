#!/usr/bin/env python3
"""Independent high-precision evaluation of the frozen expected values used in
the C++ unit tests. Runs with mpmath only; shares no code with the library.

Wavepacket convention: g(w)^2 is a normal density of width sigma centred on
omega0, truncated to [max(1e-12*omega0, omega0-8 sigma), omega0+8 sigma] and
renormalised to unit mass.
"""
import mpmath as mp

mp.mp.dps = 40


def r_of(w, a):
    return mp.atanh(mp.e ** (-mp.pi * w / a))


def window(w0, s):
    return max(mp.mpf('1e-12') * w0, w0 - 8 * s), w0 + 8 * s


def g2(w, w0, s):
    lo, hi = window(w0, s)
    mass = mp.ncdf((hi - w0) / s) - mp.ncdf((lo - w0) / s)
    return mp.npdf(w, w0, s) / mass


def integrals(w0, s, a):
    lo, hi = window(w0, s)
    pts = [lo, w0 - 4 * s, w0, w0 + 4 * s, hi] if w0 - 4 * s > lo else [lo, w0, hi]
    ic = mp.quad(lambda w: g2(w, w0, s) * mp.cosh(r_of(w, a)) ** 2, pts)
    is_ = mp.quad(lambda w: g2(w, w0, s) * mp.sinh(r_of(w, a)) ** 2, pts)
    ics = mp.quad(lambda w: g2(w, w0, s) * mp.e ** (-2 * r_of(w, a)), pts)
    phi = mp.quad(lambda w: mp.sqrt(g2(w, w0, s)) * mp.e ** (-r_of(w, a)), pts)
    return ic, is_, ics, phi


def show(name, v):
    print(f"{name} = {mp.nstr(v, 17)}")


show("r(ln2/pi)", r_of(mp.log(2) / mp.pi, 1))
show("r(1)", r_of(1, 1))
show("r(10)", r_of(10, 1))
r0 = r_of(1, 1)
show("exp(-2 r0)", mp.e ** (-2 * r0))
show("narrowband(1,1)", 2 + mp.e ** (-4 * r0))
show("sinh(1)", mp.sinh(1))
show("tanh(2)", mp.tanh(2))
show("sqrt(1-sech^2 2)", mp.sqrt(1 - 1 / mp.cosh(2) ** 2))
show("exp(-3)", mp.e ** -3)

for (w0, s, a) in [(1, 0.01, 1), (1, 0.05, 20), (1, 0.05, 1), (1, 0.05, 1e-3)]:
    ic, is_, ics, phi = integrals(mp.mpf(w0), mp.mpf(s), mp.mpf(a))
    print(f"-- omega0={w0} sigma={s} a={a}")
    show("  I_c", ic)
    show("  I_s", is_)
    show("  I_cs", ics)
    show("  phi_cs", phi)
    show("  displaced total", 2 * ics * (ic + is_) + 1)

# squeezed scenario, small-a limit
show("2 + e", 2 + mp.e)

# truncated Gaussian mass below omega = 0 for (0.5, 0.4)
show("mass below 0 (0.5,0.4)", mp.ncdf(-mp.mpf(0.5) / mp.mpf(0.4)))

# two-mode-squeezed-vacuum quadrature penalty for the inertial circuit
for (r, rw) in [(1, 0.8), (1, 1), (0.5, 0.5)]:
    show(f"inertial var r={r} rw={rw}", 1 + 2 * mp.tanh(r) ** 2 * mp.e ** (-2 * rw))

# conformal residual ratio at omega0/a = 0.01 (narrowband)
show("exp(-r) at w/a=0.01", mp.e ** (-r_of(mp.mpf('0.01'), 1)))

# squeezed scenario at (omega0=1, sigma=0.05, a=1), r_s = 0.5
ic, is_, ics, _ = integrals(mp.mpf(1), mp.mpf('0.05'), mp.mpf(1))
rs = mp.mpf('0.5')
d0 = mp.e ** (2 * rs) + 4 * ic * (ic - 1) * (mp.e ** rs - 1) ** 2
d90 = mp.e ** (-2 * rs) + 4 * ic * (ic - 1) * (mp.e ** (-rs) - 1) ** 2
show("squeezed Delta(0)", d0)
show("squeezed Delta(pi/2)", d90)
show("squeezed total(0)", 2 * ics * (ic + is_) + d0)
show("squeezed total(pi/2)", 2 * ics * (ic + is_) + d90)
