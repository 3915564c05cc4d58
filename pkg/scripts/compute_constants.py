#!/usr/bin/env python3
"""High-precision provenance for the frozen constants.

Recomputes, at 30+ digits with mpmath, every constant the package freezes
at double precision, and checks the frozen values against them:

  * the regular ideal tetrahedron volume 3 * Lobachevsky(pi/3), via the
    Clausen function Cl_2 (Lobachevsky(t) = Cl_2(2t)/2) and independently
    by tanh-sinh quadrature of -log|2 sin|;
  * the cusp density bound sqrt(3)/(2 V0);
  * the covolume of the quotient of H^3 by PSL2 of Z[sqrt(-2)], via
    Humbert's formula |disc|^(3/2) * zeta_K(2) / (4 pi^2) with disc = -8 and
    zeta_K(2) = zeta(2) * L(2, chi_(-8)) evaluated through Hurwitz zetas;
  * the exact Adams-Reid translation length Re(2 arccosh((2 + 4 pi^2 i)/2)).
"""

import mpmath as mp

from sysbound import bianchi, bounds

mp.mp.dps = 40


def report(name, high_precision, frozen):
    err = abs(mp.mpf(frozen) - high_precision)
    print(f"{name}")
    print(f"  30 digits : {mp.nstr(high_precision, 30)}")
    print(f"  frozen    : {frozen!r}")
    print(f"  |error|   : {mp.nstr(err, 3)}")
    assert err < mp.mpf(10) ** (-15) * max(1, abs(high_precision)), name
    print()


def main():
    v0 = 3 * mp.clsin(2, 2 * mp.pi / 3) / 2
    quad = -3 * mp.quad(lambda t: mp.log(abs(2 * mp.sin(t))), [0, mp.pi / 3])
    assert abs(v0 - quad) < mp.mpf(10) ** -35
    report("ideal tetrahedron volume (3 * Lobachevsky(pi/3))", v0, bounds.IDEAL_TETRAHEDRON_VOLUME)

    c0 = mp.sqrt(3) / (2 * v0)
    report("cusp density bound sqrt(3)/(2 V0)", c0, bounds.CUSP_DENSITY_BOUND)

    l_chi = (
        mp.zeta(2, mp.mpf(1) / 8)
        + mp.zeta(2, mp.mpf(3) / 8)
        - mp.zeta(2, mp.mpf(5) / 8)
        - mp.zeta(2, mp.mpf(7) / 8)
    ) / 64
    covolume = mp.mpf(8) ** mp.mpf(1.5) * mp.zeta(2) * l_chi / (4 * mp.pi**2)
    report("PSL2(Z[sqrt(-2)]) covolume (Humbert)", covolume, bianchi.PSL2_O2_COVOLUME)

    ar = (2 * mp.acosh((2 + (2 * mp.pi) ** 2 * mp.mpc(0, 1)) / 2)).real
    report("Adams-Reid translation length at slope 2*pi", ar, bounds.ADAMS_REID_LENGTH)

    print("all frozen constants agree with the high-precision oracles")


if __name__ == "__main__":
    main()
