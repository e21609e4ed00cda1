#!/usr/bin/env python3
"""Independent link-budget reference calculator.

Evaluates the Gaussian-beam / photodetection chain with plain formulas and
mpmath quadrature, printing high-precision reference values. The C++ test
suites freeze these numbers as expected values; regenerate with:

    python3 scripts/link_budget_reference.py
"""

import mpmath as mp

mp.mp.dps = 30

# defaults used throughout (SI units)
P0_LIST = [mp.mpf("0.001"), mp.mpf("0.01")]
LAMBDA = mp.mpf("1550e-9")
W0 = mp.mpf("1e-3")
APERTURE_L = mp.mpf("1e-3")          # square aperture side, area 1 mm^2
A_R = APERTURE_L ** 2
ETA = mp.mpf("0.8")
BW = mp.mpf("1e9")
NEP = mp.mpf("20e-12")
I_B = mp.mpf("5.58")
E_CHARGE = mp.mpf("1.602176634e-19")  # 2019 SI exact value


def divergence(w0):
    return LAMBDA / (mp.pi * w0)


def rayleigh(w0):
    return mp.pi * w0 ** 2 / LAMBDA


def spot(z, w0=W0):
    return w0 * mp.sqrt(1 + (LAMBDA * z / (mp.pi * w0 ** 2)) ** 2)


def intensity(p0, z, x, y):
    wx = wy = spot(z)
    return (2 * p0 / (mp.pi * wx * wy)) * mp.e ** (-2 * x ** 2 / wx ** 2) * mp.e ** (-2 * y ** 2 / wy ** 2)


def power_point(p0, z, dx, dy, bx=0, by=0):
    return intensity(p0, z, dx, dy) * A_R * mp.cos(bx) * mp.cos(by)


def power_exact(p0, z, dx, dy, bx=0, by=0, lx=APERTURE_L, ly=APERTURE_L):
    w = spot(z)

    def axis(center, length):
        lo = mp.sqrt(2) * (center - length / 2) / w
        hi = mp.sqrt(2) * (center + length / 2) / w
        return mp.erf(hi) - mp.erf(lo)

    return p0 / 4 * axis(dx, lx) * axis(dy, ly) * mp.cos(bx) * mp.cos(by)


def power_quad(p0, z, dx, dy, lx=APERTURE_L, ly=APERTURE_L):
    w = spot(z)
    fx = mp.quad(lambda x: mp.e ** (-2 * x ** 2 / w ** 2), [dx - lx / 2, dx + lx / 2])
    fy = mp.quad(lambda y: mp.e ** (-2 * y ** 2 / w ** 2), [dy - ly / 2, dy + ly / 2])
    return 2 * p0 / (mp.pi * w * w) * fx * fy


def snr(p_r, i_b=I_B):
    num = (p_r * ETA) ** 2
    shot = 2 * E_CHARGE * BW * (i_b * A_R * ETA + p_r * ETA)
    nep_term = NEP ** 2 * ETA ** 2 * BW
    return num / (shot + nep_term)


def throughput(s):
    return BW / 2 * mp.log(1 + s, 2)


def f(x, digits=12):
    return mp.nstr(mp.mpf(x), digits)


print("== beam geometry ==")
print("theta_B (W0=1mm):", f(divergence(W0)))
print("theta_B (W0=2mm):", f(divergence(mp.mpf("2e-3"))))
print("rayleigh range  :", f(rayleigh(W0)))
for z in ["0.1", "1", "5", "50", "100"]:
    z = mp.mpf(z)
    print(f"W({z} m) exact = {f(spot(z))}   far-field = {f(divergence(W0)*z)}"
          f"   rel gap = {f(abs(spot(z)-divergence(W0)*z)/spot(z), 6)}")

print("\n== intensity ==")
print("I(50m, on-axis, 10mW)  :", f(intensity(mp.mpf('0.01'), 50, 0, 0)))
print("I at x=W ratio         :", f(intensity(mp.mpf('0.01'), 50, spot(50), 0) / intensity(mp.mpf('0.01'), 50, 0, 0)))
print("1 - e^-2               :", f(1 - mp.e ** -2, 15))

print("\n== received power ==")
p_aligned_50 = power_point(mp.mpf("0.01"), 50, 0, 0)
print("P point (50m, aligned, 10mW):", f(p_aligned_50))
print("P point (50m, dx=W)        :", f(power_point(mp.mpf('0.01'), 50, spot(50), 0)))
pe5 = power_exact(mp.mpf("0.01"), 5, 0, 0)
pp5 = power_point(mp.mpf("0.01"), 5, 0, 0)
pq5 = power_quad(mp.mpf("0.01"), 5, 0, 0)
print("P exact (5m, aligned, 10mW):", f(pe5))
print("P quad  (5m, aligned, 10mW):", f(pq5), " rel err vs closed form:", f(abs(pe5 - pq5) / pe5, 4))
print("P point (5m)               :", f(pp5), " point/exact - 1:", f(pp5 / pe5 - 1, 6))
pe50 = power_exact(mp.mpf("0.01"), 50, 0, 0)
print("P exact (50m, aligned)     :", f(pe50), " point/exact - 1:", f(p_aligned_50 / pe50 - 1, 6))

print("\n== snr / throughput chain (50 m, 10 mW, point approximation) ==")
s50 = snr(p_aligned_50)
print("SNR:", f(s50))
print("R  :", f(throughput(s50)))
print("R(SNR=3, B=1GHz):", f(throughput(3)))

print("\n== geometry examples ==")
print("atan(0.006)       :", f(mp.atan(mp.mpf("0.006"))))
print("atan(0.025)       :", f(mp.atan(mp.mpf("0.025"))))
print("atan(0.01)        :", f(mp.atan(mp.mpf("0.01"))))
print("0.5 - tan(atan(0.025))*50:", f(mp.mpf("0.5") - mp.tan(mp.atan(mp.mpf("0.025"))) * 50))

print("\n== dynamics examples ==")
print("AR(1) a=0.9 s=1e-3 variance:", f(mp.mpf("1e-6") / (1 - mp.mpf("0.81"))))
print("16-bit +-0.1m midrise step :", f(mp.mpf("0.2") / 65536, 15))
print("overhead 2x16b / 20ms      :", f(2 * 16 / mp.mpf("0.02")))

print("\n== displacement collapse ratio R(dy=5cm)/R(0) per (z, P0) ==")
for p0 in P0_LIST:
    for zi in range(5, 105, 5):
        z = mp.mpf(zi)
        r0 = throughput(snr(power_exact(p0, z, 0, 0)))
        r5 = throughput(snr(power_exact(p0, z, 0, mp.mpf("0.05"))))
        ratio = r5 / r0
        flag = "  <-- above 1%" if ratio >= mp.mpf("0.01") else ""
        print(f"P0={float(p0)*1e3:5.1f} mW  z={zi:3d} m  ratio={f(ratio, 6)}{flag}")
