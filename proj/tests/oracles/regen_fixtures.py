#!/usr/bin/env python3
"""Regenerates the frozen oracle values used in the C++ unit tests.

Every pinned constant in tests/*.cpp marked "oracle" is produced here with
scipy/numpy so the C++ implementation is checked against an independent
computation, not against itself.  Run and diff against the comments in the
test sources when updating fixtures.
"""
import math

import numpy as np
from scipy import integrate, special, stats


def section(title):
    print(f"\n== {title} ==")


section("specfun")
for x in (1, 2, 5, 0.5, 10.3):
    print(f"digamma({x}) = {special.digamma(x):.15g}")
for x in (1, 2, 5, 0.5, 10.3):
    print(f"trigamma({x}) = {special.polygamma(1, x):.15g}")
print(f"log_gamma(7.5) = {special.gammaln(7.5):.15g}")
print(f"gamma_ratio(2,0.5) = {math.gamma(2.5) / math.gamma(2):.15g}")
print(f"gamma_ratio(4,0.5) = {math.gamma(4.5) / math.gamma(4):.15g}")
for d in (1, 2, 3, 5, 10):
    print(f"unit_ball_volume({d}) = {math.pi ** (d / 2) / math.gamma(d / 2 + 1):.15g}")
for a, b, x in ((2, 0.5, 0.7), (0.5, 0.5, 0.3), (5, 2, 0.9), (3, 3, 0.5)):
    print(f"reg_inc_beta({a},{b},{x}) = {special.betainc(a, b, x):.15g}")
for p in (0.025, 0.005, 0.25):
    print(f"normal_quantile({p}) = {stats.norm.isf(p):.15g}")

section("canonical weights")
# Support j_t = floor(t*k/d), t = 1..floor(d/4)+1; row l uses the
# Gamma-ratio moments scaled by k^{-2(l-1)/d}; solve A w = e_1.
for k, d in ((8, 4), (16, 8)):
    dprime = d // 4 + 1
    sup = [t * k // d for t in range(1, dprime + 1)]
    A = np.array([[math.gamma(j + 2 * l / d) / math.gamma(j) * k ** (-2 * l / d)
                   for j in sup] for l in range(dprime)])
    rhs = np.zeros(dprime)
    rhs[0] = 1.0
    w = np.linalg.solve(A, rhs)
    print(f"k={k} d={d} support={sup} w={np.array2string(w, precision=12)}")

section("hand estimator examples")
# d=1, points {0,1}, k=1: both neighbour distances are 1, so
# xi = e^{-psi(1)} * V_1 * (n-1) * rho = 2 e^gamma and H = log 2 + gamma.
print(f"H(0,1; k=1) = {math.log(2) + np.euler_gamma:.15g}")
print(f"xi(0,1; k=1) = {2 * math.exp(np.euler_gamma):.15g}")
# d=1, points {0,1,3}, k=2 (unweighted at j=2)
pts = [0.0, 1.0, 3.0]
n, Vd = len(pts), 2.0
H = 0.0
for i, p in enumerate(pts):
    rho2 = sorted(abs(p - q) for j, q in enumerate(pts) if j != i)[1]
    H += math.log(math.exp(-special.digamma(2)) * Vd * (n - 1) * rho2)
print(f"H(0,1,3; k=2) = {H / n:.15g}")

section("reference densities: entropy H and V = Var log f")
for d in (1, 2, 4):
    print(f"gaussian d={d}: H = {d / 2 * math.log(2 * math.pi) + d / 2:.15g}, V = {d / 2}")
a = 2.5
Hg = a + special.gammaln(a) + (1 - a) * special.digamma(a)
Vg = (a - 1) ** 2 * special.polygamma(1, a) + a - 2 * (a - 1)
Vg_num = integrate.quad(lambda x: (np.log(stats.gamma.pdf(x, a)) + Hg) ** 2
                        * stats.gamma.pdf(x, a), 0, 80)[0]
print(f"gamma a=2.5: H = {Hg:.15g} (scipy {stats.gamma.entropy(a):.15g}), "
      f"V = {Vg:.15g} (quad {Vg_num:.15g})")
a, b = 2.0, 3.0
Hb = stats.beta.entropy(a, b)
tab = special.polygamma(1, a + b)
Vb = ((a - 1) ** 2 * (special.polygamma(1, a) - tab)
      + (b - 1) ** 2 * (special.polygamma(1, b) - tab)
      - 2 * (a - 1) * (b - 1) * tab)
Vb_num = integrate.quad(lambda x: (np.log(stats.beta.pdf(x, a, b)) + Hb) ** 2
                        * stats.beta.pdf(x, a, b), 0, 1)[0]
print(f"beta(2,3): H = {Hb:.15g}, V = {Vb:.15g} (quad {Vb_num:.15g})")
d, rho = 2, 5.0
log_norm = (special.gammaln((rho + d) / 2) - special.gammaln(rho / 2)
            - d / 2 * math.log(rho * math.pi))
Ht = -log_norm + (rho + d) / 2 * (special.digamma((rho + d) / 2)
                                  - special.digamma(rho / 2))
Vt = ((rho + d) / 2) ** 2 * (special.polygamma(1, rho / 2)
                             - special.polygamma(1, (rho + d) / 2))
fr = lambda r: math.exp(log_norm) * (1 + r * r / rho) ** (-(rho + d) / 2)
Ht_num = integrate.quad(lambda r: -2 * math.pi * r * fr(r) * math.log(fr(r)),
                        0, 400, limit=300)[0]
print(f"mvt d=2 rho=5: H = {Ht:.15g} (quad {Ht_num:.15g}), V = {Vt:.15g}")

section("gaussian leading bias constant lambda_1")
# Closed form of int Lap(f) f^{-2/d} dx for the standard gaussian, checked
# against radial quadrature.
for d in (3, 5):
    c = 1 - 2 / d
    Vd = math.pi ** (d / 2) / math.gamma(d / 2 + 1)
    I_closed = ((2 * math.pi) ** (-(d - 2) / 2) * (2 * math.pi / c) ** (d / 2)
                * d * (1 - c) / c)
    surf = d * Vd
    I_quad = integrate.quad(
        lambda r: (r * r - d) * ((2 * math.pi) ** (-d / 2)) ** (1 - 2 / d)
        * math.exp(-c * r * r / 2) * surf * r ** (d - 1), 0, 50, limit=300)[0]
    print(f"d={d}: lambda_1 = {-I_closed / (2 * (d + 2) * Vd ** (2 / d)):.15g} "
          f"(quad {-I_quad / (2 * (d + 2) * Vd ** (2 / d)):.15g})")

section("overlap kernel fixtures")


def capfrac(R, a, d):
    x = max(0.0, min(1.0, 1 - (a / R) ** 2))
    half = 0.5 * special.betainc((d + 1) / 2, 0.5, x)
    return half if a >= 0 else 1 - half


def alpha(r, s, t, d):
    if s == 0 or t == 0:
        return 0.0
    r1, r2, sep = s ** (1 / d), t ** (1 / d), r ** (1 / d)
    if sep >= r1 + r2:
        return 0.0
    if sep <= abs(r1 - r2):
        return min(s, t)
    h1 = 0.5 * (sep + (r1 * r1 - r2 * r2) / sep)
    return s * capfrac(r1, h1, d) + t * capfrac(r2, sep - h1, d)


def T(r, s, t, k, d):
    a = alpha(r, s, t, d)
    ts = k - 1 - (1 if r < s else 0)
    tt = k - 1 - (1 if r < t else 0)
    if ts < 0 or tt < 0:
        return 0.0
    shared_max = min(ts, tt)
    coupled = sum(
        a ** m / math.factorial(m)
        * sum((s - a) ** i / math.factorial(i) for i in range(ts - m + 1))
        * sum((t - a) ** j / math.factorial(j) for j in range(tt - m + 1))
        for m in range(shared_max + 1)) * math.exp(a)
    indep = (sum(s ** i / math.factorial(i) for i in range(ts + 1))
             * sum(t ** j / math.factorial(j) for j in range(tt + 1)))
    return coupled - indep


for (r, s, t, k, d) in ((0.5, 1.0, 2.0, 1, 1), (0.5, 1.0, 2.0, 2, 1),
                        (0.5, 1.0, 2.0, 3, 2), (1.2, 0.7, 2.5, 2, 3),
                        (3.0, 1.5, 1.0, 4, 5), (0.05, 2.0, 2.0, 5, 10),
                        (2.0, 0.3, 0.4, 1, 2), (6.0, 1.5, 1.0, 3, 1)):
    print(f"{{{r:g}, {s:g}, {t:g}, {k}, {d}, "
          f"{alpha(r, s, t, d):.15g}, {T(r, s, t, k, d):.15g}}},")

section("exact small-sample bias for the uniform, d=1")
n = 100
for k in (1, 3):
    print(f"n={n} k={k}: {k / n * (math.log(4) - 1) + math.log(n - 1) - special.digamma(n):.12g}")
