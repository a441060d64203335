#!/usr/bin/env python3
"""Chebyshev coefficients for the large-argument modulus/phase form of J0, Y0.

For x >= 8,
    J0(x) = sqrt(2/(pi x)) * (P(x) cos(x - pi/4) - Q(x) sin(x - pi/4))
    Y0(x) = sqrt(2/(pi x)) * (P(x) sin(x - pi/4) + Q(x) cos(x - pi/4))
P and x*Q are smooth in s = (8/x)^2 on [0, 1]; both are expanded in Chebyshev
polynomials of (2s - 1). Output is pasted into src/specfun.cpp.
"""
import mpmath as mp

mp.mp.dps = 50
X0 = mp.mpf(8)


def pq(x):
    chi = x - mp.pi / 4
    j0, y0 = mp.besselj(0, x), mp.bessely(0, x)
    scale = mp.sqrt(mp.pi * x / 2)
    p = scale * (j0 * mp.cos(chi) + y0 * mp.sin(chi))
    q = scale * (y0 * mp.cos(chi) - j0 * mp.sin(chi))
    return p, q


def p_of_s(s):
    if s == 0:
        return mp.mpf(1)
    return pq(X0 / mp.sqrt(s))[0]


def xq_of_s(s):
    if s == 0:
        return mp.mpf(-1) / 8
    x = X0 / mp.sqrt(s)
    return x * pq(x)[1]


def cheb(f, n):
    nodes = [mp.cos(mp.pi * (k + mp.mpf(1) / 2) / n) for k in range(n)]
    vals = [f((u + 1) / 2) for u in nodes]
    coeffs = []
    for j in range(n):
        c = mp.fsum(vals[k] * mp.cos(mp.pi * j * (k + mp.mpf(1) / 2) / n) for k in range(n))
        coeffs.append(2 * c / n)
    coeffs[0] /= 2
    return coeffs


def trim(coeffs, tol=mp.mpf("1e-19")):
    while abs(coeffs[-1]) < tol:
        coeffs.pop()
    return coeffs


if __name__ == "__main__":
    for name, f in (("kP", p_of_s), ("kXQ", xq_of_s)):
        c = trim(cheb(f, 40))
        print(f"constexpr std::array<double, {len(c)}> {name} = {{")
        for v in c:
            print(f"    {mp.nstr(v, 20, min_fixed=0, max_fixed=0)},")
        print("};")
