"""Independent high-precision oracle for the constants frozen into the C++ tests.

Run with `python3 tests/oracles/frozen_values.py`. Uses mpmath quadrature on the
defining integrals, never the closed forms used by the library.
"""
import mpmath as mp

mp.mp.dps = 40
HALF_PI = mp.pi / 2


def sine_series(coeffs):
    def h(t):
        return sum(c * mp.sin((2 * k + 1) * t) for k, c in enumerate(coeffs))

    def dh(t):
        return sum(c * (2 * k + 1) * mp.cos((2 * k + 1) * t) for k, c in enumerate(coeffs))

    return h, dh


def functional(h, dh, breaks=()):
    pts = [0, *breaks, HALF_PI]
    return mp.quad(lambda t: (h(t) ** 2 - dh(t) ** 2 / 2) * mp.cos(t), pts)


def piecewise(cosines, sigma0=1):
    """Builds h on [0, pi/2] by solving the C1 matching conditions piece by piece."""
    taus = [mp.acos(c) for c in cosines]
    pieces = []
    a, b, s = -sigma0, mp.mpf(0), sigma0
    lo = mp.mpf(0)
    for tau in taus:
        pieces.append((lo, tau, a, b, s))
        # solve the 2x2 matching system numerically (independent of the recursion)
        m = mp.matrix([[mp.cos(tau), mp.sin(tau)], [-mp.sin(tau), mp.cos(tau)]])
        val = a * mp.cos(tau) + b * mp.sin(tau) + s + s  # target for new piece: value + s (new sign is -s)
        der = -a * mp.sin(tau) + b * mp.cos(tau)
        sol = mp.lu_solve(m, mp.matrix([val, der]))
        a, b, s = sol[0], sol[1], -s
        lo = tau
    pieces.append((lo, HALF_PI, a, b, s))

    def find(t):
        for p in pieces:
            if p[0] <= t <= p[1]:
                return p
        return pieces[-1]

    def h(t):
        _, _, a, b, s = find(t)
        return a * mp.cos(t) + b * mp.sin(t) + s

    def dh(t):
        _, _, a, b, _ = find(t)
        return -a * mp.sin(t) + b * mp.cos(t)

    return h, dh, taus


def main():
    out = {}
    h, dh = sine_series([0, 1])
    out["F(sin 3t)"] = functional(h, dh)
    h, dh = sine_series([0.3, -0.2, 0.05])
    out["F(0.3 sin t - 0.2 sin 3t + 0.05 sin 5t)"] = functional(h, dh)
    h, dh, taus = piecewise([mp.mpf(1) / 2])
    out["F(reuleaux) by quadrature"] = functional(h, dh, taus)
    out["1 - pi/3"] = 1 - mp.pi / 3
    out["4 - pi"] = 4 - mp.pi
    vol = 4 * mp.pi / 3 * (4 - mp.pi)
    out["V(reuleaux, w=1)"] = vol
    out["A(reuleaux, w=1)"] = vol + 8 * mp.pi / 3

    # merge example: cos tau = (0.7, 0.2)
    h, dh, taus = piecewise([mp.mpf("0.7"), mp.mpf("0.2")])
    f_before = functional(h, dh, taus)
    out["F(k=2, cos=(0.7,0.2))"] = f_before
    out["F(reuleaux) - F(k=2, cos=(0.7,0.2))"] = (1 - mp.pi / 3) - f_before

    # perturbation derivative by high-precision central difference on the window integral
    def window_F(x, y, z, eps):
        # profile realising the triple with t0 = acos((1+x)/2), t3 = acos(z/2), sigma0 = -1
        c = [(1 + x) / 2, (x + y + eps) / 2, (y + eps + z) / 2, z / 2]
        h, dh, taus = piecewise(c, sigma0=-1)
        return functional(h, dh, taus)

    for trip in [(mp.mpf("0.5"), mp.mpf("0.6"), mp.mpf("0.2")),
                 (mp.mpf("0.9"), mp.mpf("0.3"), mp.mpf("0.4"))]:
        e = mp.mpf("1e-12")
        fd = (window_F(*trip, e) - window_F(*trip, -e)) / (2 * e)
        out[f"dF/deps at {tuple(float(v) for v in trip)} (central diff)"] = fd

    for k, v in out.items():
        print(f"{k:60s} {mp.nstr(v, 20)}")


if __name__ == "__main__":
    main()
