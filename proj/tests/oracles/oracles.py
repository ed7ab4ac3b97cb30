"""High-precision reference values frozen into the C++ unit tests.

Every value here is computed with mpmath at 50 significant digits directly
from the defining formulas, independent of the C++ implementation. Re-run
with `python3 tests/oracles/oracles.py` to regenerate.
"""
import mpmath as mp

mp.mp.dps = 50


def show(name, value):
    print(f"{name} = {mp.nstr(value, 20)}")


# Circular guide effective index, D = 700 nm, u = 3.832, lambda = 500 nm.
D, u, lam = mp.mpf(700), mp.mpf("3.832"), mp.mpf(500)
show("n_eff(D=700,u=3.832,lambda=500)", mp.sqrt(1 - (u / mp.pi) ** 2 * (lam / D) ** 2))
show("lambda_c(D=700,u=3.832)", mp.pi * D / u)
lam_small = D / 1000
show("n_eff(D=700,u=3.832,lambda=0.7)", mp.sqrt(1 - (u / mp.pi) ** 2 * (lam_small / D) ** 2))


# Free-space collective rate and dipole shift.
def gamma12(x):
    return mp.mpf(3) / 2 * (mp.sin(x) / x + mp.cos(x) / x**2 - mp.sin(x) / x**3)


def g12(x):
    return mp.mpf(3) / 4 * (mp.cos(x) / x - mp.sin(x) / x**2 - mp.cos(x) / x**3)


show("gamma12(1e-4)", gamma12(mp.mpf("1e-4")))
show("gamma12(5e-4)", gamma12(mp.mpf("5e-4")))
show("gamma12(pi)", gamma12(mp.pi))
show("g12(pi)", g12(mp.pi))
show("g12(0.01)", g12(mp.mpf("0.01")))
show("g12(0.01)/(-0.75/0.01^3) - 1", g12(mp.mpf("0.01")) / (-mp.mpf("0.75") / mp.mpf("0.01") ** 3) - 1)

# First positive zero of gamma12 by bisection on a sign-changing bracket.
a, b = mp.mpf(1), mp.mpf(4)
assert gamma12(a) * gamma12(b) < 0
for _ in range(200):
    m = (a + b) / 2
    if gamma12(a) * gamma12(m) <= 0:
        b = m
    else:
        a = m
show("first zero of gamma12", (a + b) / 2)

# Green's function from a recorded field: unit constants, omega = 3.
E = mp.mpc(1, 1)
show("G_yy unit constants, omega=3 (re)", (E / 9).real)
# SI-like context.
eps0 = mp.mpf("8.8541878128e-12")
c = mp.mpf(299792458)
hbar = mp.mpf("1.054571817e-34")
eps_r = mp.mpf("2.25")
mu = mp.mpf("3.0e-29")
omega = 2 * mp.pi * c / mp.mpf("1450e-9")
G = eps0 * eps_r * c**2 / (mu * omega**2) * mp.mpc("0.37", "-1.25")
show("G_yy SI (re)", G.real)
show("G_yy SI (im)", G.imag)

# Free-space decay rate from Im G = omega/(6 pi c).
show("gamma_vacuum SI", omega**3 * mu**2 / (3 * mp.pi * eps0 * hbar * c**3))
show("ldos vacuum SI", omega**2 / (mp.pi**2 * c**3))

# Lorentzian Im G peaked at 1450 nm: Purcell factor at the peak.
A, base, width = mp.mpf(40), mp.mpf(2), mp.mpf(30)
lam0 = mp.mpf("1450e-9")
w0 = 2 * mp.pi * c / lam0
imG_vac = w0 / (6 * mp.pi * c)
peak = (A + base) * imG_vac
show("purcell at Lorentzian peak", peak / imG_vac)

# e^{-t}|sin 2t|: maximiser and maximum by golden-section search.
f = lambda t: mp.e ** (-t) * abs(mp.sin(2 * t))
lo, hi = mp.mpf(0), mp.mpf("1.5")
gr = (mp.sqrt(5) - 1) / 2
for _ in range(300):
    c1 = hi - gr * (hi - lo)
    c2 = lo + gr * (hi - lo)
    if f(c1) > f(c2):
        hi = c2
    else:
        lo = c1
tstar = (lo + hi) / 2
show("argmax e^-t|sin2t|", tstar)
show("max e^-t|sin2t|", f(tstar))

# Werner states by brute-force eigenvalues of rho * rho_tilde.
Y = mp.matrix([[0, 0, 0, -1], [0, 0, 1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]])
for p in [mp.mpf(0), mp.mpf(1) / 3, mp.mpf(1) / 2, mp.mpf(1)]:
    phi = mp.matrix([1, 0, 0, 1]) / mp.sqrt(2)
    rho = p * (phi * phi.T) + (1 - p) * mp.eye(4) / 4
    rt = Y * rho.conjugate() * Y
    ev = mp.eig(rho * rt, left=False, right=False)
    s = sorted([mp.sqrt(max(mp.re(e), 0)) for e in ev], reverse=True)
    show(f"werner C(p={mp.nstr(p, 6)})", max(0, s[0] - s[1] - s[2] - s[3]))
