"""Regenerates the frozen high-precision values used by tests/oracle.rs.

Dev-time tool only (needs mpmath). Every value is computed at 60 decimal
digits by direct term-by-term summation, independently of the Rust code:

    python3 crates/core/tests/oracle/generate.py
"""
import mpmath as mp

mp.mp.dps = 60


def theta(k, u, tau):
    # Fourier series with nome q = exp(i pi tau); k = 0 is the function usually called theta_4.
    q = mp.exp(1j * mp.pi * tau)
    z = mp.pi * u
    s = mp.mpc(0)
    for n in range(-80, 81):
        if k == 1:
            s += (-1) ** n * q ** ((n + mp.mpf(1) / 2) ** 2) * mp.sin((2 * n + 1) * z) if n >= 0 else 0
        elif k == 2:
            s += q ** ((n + mp.mpf(1) / 2) ** 2) * mp.cos((2 * n + 1) * z) if n >= 0 else 0
        elif k == 3:
            s += q ** (n * n) * mp.exp(2j * n * z)
        else:
            s += (-1) ** n * q ** (n * n) * mp.exp(2j * n * z)
    if k in (1, 2):
        s *= 2
    return s


def double_product(a, q1, q2, terms=120):
    s = mp.mpc(1)
    for m in range(terms):
        for n in range(terms):
            t = a * q1 ** m * q2 ** n
            if abs(t) < mp.mpf(10) ** -70:
                break
            s *= 1 - t
    return s


def fmt(z):
    z = mp.mpc(z)
    return "c({}, {})".format(mp.nstr(z.real, 20, min_fixed=-5, max_fixed=5),
                              mp.nstr(z.imag, 20, min_fixed=-5, max_fixed=5))


THETA_POINTS = [
    (1, mp.mpf("0.3"), mp.mpc(0, "0.8")),
    (0, mp.mpf("0.3"), mp.mpc(0, "0.8")),
    (2, mp.mpf("0.3"), mp.mpc(0, "0.8")),
    (3, mp.mpf("0.3"), mp.mpc(0, "0.8")),
    (1, mp.mpc("0.21", "0.07"), mp.mpc(0, "1.2")),
    (0, mp.mpc("0.21", "0.07"), mp.mpc(0, "0.6")),
    (2, mp.mpc("-0.44", "0.03"), mp.mpc(0, "0.6")),
    (3, mp.mpc("0.13", "-0.05"), mp.mpc(0, "1.2")),
    (1, mp.mpc("0.0625", "0"), mp.mpc("0.1", "0.9")),
    (0, mp.mpc("0.4", "0.1"), mp.mpc("-0.2", "1.1")),
]

print("// theta(k, u, tau)")
for k, u, tau in THETA_POINTS:
    print("({}, {}, {}, {}),".format(k, fmt(u), fmt(tau), fmt(theta(k, u, tau))))

r = mp.mpf(6)
tau = mp.mpc(0, "1.2")
logx = -1j * mp.pi / (r * tau)
x = mp.exp(logx)
p = mp.exp(-2j * mp.pi / tau)
C = mp.exp(-r / 4 * logx) * mp.exp(-1j * mp.pi / 4) * mp.sqrt(tau)


def bracket(u):
    return C * theta(1, u / r, tau)


def jacobi_dn(u):
    return theta(0, 0, tau) * theta(3, u / r, tau) / (theta(3, 0, tau) * theta(0, u / r, tau))


def r0(u):
    z = mp.exp(2 * u * logx)
    x2, x4 = x ** 2, x ** 4
    num = (double_product(p * x2 * z, x4, p) * double_product(x2 * z, x4, p)
           * double_product(p / z, x4, p) * double_product(x4 / z, x4, p))
    den = (double_product(p * x2 / z, x4, p) * double_product(x2 / z, x4, p)
           * double_product(p * z, x4, p) * double_product(x4 * z, x4, p))
    return mp.exp(-(r - 1) / (2 * r) * 2 * u * logx) * num / den


print("// triple_product(0.3, 0.1, 0.05)")
print(fmt(double_product(mp.mpf("0.3"), mp.mpf("0.1"), mp.mpf("0.05"))))
print("// triple_product(0.2+0.1i, 0.3i, -0.25)")
print(fmt(double_product(mp.mpc("0.2", "0.1"), mp.mpc(0, "0.3"), mp.mpf("-0.25"))))
print("// dn(0.37+0.05i), r = 6, tau = 1.2i")
print(fmt(jacobi_dn(mp.mpc("0.37", "0.05"))))
print("// bracket(0.37), bracket(1.3-0.2i)")
print(fmt(bracket(mp.mpf("0.37"))), fmt(bracket(mp.mpc("1.3", "-0.2"))))
print("// r0(0.37), r0(0.61+0.04i)")
print(fmt(r0(mp.mpf("0.37"))), fmt(r0(mp.mpc("0.61", "0.04"))))
