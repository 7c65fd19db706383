# Extended-precision reference values for the Riccati-Bessel tests.
# psi_n(r) = r j_n(r) from the ascending series; chi_n(r) = r y_n(r) from
# mpmath's half-integer Bessel Y.  Run with: python3 riccati_oracle.py
from mpmath import mp, mpf, factorial, fac2, bessely, sqrt, pi

# The ascending series cancels heavily for large r; carry 150 digits.
mp.dps = 150


def psi(n, r):
    r = mpf(r)
    s = mpf(0)
    for k in range(600):
        s += (-r * r / 2) ** k / (factorial(k) * fac2(2 * n + 2 * k + 1))
    return r ** (n + 1) * s


def chi(n, r):
    r = mpf(r)
    return r * sqrt(pi / (2 * r)) * bessely(n + mpf(1) / 2, r)


def dpsi(n, r):
    return psi(n - 1, r) - n / mpf(r) * psi(n, r) if n > 0 else mp.cos(r)


def dchi(n, r):
    return chi(n - 1, r) - n / mpf(r) * chi(n, r) if n > 0 else mp.sin(r)


print("psi(5, 10)  =", mp.nstr(psi(5, 10), 20))
print("chi(3, 8)   =", mp.nstr(chi(3, 8), 20))
for name, f in [("psi", psi), ("dpsi", dpsi), ("chi", chi), ("dchi", dchi)]:
    print(f"{name}(2, 15) =", mp.nstr(f(2, 15), 20))
print("psi(4, 6)   =", mp.nstr(psi(4, 6), 20))
print("psi(30, 5)  =", mp.nstr(psi(30, 5), 20))
print("psi(100, 150) =", mp.nstr(psi(100, 150), 20))
print("chi(100, 150) =", mp.nstr(chi(100, 150), 20))
