"""Single-constraint water-filling level and the integrated m=2 ratio CDF.

Run with: python3 tests/oracles/derive_waterfill.py
"""
import mpmath as mp

mp.mp.dps = 30

# K=1, L=1, Rayleigh, noise 1, lambda=0: E[P] = e^-mu/mu - E1(mu).
pav = mp.mpf(10) ** mp.mpf("0.5")
mu = mp.findroot(lambda u: mp.e**-u / u - mp.e1(u) - pav, 0.1)
print("water-filling mu (K=1, pAv=5dB) =", mu)

# Same with K=5: selected gain is the max of 5 exponentials.
def ep_k(u, K=5):
    f = lambda x: K * (1 - mp.e**-x) ** (K - 1) * mp.e**-x
    return mp.quad(lambda x: (1 / u - 1 / x) * f(x), [u, u + 1, u + 10, mp.inf])
mu5 = mp.findroot(lambda u: ep_k(u) - pav, 0.27)
print("water-filling mu (K=5, pAv=5dB) =", mu5)


def ratio_pdf_eq24(m, L, z):
    z = mp.mpf(z)
    tot = L * mp.gamma(2 * m) * z**(m - 1) / (mp.gamma(m)**L * (1 + z)**(2 * m))
    for k in range(1, L):
        u = (z + 1) / (z + k + 1)
        tot += (L * mp.gamma(3 * m) / mp.gamma(m)**(L + 1) * z**(m - 1) / (2 * m)
                * (-1)**k * mp.binomial(L - 1, k) * k**m / (z + k + 1)**(3 * m)
                * mp.hyp2f1(1, 3 * m, 2 * m + 1, u))
    return tot


for L in (2, 3):
    print(f"quad(eq24) m=2 L={L} on [0,2] =", mp.quad(lambda t: ratio_pdf_eq24(2, L, t), [0, 1, 2]))
