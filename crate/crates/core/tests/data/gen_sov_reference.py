"""Mode-0 coefficients for the R=0.5, n=5, mu=1.5, gamma=2, k=3pi/2 disk by direct elimination (mpmath)."""
import mpmath as mp

mp.mp.dps = 40
k = 3 * mp.pi / 2
R, n, mu, gamma = mp.mpf("0.5"), 5, mp.mpf("1.5"), 2


def modes(p):
    kn = k * mp.sqrt(n)
    h = mp.hankel1(p, k * R)
    hd = mp.diff(lambda x: mp.hankel1(p, x), k * R)
    j = mp.besselj(p, k * R)
    jd = mp.diff(lambda x: mp.besselj(p, x), k * R)
    jn = mp.besselj(p, kn * R)
    jnd = mp.diff(lambda x: mp.besselj(p, x), kn * R)
    a = mp.matrix([[h, -jn], [k * hd, -kn * jnd - (mu * p**2 / R**2 + gamma) * jn]])
    b = mp.matrix([-j, -k * jd])
    return mp.lu_solve(a, b)


for p in (0, 1, 4):
    x = modes(p)
    print(p, [mp.nstr(v, 20) for v in (x[0].real, x[0].imag, x[1].real, x[1].imag)])
