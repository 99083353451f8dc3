"""High-precision reference values for the C++ unit tests.

Run with `python tests/oracle/oracle.py`; the printed values are frozen in
tests/test_*.cpp. Uses mpmath only, no code shared with the library.
"""
from mpmath import mp, mpf, log, sqrt, exp, e, findroot, binomial, fsum, inf

mp.dps = 40


def kl(p, q):
    p, q = mpf(p), mpf(q)
    t1 = 0 if p == 0 else p * log(p / q)
    t2 = 0 if p == 1 else (1 - p) * log((1 - p) / (1 - q))
    return t1 + t2


def h(c):
    c = mpf(c)
    return -(c * log(c) + (1 - c) * log(1 - c))


def birge_c(n):
    target = log(mpf(n - 1) / n)
    lo, hi = mpf("1e-30"), 1 - mpf("1e-30")
    for _ in range(200):
        mid = (lo + hi) / 2
        if h(mid) / mid + log(1 - mid) > target:
            lo = mid
        else:
            hi = mid
    return lo


def birge_r(n, b):
    b = mpf(b)
    return kl(b, (1 - b) / (n - 1)) - b * log(n)


def birge_d(n):
    # Largest root below 1: scan down then bisect.
    b = 1 - mpf("1e-9")
    step = mpf("1e-4")
    while birge_r(n, b) > 0:
        b -= step
    lo, hi = b, b + step
    for _ in range(200):
        mid = (lo + hi) / 2
        if birge_r(n, mid) <= 0:
            lo = mid
        else:
            hi = mid
    return lo


def posterior_objective(d, rho):
    rho = mpf(rho)
    return rho ** (-d) + rho / (8 * sqrt(2 * log(rho)))


def posterior_constant(d):
    # Unimodal on (1, inf): derivative root.
    f = lambda r: posterior_objective(d, r)
    grid = [exp(log(mpf(10) ** 4) * k / 2000) for k in range(1, 2001)]
    best = min(grid, key=f)
    lo, hi = best / mpf("1.01"), best * mpf("1.01")
    g = (sqrt(5) - 1) / 2
    for _ in range(300):
        a = hi - g * (hi - lo)
        b = lo + g * (hi - lo)
        if f(a) < f(b):
            hi = b
        else:
            lo = a
    return f((lo + hi) / 2), (lo + hi) / 2


def cramer(theta, x, n):
    theta, x = mpf(theta), mpf(x)
    k0 = int(mp.floor(n * x)) + 1
    tail = fsum(binomial(n, k) * theta ** k * (1 - theta) ** (n - k) for k in range(k0, n + 1))
    return log(tail) / n


def show(name, value):
    print(f"{name:48s} {mp.nstr(value, 17)}")


show("kl(0.5,0.25)", kl("0.5", "0.25"))
show("kl(0.4,0.5)", kl("0.4", "0.5"))
show("hellinger2(0.5,0.25)", 2 * (1 - (sqrt(mpf("0.125")) + sqrt(mpf("0.375")))))
show("lb_classic(0, e^-2)", log(2) / 2)
show("lb_refined(0, 0.5)", log(mpf("1.5")) / log(2))
show("lb_refined(0.1, 0.25)", (mpf("0.1") + log(mpf("1.75"))) / log(4))
show("lb_affine(0.2, 0.1)", mpf("0.21") + mpf("0.079") + mpf("0.2") / log(10))
show("pinsker_factor(0.25)", log(3) / mpf("0.5"))
show("lb_pinsker_fano(0.08, 0.1)", mpf("0.1") + sqrt(mpf("0.08") / log(10)))
show("bh_q_lower(1, 0)", exp(-1 / e))
show("bh_q_lower(1, 1)", exp(-1 / e - 1))
show("lecam(0.5, 0.1)", mpf("0.1") + sqrt(mpf("0.5") * mpf("0.875")))
show("chi2_solved(1/3, 0.25)", mpf("0.25") + sqrt(mpf(1) / 12))
show("binary_entropy(0.2)", h("0.2"))
show("fano_kl_sqrt(1/8, 0.1 ln 8)", mpf(1) / 8 + sqrt(mpf("0.1")))
show("haroutunian(0.8, 1)", exp(-(1 + log(2)) / mpf("0.8")))
show("bayes two-point 0-1", 1 - log(mpf("1.5")) / log(2))
show("massart", (2 * e - 1) / (2 * e))
for n in (2, 3, 7, 10**6):
    show(f"birge_c({n})", birge_c(n))
for n in (2, 3, 7):
    show(f"birge_d({n})", birge_d(n))
for d in (1, 2, 10**6):
    c, r = posterior_constant(d)
    show(f"posterior_constant({d})", c)
    show(f"  rho_star({d})", r)
show("sqrt(e)/8", sqrt(e) / 8)
show("regret(16,4,1600)", sqrt(1600 * mpf("0.25") * log(16)) / 32)
show("dd(0.1,10,2)", mpf("0.25") * exp(-2))
show("kl(0.4,0.5) quadratic lhs", kl("0.4", "0.5"))
show("kl(0.1,0.5) quadratic lhs", kl("0.1", "0.5"))
show("-kl(0.75,0.5)", -kl("0.75", "0.5"))
show("cramer(0.5,0.75,1000)", cramer("0.5", "0.75", 1000))
show("cramer(0.3,0.5,200)", cramer("0.3", "0.5", 200))
show("sparse kl bound N=4 s=2 eps=0.05", mpf(2) / 4 * kl(mpf("0.5") - mpf("0.05") * 4 / 2, "0.5"))
