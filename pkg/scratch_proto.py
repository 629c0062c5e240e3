"""Scratch prototype to pin down partition conventions against published counts."""
import numpy as np


def newman_pts(n):
    return np.exp(-np.arange(n, 0, -1) * np.sqrt(n) / n)


def build_split(taus, fs, extra=None):
    neg = taus < 0
    mu, v = taus[neg], fs[neg]
    lam, w = taus[~neg], fs[~neg]
    return assemble(mu, v, lam, w, extra)


def build_alt(taus, fs, extra=None):
    lam, w = taus[0::2], fs[0::2]
    mu, v = taus[1::2], fs[1::2]
    return assemble(mu, v, lam, w, extra)


def assemble(mu, v, lam, w, extra):
    D = np.subtract.outer(mu, lam)
    L = (np.subtract.outer(v, w)) / D
    Ls = (np.subtract.outer(mu * v, lam * w)) / D
    if extra is not None:
        xe, fe = extra
        z1 = (v - fe) / (mu - xe)
        z2 = (mu * v - xe * fe) / (mu - xe)
        L = np.column_stack([L, z1])
        Ls = np.column_stack([Ls, z2])
    return L, Ls


def build_same(taus, fs, extra=None):
    # Hermite: nodes = all taus, d1 = sign, d2 = 2|x|
    lam, w = taus, fs
    D = np.subtract.outer(lam, lam)
    np.fill_diagonal(D, 1.0)
    L = np.subtract.outer(w, w) / D
    Ls = np.subtract.outer(lam * w, lam * w) / D
    np.fill_diagonal(L, np.sign(lam))
    np.fill_diagonal(Ls, 2 * np.abs(lam))
    if extra is not None:
        xe, fe = extra
        z1 = (w - fe) / (lam - xe)
        z2 = (lam * w - xe * fe) / (lam - xe)
        L = np.column_stack([L, z1])
        Ls = np.column_stack([Ls, z2])
    return L, Ls


def counts(L, deltas):
    s = np.linalg.svd(L, compute_uv=False)
    return [int(np.sum(s / s[0] > d)) for d in deltas]


# ---- Table 4 check: Newman points N=256 (128/side) + origin --------------
p = newman_pts(128)
taus = np.concatenate([-p[::-1], p])
fs = np.abs(taus)
deltas = [1e-9, 1e-11, 1e-13, 1e-15]

L_split, _ = build_split(taus, fs, extra=(0.0, 0.0))
L_alt, _ = build_alt(taus, fs, extra=(0.0, 0.0))
L_same, _ = build_same(taus, fs, extra=(0.0, 0.0))
print("published split 28/34/40/46   got", counts(L_split, deltas))
print("published alt   54/64/76/88   got", counts(L_alt, deltas))
print("published same  54/64/76/88   got", counts(L_same, deltas))

# Same with only 128 thinned nodes (alternate interpretation)
L_same_thin, _ = build_same(taus[0::2], fs[0::2], extra=(0.0, 0.0))
print("same thinned(every 2nd, 128 nodes)", counts(L_same_thin, deltas))

# ---- Table 2 check: linspace 1024/side + origin, dm = 2.2204e-16 ----------
a, b = 2.0**-10, 1.0
pos = np.linspace(a, b, 1024)
taus2 = np.concatenate([-pos[::-1], pos])
fs2 = np.abs(taus2)
dm = [2.2204e-16]
L2s, _ = build_split(taus2, fs2, extra=(0.0, 0.0))
L2a, _ = build_alt(taus2, fs2, extra=(0.0, 0.0))
print("table2 linspace split (pub 33):", counts(L2s, dm))
print("table2 linspace alt   (pub 50):", counts(L2a, dm))
L2m, _ = build_same(taus2, fs2, extra=(0.0, 0.0))
print("table2 linspace same  (pub 52):", counts(L2m, dm))
L2mt, _ = build_same(taus2[0::2], fs2[0::2], extra=(0.0, 0.0))
print("table2 linspace same-thin (pub 52):", counts(L2mt, dm))
