#!/usr/bin/env python3
"""Independent oracle computations.

Everything here is computed with numpy/LAPACK or plain Python integer
arithmetic, independently of the C++ implementation, and frozen into the
test sources. Rerun and re-freeze whenever a frozen constant changes.
"""

import math

import numpy as np

MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed):
        self.state = seed & MASK

    def next_u64(self):
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
        return z ^ (z >> 31)

    def uniform(self):
        return (self.next_u64() >> 11) * 2.0 ** -53

    def uniform_pos(self):
        return ((self.next_u64() >> 11) + 1) * 2.0 ** -53

    def below(self, bound):
        return (self.next_u64() * bound) >> 64

    def gaussian(self):
        u1 = self.uniform_pos()
        u2 = self.uniform()
        return math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)

    def shuffle(self, items):
        for i in range(len(items), 1, -1):
            j = self.below(i)
            items[i - 1], items[j] = items[j], items[i - 1]


def prng_oracle():
    print("== prng ==")
    r = SplitMix64(42)
    print("seed42 u64:", [hex(r.next_u64()) for _ in range(3)])
    r = SplitMix64(42)
    print("seed42 uniform[0]: %.17g" % r.uniform())
    g = SplitMix64(1)
    print("seed1 gaussians: %.17g %.17g" % (g.gaussian(), g.gaussian()))
    s = SplitMix64(7)
    items = list(range(10))
    s.shuffle(items)
    print("seed7 shuffle(0..9):", items)


def sym_eig_oracle():
    print("== sym_eig frozen 5x5 ==")
    a = np.array(
        [
            [4.0, 1.0, -2.0, 0.5, 0.0],
            [1.0, 3.0, 0.0, 1.5, -1.0],
            [-2.0, 0.0, 5.0, 0.25, 2.0],
            [0.5, 1.5, 0.25, 1.0, 0.75],
            [0.0, -1.0, 2.0, 0.75, 2.5],
        ]
    )
    w = np.linalg.eigvalsh(a)[::-1]
    print("eigvals desc:", ", ".join("%.15g" % x for x in w))
    print("trace: %.15g" % np.trace(a))


def kpca_fit(x, gamma, r, ridge_lambda=1e-3):
    m = x.shape[0]
    d2 = ((x[:, None, :] - x[None, :, :]) ** 2).sum(axis=2)
    k = np.exp(-gamma * d2)
    mu = k.mean(axis=1)
    grand = k.mean()
    kt = k - mu[:, None] - mu[None, :] + grand
    w, v = np.linalg.eigh(kt)
    w = w[::-1]
    v = v[:, ::-1]
    if (w[:r] <= 1e-10).any():
        raise RuntimeError("rank deficiency")
    u = np.empty((m, r))
    for c in range(r):
        col = v[:, c]
        arg = np.argmax(np.abs(col))
        if col[arg] < 0:
            col = -col
        u[:, c] = col / math.sqrt(w[c])
    lam = w[:r].copy()
    # training latents via the transform path
    z = np.empty((m, r))
    for j in range(m):
        kx = k[:, j]
        kc = kx - kx.mean() - mu + grand
        z[j] = u.T @ kc
    # preimage: kernel ridge from latents back to inputs
    pd2 = ((z[:, None, :] - z[None, :, :]) ** 2).sum(axis=2)
    pairs = pd2[np.triu_indices(m, k=1)]
    med = np.median(pairs)
    gamma_p = 1.0 / (2.0 * med) if med > 1e-300 else 1.0
    kzz = np.exp(-gamma_p * pd2)
    a = np.linalg.solve(kzz + ridge_lambda * np.eye(m), x)
    return dict(x=x, gamma=gamma, mu=mu, grand=grand, u=u, lam=lam, z=z,
                gamma_p=gamma_p, a=a)


def kpca_transform(model, p):
    kx = np.exp(-model["gamma"] * ((model["x"] - p) ** 2).sum(axis=1))
    kc = kx - kx.mean() - model["mu"] + model["grand"]
    return model["u"].T @ kc


def kpca_inverse(model, z):
    kz = np.exp(-model["gamma_p"] * ((model["z"] - z) ** 2).sum(axis=1))
    return model["a"].T @ kz


def frozen_x_8x5():
    # Frozen literals, two loose clusters on the L1 simplex.
    rows = [
        [0.50, 0.20, 0.15, 0.10, 0.05],
        [0.45, 0.25, 0.10, 0.15, 0.05],
        [0.55, 0.15, 0.12, 0.08, 0.10],
        [0.48, 0.22, 0.14, 0.06, 0.10],
        [0.10, 0.05, 0.45, 0.25, 0.15],
        [0.05, 0.10, 0.50, 0.20, 0.15],
        [0.12, 0.08, 0.40, 0.28, 0.12],
        [0.08, 0.12, 0.52, 0.18, 0.10],
    ]
    x = np.array(rows)
    # fix tiny normalization slack
    return x / x.sum(axis=1, keepdims=True)


def kpca_oracle():
    print("== kpca frozen fit (8x5, gamma=0.3, r=2) ==")
    x = frozen_x_8x5()
    m = kpca_fit(x, 0.3, 2)
    print("lambda: %.15g %.15g" % (m["lam"][0], m["lam"][1]))
    print("gamma_p: %.15g" % m["gamma_p"])
    print("latent var (=lam/m): %.15g %.15g"
          % (m["z"][:, 0].var(), m["z"][:, 1].var()))
    print("z[0]: %.15g %.15g" % (m["z"][0, 0], m["z"][0, 1]))
    print("z[4]: %.15g %.15g" % (m["z"][4, 0], m["z"][4, 1]))
    recon = kpca_inverse(m, m["z"][0])
    print("recon[0] mse: %.15g" % ((recon - x[0]) ** 2).mean())


def grid_search_oracle():
    print("== grid search CV oracle (12x4, folds=3, seed=42) ==")
    rows = [
        [0.60, 0.20, 0.10, 0.10],
        [0.55, 0.25, 0.12, 0.08],
        [0.62, 0.18, 0.08, 0.12],
        [0.58, 0.22, 0.11, 0.09],
        [0.64, 0.16, 0.09, 0.11],
        [0.57, 0.23, 0.13, 0.07],
        [0.10, 0.12, 0.58, 0.20],
        [0.08, 0.10, 0.62, 0.20],
        [0.12, 0.14, 0.55, 0.19],
        [0.09, 0.13, 0.60, 0.18],
        [0.11, 0.09, 0.57, 0.23],
        [0.10, 0.11, 0.61, 0.18],
    ]
    x = np.array(rows)
    x = x / x.sum(axis=1, keepdims=True)
    m = x.shape[0]
    folds = 3
    r = 2
    idx = list(range(m))
    SplitMix64(42).shuffle(idx)
    base, rem = divmod(m, folds)
    chunks = []
    at = 0
    for f in range(folds):
        size = base + (1 if f < rem else 0)
        chunks.append(sorted(idx[at:at + size]))
        at += size
    print("folds:", chunks)
    grid = [0.01, 0.1, 0.5]
    best = None
    for gamma in grid:
        fold_means = []
        for fold in chunks:
            train = [i for i in range(m) if i not in fold]
            model = kpca_fit(x[train], gamma, r)
            mses = []
            for i in fold:
                z = kpca_transform(model, x[i])
                xr = kpca_inverse(model, z)
                mses.append(((x[i] - xr) ** 2).mean())
            fold_means.append(np.mean(mses))
        score = float(np.mean(fold_means))
        print("gamma %.3g -> mean CV MSE %.15g" % (gamma, score))
        if best is None or score < best[1]:
            best = (gamma, score)
    print("selected gamma:", best[0])


def vae_params(shapes):
    total = sum(o * i + o for (i, o) in shapes)
    flat = np.array([(((37 * k + 11) % 101) - 50) / 200.0 for k in range(total)])
    out = []
    at = 0
    for (i, o) in shapes:
        w = flat[at:at + o * i].reshape(o, i)
        at += o * i
        b = flat[at:at + o]
        at += o
        out.append((w, b))
    return out


def vae_forward(loss_mode):
    n, h, d = 4, 3, 2
    shapes = [(n, h), (h, d), (h, d), (d, h), (h, n)]
    if loss_mode == "nll":
        shapes.append((h, n))
    layers = vae_params(shapes)
    x = np.array([0.4, 0.3, 0.2, 0.1])
    eps = np.array([0.5, -0.25])

    w1, b1 = layers[0]
    a1 = np.maximum(w1 @ x + b1, 0.0)
    wmu, bmu = layers[1]
    wlv, blv = layers[2]
    mu = wmu @ a1 + bmu
    lv = wlv @ a1 + blv
    z = mu + np.exp(lv / 2.0) * eps
    wd, bd = layers[3]
    h1 = np.maximum(wd @ z + bd, 0.0)
    wmx, bmx = layers[4]
    s = wmx @ h1 + bmx
    y = 1.0 / (1.0 + np.exp(-s))
    mux = y / y.sum()
    kl = -0.5 * np.sum(1.0 + lv - mu ** 2 - np.exp(lv))
    if loss_mode == "nll":
        wlx, blx = layers[5]
        lvx = wlx @ h1 + blx
        var = np.exp(lvx) + 1e-4
        recon = np.sum(np.log(var) / 2.0 + (x - mux) ** 2 / (2.0 * var))
    else:
        recon = 0.5 * np.sum((x - mux) ** 2)
    print("%s: param_count=%d loss=%.15g kl=%.15g recon=%.15g" %
          (loss_mode, sum(o * i + o for (i, o) in shapes), kl + recon, kl, recon))
    print("  mu_x:", ", ".join("%.15g" % v for v in mux))


def vae_oracle():
    print("== vae frozen forward (4-3-2) ==")
    vae_forward("nll")
    vae_forward("mse")


def synth_tv_oracle():
    print("== synth separation sanity (numpy dirichlet) ==")
    rng = np.random.default_rng(0)
    dim = 32
    hot = (dim + 7) // 8
    cb = np.full(dim, 0.5)
    cb[:hot] = 10.0
    rot = int(1.0 * dim / 2)
    ca = np.roll(cb, rot)
    b = rng.dirichlet(cb, size=200)
    a = rng.dirichlet(ca, size=50)
    tv = 0.5 * np.abs(b.mean(axis=0) - a.mean(axis=0)).sum()
    print("tv distance of means (delta=1): %.6g" % tv)


if __name__ == "__main__":
    prng_oracle()
    sym_eig_oracle()
    kpca_oracle()
    grid_search_oracle()
    vae_oracle()
    synth_tv_oracle()
