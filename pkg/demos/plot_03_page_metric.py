"""
The Page metric
===============

Build the Page metric from its quartic constant, confirm it is Einstein,
and show that the sectional curvature of the (e₀, e₁) plane changes sign.
"""

import numpy as np

from pagelab import metrics, page_k01, riemann_frame
from pagelab.invariants import bolt_geodesy_check, einstein_report, sign_change_scan

# %%
# The constant a is the root of a⁴ + 4a³ − 6a² + 12a − 3 in (0, 1).
pc = metrics.solve_page_constant()
print(f"a = {pc.a!r}, |p(a)| = {pc.residual:.1e}, unique: {pc.unique}")

# %%
# Einstein check on 200 Chebyshev points, in both coordinates.
for m in (metrics.page_metric_r(pc), metrics.page_metric_x(pc)):
    rep = einstein_report(m, 200)
    print(f"{m.name}: lambda = {rep.lambdaE:.12f}, residual = {rep.max_residual:.1e}")

# %%
# K₀₁ from the closed form, next to the frame engine.
m = metrics.page_metric_x(pc)
for x in np.linspace(-0.9, 0.9, 7):
    print(f"x={x:+.2f}  K01={page_k01(pc, m.convention, x):+.6f}  R0101={riemann_frame(m, x).R[0, 1, 0, 1]:+.6f}")

cert = sign_change_scan(lambda x: page_k01(pc, m.convention, x), (-1.0, 1.0), 1000)
print(cert)

# %%
# The ends of the r-interval are two-spheres with vanishing second
# fundamental form.
mr = metrics.page_metric_r(pc)
for end in ("lower", "upper"):
    print(bolt_geodesy_check(mr, end))
