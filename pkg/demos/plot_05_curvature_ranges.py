"""
Sectional curvature ranges
==========================

Random 2-planes plus the six frame planes are scored at each sample point,
and the extremes are polished by a rotation search.
"""

from pagelab import metrics
from pagelab.invariants import k_range_scan

for m in (metrics.round_sphere_metric(), metrics.fubini_study_metric(), metrics.page_metric_x()):
    kr = k_range_scan(m, n_points=24, n_planes=48)
    print(f"{m.name:7s} K in [{kr.k_min:.8f}, {kr.k_max:.8f}]  (min at t={kr.min_witness.t:.4f})")
