"""SE and DE indefinite integration of e^{-2t} over (0, t).

Run: python demos/indefinite_integration.py
"""

import numpy as np

from sincivp.bench.problems import get_function
from sincivp.quad import build_de_indefinite, build_se_indefinite
from sincivp.sinc import de_mesh_indef, se_mesh

case = get_function("exp2")
t = np.array([0.0, 0.01, 0.5, 2.0, 10.0, np.inf])
for n in (8, 16, 32):
    se = build_se_indefinite(case.f, se_mesh(1.0, 1.0, np.pi / 2, n))
    de = build_de_indefinite(case.f, de_mesh_indef(1.0, 1.0, 1.0, n))
    ref = case.integral(t)
    print(f"n={n:2d}  SE max err {np.max(np.abs(se(t) - ref)):.2e}   DE max err {np.max(np.abs(de(t) - ref)):.2e}")
