"""Solve a coupled linear system both ways and compare accuracy.

The collocation approximant reuses the Nystrom node values, so the two agree
at the nodes and differ at most by a logarithmic factor in between.

Run: python demos/nystrom_vs_collocation.py
"""

import math

from sincivp import build_collocation, eval_collocation, eval_nystrom, solve_nystrom
from sincivp.bench.problems import get_problem
from sincivp.bench.study import sup_error

problem = get_problem("coupled2")
for kind in ("SE", "DE"):
    print(f"{kind}:")
    for n in (8, 16, 32):
        s = solve_nystrom(problem, n, kind)
        c = build_collocation(s)
        e_ny = sup_error(lambda t: eval_nystrom(s, t), problem.exact, s.mesh)
        e_co = sup_error(lambda t: eval_collocation(c, t), problem.exact, s.mesh)
        print(f"  n={n:2d} l={s.mesh.l:3d}  nystrom {e_ny:.2e}  collocation {e_co:.2e}  "
              f"ratio/log(n+1) {e_co / e_ny / math.log(n + 1):.2f}  ||A^-1|| {s.inv_norm_estimate:.2f}")
