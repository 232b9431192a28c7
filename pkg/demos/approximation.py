"""DE-Sinc approximation of t e^{-t} next to its explicit error bound.

Run: python demos/approximation.py
"""

from sincivp.bench.study import solve_method, sup_error

print(f"{'n':>3} {'error':>10} {'bound':>10} {'error/bound':>12}")
for n in (4, 8, 12, 16, 24, 32, 40):
    mesh, approximant, exact, extras = solve_method("de-approx", "texp", n)
    err = sup_error(approximant, exact, mesh)
    print(f"{n:3d} {err:10.3e} {extras['bound']:10.3e} {err / extras['bound']:12.3e}")
