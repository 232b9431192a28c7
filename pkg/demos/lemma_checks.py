"""Run the randomised inequality checks, then a deliberately broken variant.

Shrinking the strip constants by 30% must produce violations; that confirms
the checks can fail.

Run: python demos/lemma_checks.py
"""

from sincivp.bench.lemmas import verify_lemmas

print(verify_lemmas(seed=0, samples=10_000).format())
print()
broken = verify_lemmas(seed=0, samples=2_000, cd_scale=0.7)
print("negative control:")
print("\n".join(c.line() for c in broken.checks if not c.passed))
