"""
Weight-shifting inequalities
============================

Multiplication by theta operators and Hasse invariants gives inequalities
between classes of symmetric powers.  Each of them can be tested directly.
"""

# %%
from modgl2 import BaseField, leq, sym_monomial
from modgl2.shifts import check_hasse_fp, check_theta_fq, solve_system, sweep_lemmas

F5 = BaseField(5)
for n in range(14):
    print(n, check_hasse_fp(F5, n))

# %%
# At n = r(p+1) the plain inequality [S_n] <= [S_(n+p-1)] can fail, and the
# extra det^r term is really needed.
n = 6
print(leq(sym_monomial(F5, [n]), sym_monomial(F5, [n + 4])))

# %%
# The theta inequality over F_9, moving weight between embeddings.
F9 = BaseField(3, 2)
print(all(check_theta_fq(F9, i, m, k) for i in range(2) for m in range(10) for k in range(10)))

# %%
# The linear system that schedules the Hasse steps over F_9.
sol = solve_system(F9, (4, 0))
print(sol)
print("common value", sol.values())

# %%
# A small sweep over several fields.
report = sweep_lemmas([BaseField(2, 2), BaseField(3), BaseField(3, 2)], max_n=12)
print(report.checked, "ok" if report.ok else report.failures)
