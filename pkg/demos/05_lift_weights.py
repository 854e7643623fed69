"""
Parallel lift weights
=====================

Given the ramification data above p, the weights k + n*delta with n >= n0
are the ones at which every Serre weight compatible with k shows up in the
parallel symmetric power at each place.
"""

# %%
from modgl2.serre import RamificationProfile, delta, lift_weight_schedule

for p, places in [(2, "1:1"), (3, "1:1"), (5, "2:1,4:1"), (7, "3:1,2:1")]:
    print(p, places, "delta =", delta(RamificationProfile.parse(p, places)))

# %%
profile = RamificationProfile.parse(3, "2:2,1:1", k=4)
sched = lift_weight_schedule(profile)
print("delta", sched.delta, "n0", sched.n0, "certified from", sched.n_certified)
print([sched.weight(n) for n in range(sched.n0, sched.n0 + 5)])

# %%
# The certificates shipped with the schedule.
for n, rows in sched.certificates.items():
    print(n, [len(certs) for certs in rows])
