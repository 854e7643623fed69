"""
Domination certificates
=======================

For a weight sigma whose central character is a norm power, there is a
parallel weight t with [sigma] <= [S_(t,...,t)^(x)e].  The construction
outputs the chain of shifts as a certificate that a separate checker replays.
"""

# %%
import json
from dataclasses import replace

from modgl2 import BaseField, brute_force_min_t, dominate_parallel_weight, replay_certificate

F9 = BaseField(3, 2)
sigma = F9.weight(2, [1, 1])
cert = dominate_parallel_weight(F9, sigma)
print(json.dumps(cert.to_json(intermediates=False), indent=1))
print(replay_certificate(cert))

# %%
# Brute force over t agrees.
print(brute_force_min_t(F9, sigma, 1, 30))

# %%
# e > 1 closes the chain with the surjection S_(et) -> S_t^(x)e.
cert2 = dominate_parallel_weight(F9, F9.weight(0, [0, 0]), e=2)
print(cert2.t, [s.kind for s in cert2.steps], replay_certificate(cert2))

# %%
# Tampering is caught.
bad = replace(cert, t=cert.t - 2 * cert.period, intermediates=())
print(replay_certificate(bad))
