"""
Brauer characters as an independent check
=========================================

A virtual representation is determined by its Brauer character on the
p-regular classes.  The oracle stores each value as an element of
Z[x]/(x^M - 1), M = q^2 - 1, so every comparison is exact.
"""

# %%
import numpy as np

from modgl2 import BaseField, VirtualRep, sym_class, tensor
from modgl2.brauer import oracle

F4 = BaseField(2, 2)
orc = oracle(F4)
print(len(orc.classes), "p-regular classes")
for cls in orc.classes[:4]:
    print(cls)

# %%
# The straightened Sym^k and the character computed straight from the
# eigenvalues agree.
for k in range(0, 20, 3):
    same = np.array_equal(orc.brauer_char(sym_class(F4, 1, k)), orc.sym_char(1, k))
    print(f"Sym^{k}[1]: {same}")

# %%
# Multiplicativity: the character of a tensor product is the product of
# characters.
ws = list(F4.weights())
x, y = VirtualRep(F4, {ws[3]: 1}), VirtualRep(F4, {ws[7]: 2})
print(np.array_equal(orc.brauer_char(tensor(x, y)), orc.multiply(orc.brauer_char(x), orc.brauer_char(y))))

# %%
# Degree column of the table: the value at the identity is the dimension.
idx = orc.identity_index()
for w in ws[:6]:
    print(w, orc.basis_char(w)[idx, 0])
