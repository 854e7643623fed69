"""
Symmetric powers in the Grothendieck ring
=========================================

Over F_p the symmetric powers Sym^k of the standard representation stop
being irreducible once k >= p.  Here we expand a few of them in the basis of
irreducibles det^a (x) S_n and look at how the constituents are organised.
"""

# %%
from modgl2 import BaseField, VirtualRep, leq, sym_class, sym_monomial, tensor

F3 = BaseField(3)
for k in range(8):
    x = sym_class(F3, 0, k)
    print(f"Sym^{k:<2} dim {x.dimension():>2}:  {x}")

# %%
# Negative exponents follow the Laurent continuation: Sym^-1 = 0 and
# Sym^k = -det^(k+1) Sym^(-k-2) for k < -1.
print(sym_class(F3, 0, -1))
print(sym_class(F3, 0, -3))

# %%
# Tensor products go through Clebsch-Gordan followed by straightening.
s2 = VirtualRep.basis(F3, 0, [2])
print(tensor(s2, s2))
print(tensor(s2, s2) == sym_class(F3, 0, 4) + sym_class(F3, 0, 2).twist(1) + VirtualRep.det(F3, 2))

# %%
# Over F_9 there are two embeddings.  S_(n0, n1) is Sym^n0 (x) Frob(Sym^n1).
F9 = BaseField(3, 2)
x = sym_monomial(F9, [4, 1])
print(x, "dimension", x.dimension())

# %%
# The partial order compares multiplicities termwise.
print(leq(VirtualRep.basis(F3, 0, [1]), sym_class(F3, 0, 3)))
print(leq(VirtualRep.unit(F3), sym_class(F3, 0, 2)))
