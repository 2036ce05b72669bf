"""Walk through the sublocales of the four-element chain 0 < a < b < 1.

Run: python3 demos/sublocales_of_a_chain.py
"""

from smoothloc.catalog import chain
from smoothloc.sublocales import (
    closed,
    closed_joins,
    enumerate_sublocales,
    is_locally_closed,
    is_subfit,
    locally_closed,
    nu,
    open_,
    smooth_sublocales,
    supplement,
)

L = chain(4)
A, B = 1, 2
SL = enumerate_sublocales(L)

print(f"{L.name} has {len(SL)} sublocales:")
for S in SL:
    tag = "locally closed" if is_locally_closed(S) else "not locally closed"
    print(f"  {S.format():12s} {tag}")

print("\nClosed and open sublocales are complements of each other:")
for x in range(L.n):
    print(f"  c({L.label(x)}) = {closed(L, x).format():12s} o({L.label(x)}) = {open_(L, x).format()}")

S = closed(L, B) | open_(L, A)
print(f"\nc(b) ∨ o(a) = {S.format()} is a join of locally closed sublocales")
print(f"but is not itself locally closed: {not is_locally_closed(S)}")
print(f"its supplement is {supplement(SL, S).format()} = c(a) ∩ o(b) = {locally_closed(L, A, B).format()}")

T = locally_closed(L, A, B)
print("\nThe nucleus of c(a) ∩ o(b) sends each x to b → (a ∨ x):")
print("  " + ", ".join(f"{L.label(x)} ↦ {L.label(nu(T, x))}" for x in range(L.n)))

sb, sc = smooth_sublocales(L), closed_joins(L)
print(f"\nsmooth sublocales: {len(sb)}; joins of closed sublocales: {len(sc)}")
print(f"the two agree only on subfit frames; {L.name} subfit: {bool(is_subfit(L))}")
