"""Rebuild the smooth sublocales of C4 from the semilattice of canonical pairs.

Run: python3 demos/completion_of_lc.py
"""

from smoothloc.bits import bits
from smoothloc.bruns_lakser import enumerate_AU, is_admissible_family
from smoothloc.catalog import chain
from smoothloc.correspondence import correspondence, iso_table
from smoothloc.lc import LcPair, is_locally_exact, lc_elements, lc_meet

L = chain(4)
LC = lc_elements(L)
print(f"LC({L.name}) has {LC.n} canonical pairs (a, b) standing for c(a) ∩ o(b):")
for i, p in enumerate(LC.pairs):
    print(f"  {p.format(L):8s} {LC.sublocale(i).format()}")

fam = [LcPair(2, 3), LcPair(0, 1)]
m = lc_meet(L, fam)
ids = [LC.index[p] for p in fam]
print("\nThe family {(b,1), (0,a)}:")
print(f"  meet in LC: {m.meet.format(L)}; admissible: {bool(is_admissible_family(LC, ids))}")
print(f"  joining with {m.witness.format(L)} breaks distributivity")
print(f"  locally exact: {bool(is_locally_exact(L, fam))}")

au = enumerate_AU(LC)
print(f"\nAU(LC({L.name})) has {len(au)} admissible upper sets")
iso = iso_table(L, "smooth")
corr = correspondence(L, "smooth")
print(f"and matches the {len(iso)} smooth sublocales one for one:")
for s, u in iso.pairs:
    gens = ",".join(LC.label(x) for x in bits(u))
    print(f"  {corr.lattice[s].format():12s} ↔ {{{gens}}}")
