"""Which maps lift: a semilattice counterexample, then frame maps between small frames.

Run: python3 demos/lifting_frame_maps.py
"""

from collections import Counter

from smoothloc.bruns_lakser import is_admissible_morphism, lift_AU
from smoothloc.catalog import chain
from smoothloc.checks import diamond_to_chain
from smoothloc.corpus import CorpusSpec, corpus_morphisms, gen_frames
from smoothloc.errors import NotAdmissibleError
from smoothloc.lifts import FrameMorphism, build_sb_lift, check_WDb, is_locally_exact_morphism

f = diamond_to_chain()
print(f"{f.name}: {f.f}")
v = is_admissible_morphism(f)
print(f"  admissible: {bool(v)}; failing family {v.witness[0]}, mode {v.witness[1]}")
try:
    lift_AU(f)
except NotAdmissibleError as exc:
    print(f"  no lift to the completions: family {exc.witness}, mode {exc.mode}")

g = FrameMorphism(chain(3), chain(4), [0, 2, 3], name="C3 -> C4, a ↦ b")
lift = build_sb_lift(g)
print(f"\n{g.name} lifts to the smooth sublocales; checks: {lift.checks}")
for src, dst in lift.rows():
    print(f"  {src:10s} ↦ {dst}")

frames = gen_frames(CorpusSpec())
maps = corpus_morphisms(frames, 6)
tally = Counter()
for h in maps:
    wd, exact = bool(check_WDb(h)), bool(is_locally_exact_morphism(h))
    tally[(wd, exact)] += 1
print(f"\nAll {len(maps)} frame maps between corpus frames with at most 6 elements:")
for (wd, exact), n in sorted(tally.items()):
    print(f"  WDb {wd!s:5s} locally exact {exact!s:5s}: {n}")
