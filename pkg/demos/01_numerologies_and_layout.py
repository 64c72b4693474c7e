"""
Numerologies and a two-block layout
===================================

Builds the NR numerology table, then the 15/30 kHz pair used in the
simulations and the three-users-per-block layout with no guard band.
"""
from inifair import UeProfile, build_allocation, make_numerology

# the timing table uses the normal CP (1/14 of the useful symbol)
print(" kHz   T_cp(us)  slot(ms)")
for k in range(4):
    num = make_numerology(k, 15.0, 4096, 1 / 14, timing_only=True)
    print(f"{num.delta_f:4.0f}   {num.t_cp:7.2f}   {num.slot_duration:6.3f}")

# the simulated pair: 4096/2048-point transforms, CP ratio 1/16
num1 = make_numerology(0, 15.0, 4096, 1 / 16)
num2 = make_numerology(1, 15.0, 4096, 1 / 16)
print(num1.n_fft, num1.n_cp, "|", num2.n_fft, num2.n_cp)

ues1 = [UeProfile(f"UE-{i}", 1, 0.0, 120) for i in (1, 4, 5)]
ues2 = [UeProfile(f"UE-{i}", 2, 0.0, 120) for i in (6, 3, 2)]
alloc = build_allocation(num1, num2, ues1, ues2)

for which in (1, 2):
    bins = alloc.reference_bins(which)
    for ue in alloc.ues(which):
        first, count = alloc.ranges[ue.id]
        print(f"NUM-{which} {ue.id}: reference bins {bins[first]}..{bins[first + count - 1]}")
print("edge UEs:", alloc.edge1.id, alloc.edge2.id)
