"""
Choosing the boundary pair
==========================

Random placement against the two fairness-aware rules on the
six-user layout.
"""
from inifair import UeProfile, build_candidates, schedule_algo1, schedule_algo2, schedule_random

ues1 = [UeProfile("UE-1", 1, 2.0, 120), UeProfile("UE-4", 1, 8.0, 120), UeProfile("UE-5", 1, 6.0, 120)]
ues2 = [UeProfile("UE-6", 2, 2.8, 120), UeProfile("UE-3", 2, 6.5, 120), UeProfile("UE-2", 2, 9.0, 120)]


def show(decision):
    layout = [u.id for u in decision.order1] + ["|"] + [u.id for u in decision.order2]
    print(f"{decision.algorithm:17s} {' '.join(layout)}   PO {decision.edge_pair.po_db:.1f} dB")


show(schedule_random(ues1, ues2, seed=1))
show(schedule_algo1(ues1, ues2))
show(schedule_algo2(ues1, ues2, r=2))

cands = build_candidates(ues1, ues2, r=2)
print(f"threshold {cands.th_p:.2f} dB")
for pair, pl in zip(cands.pairs, cands.pl):
    print(f"  ({ues1[pair.s - 1].id}, {ues2[pair.t - 1].id}) PO {pair.po_db:.1f} dB, mean level {pl:.2f} dB")
