"""
Power-offset cases
==================

Case 1: equal powers.  Case 2: NUM-2 edge UE +3 dB.  Case 3: the NUM-2 UE
next to the edge +3 dB.  Case 4: both edge UEs +3 dB.
"""
from inifair import preset, run_case

cfg = preset("fig3", trials=1000)
base = None
for case in (1, 2, 3, 4):
    report, alloc = run_case(cfg, case, out_dir="out")
    sir = report.per_ue_sir_db
    if base is None:
        base = sir
    row = "  ".join(f"{ue.id} {sir[ue.id]:6.2f}" for ue in alloc.order1 + alloc.order2)
    print(f"case {case}: {row}")
    print(f"         NUM-1 edge change vs case 1: {sir['1-3'] - base['1-3']:+.2f} dB")

# a bigger edge boost, for comparison with the larger decrement in the figure
report, _ = run_case(cfg.replace(case2_boost_db=6.0), 2)
print(f"case 2 with +6 dB: NUM-1 edge change {report.per_ue_sir_db['1-3'] - base['1-3']:+.2f} dB")
