"""
SIR distributions under random power draws
==========================================

Powers are drawn uniformly in 0..10 dB for every instance and each
scheduler places the users.  200 instances keep this quick; the presets
default to 1000.
"""
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from inifair import max_cdf_distance, preset, run_cdf_experiment

res = run_cdf_experiment(preset("fig4", instances=200), out_dir="out")
curves = res.curves()

fig, axes = plt.subplots(1, 2, figsize=(9, 3.5), sharey=True)
for ax, which in zip(axes, (1, 2)):
    for algorithm in ("random", "algo1", "algo2"):
        c = curves[(algorithm, "edge", which)]
        ax.step(c.values, c.probs, where="post", label=algorithm)
        print(f"NUM-{which} edge {algorithm:6s} IQR {c.iqr():5.2f} dB")
    ax.set_title(f"edge UE, NUM-{which}")
    ax.set_xlabel("SIR (dB)")
axes[0].set_ylabel("CDF")
axes[0].legend()
fig.tight_layout()
fig.savefig("edge_cdf.png", dpi=120)

for name in ("fig5a", "fig5b"):
    r = run_cdf_experiment(preset(name, instances=200, algorithms=("algo1", "algo2")))
    c = r.curves()
    d = max_cdf_distance(c[("algo1", "inner", 1)], c[("algo2", "inner", 1)])
    print(f"{name}: NUM-1 inner-UE CDF distance algo1 vs algo2 {d:.3f}")
