"""Coverage probability vs SIR threshold: closed form, integral, simulation.

Runs the single-station closed form and the two-station coverage integral
against the Monte Carlo simulator on a -10..20 dB grid and prints the
side-by-side table.  Saves a PNG next to this script when matplotlib is
available.
"""

import sys
import time

import numpy as np

from isacnet import McConfig, SystemParams, coverage_curve, mc_coverage

TRIALS = int(sys.argv[1]) if len(sys.argv) > 1 else 200_000


def main():
    t_db = np.arange(-10.0, 21.0, 2.0)
    t_lin = 10.0 ** (t_db / 10.0)
    curves = {}
    for L in (1, 2):
        params = SystemParams(lam=1e-4, mt=10, mr=6, beta=4.0,
                              ps=0.5, pc=0.5, L=L)
        method = "closed-form" if L == 1 else "integral"
        t0 = time.time()
        analytic = coverage_curve(params, t_lin, method=method)
        mc = mc_coverage(params, t_lin, McConfig(trials=TRIALS, seed=1))
        print(f"\ncluster size L = {L} ({method} + {TRIALS:,} trials, "
              f"{time.time() - t0:.0f}s)")
        print(f"{'T [dB]':>7} {'analytic':>10} {'simulated':>10} {'diff':>9}")
        for i, td in enumerate(t_db):
            d = analytic.values[i] - mc.values[i]
            print(f"{td:7.0f} {analytic.values[i]:10.4f} "
                  f"{mc.values[i]:10.4f} {d:+9.4f}")
        curves[L] = (analytic, mc)

    try:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        return
    fig, ax = plt.subplots(figsize=(7, 5))
    for L, (analytic, mc) in curves.items():
        ax.plot(t_db, analytic.values, label=f"L={L} analytic")
        ax.plot(t_db, mc.values, "o", ms=4, label=f"L={L} simulated")
    ax.set_xlabel("SIR threshold [dB]")
    ax.set_ylabel("coverage probability")
    ax.grid(alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(__file__.replace(".py", ".png"), dpi=150)
    print(f"\nsaved {__file__.replace('.py', '.png')}")


if __name__ == "__main__":
    main()
