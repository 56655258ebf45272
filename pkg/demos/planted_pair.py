"""Detecting a planted instability in a large random system.

A 202-pole random system gets one unstable pair at 1 GHz (growth rate
2 pi 10 MHz) and a 2 ns delay, and is sampled at 5000 points up to 5 GHz.
The projection splits the filtered response into stable and unstable parts;
the unstable part should rise well above the interpolation-error floor near
1 GHz, and Kung's method should return the planted pair.  The delay does not
matter: it only rotates the residues by exp(-lambda tau).

    python3 demos/planted_pair.py
"""
import numpy as np

from _plot import figure, plot_curves
from stabproj import AnalysisConfig, eval_frf, project, random_system

F0, SIGMA = 1e9, 2 * np.pi * 1e7


def main():
    sysm = random_system(202, (1e8, 5e9), 1, (F0, SIGMA), seed=0, delay=2e-9)
    frf = eval_frf(sysm, np.linspace(0, 5e9, 5000))
    res = project(frf, AnalysisConfig(f_max=5e9, interp="pade", extract_poles=True))
    rep = res.report
    print(f"verdict {rep.verdict}: unstable peak {rep.unstable_peak_db:.1f} dB, "
          f"floor {rep.error_floor_db:.1f} dB, margin {rep.margin_db:.1f} dB "
          f"at {rep.peak_frequency / 1e9:.4f} GHz")
    print("planted   ", np.round(sysm.unstable_poles(), 1))
    print("recovered ", np.round(res.poles.lambdas, 1))
    fs, fu = res.energy_split()
    print(f"coefficient energy: {fs:.4f} stable, {fu:.2e} unstable")

    plt, out = figure()
    if plt:
        fig, ax = plt.subplots(figsize=(8, 4.5))
        plot_curves(ax, res, "202 poles, unstable pair at 1 GHz, 2 ns delay")
        fig.tight_layout()
        fig.savefig(out / "planted_pair.png", dpi=120)
        print("wrote", out / "planted_pair.png")


if __name__ == "__main__":
    main()
