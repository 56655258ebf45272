"""Period doubling in a large-signal analysis: copies of one resonance.

Around a periodic steady state the linearized response of harmonic b has
poles repeated at multiples of the fundamental.  A period-doubling
instability at 50 kHz on a 100 kHz drive therefore shows up as unstable
resonances at 50, 150 and 250 kHz.  Mixer-style single-sideband outputs are
first recombined into Hermitian sine/cosine responses.

    python3 demos/period_doubling.py
"""
import numpy as np

from _plot import figure
from stabproj import (AnalysisConfig, Frf, eval_frf, period_doubling_system, project,
                      random_system, recombine_ssb, split_ssb, unstable_peaks)


def main():
    f = np.linspace(1e3, 2e6, 2000) + 1.0
    sysm = period_doubling_system() + random_system(20, (1e4, 2e6), seed=3)
    z0 = eval_frf(sysm, f, label="b0")

    # a pair of sideband responses and their recombination
    zb = Frf(f, z0.values, b=1, label="b+1")
    zmb = Frf(f, 0.5 * z0.values, b=-1, label="b-1")
    zp, zm = split_ssb(zb, zmb)
    back, _ = recombine_ssb(zp, zm)
    print(f"SSB round trip error {np.max(np.abs(back.values - zb.values)):.1e}")

    res = project(z0, AnalysisConfig(f_max=2e6, interp="pade"))
    rep = res.report
    pk, lvl = unstable_peaks(res.decomposition, rep.error_floor_db + rep.threshold_db,
                             min_separation=20e3)
    print(f"verdict {rep.verdict}, margin {rep.margin_db:.1f} dB")
    print("unstable peaks [kHz]:", np.round(pk / 1e3, 2))

    plt, out = figure()
    if plt:
        fc, s_db, u_db, e_db = res.curves()
        fig, ax = plt.subplots(figsize=(8, 4.5))
        ax.plot(fc / 1e3, s_db, label="stable")
        ax.plot(fc / 1e3, u_db, label="unstable")
        ax.plot(fc / 1e3, e_db, "k:", label="interpolation error")
        ax.set_xlim(0, 400)
        ax.set_xlabel("frequency [kHz]")
        ax.set_ylabel("dB Ohm")
        ax.legend()
        fig.tight_layout()
        fig.savefig(out / "period_doubling.png", dpi=120)
        print("wrote", out / "period_doubling.png")


if __name__ == "__main__":
    main()
