"""Local rational fits of a stable function can be unstable.

The order-15 test function has all its poles at s = -5, but on
[-0.6, 0.6] rad/s it is fitted very well by low-order models with poles in
the right half-plane.  The order sweep shows the maximum phase error of the
fit falling with the order while every model stays unstable.

The projection of the samples on [-1, 1] rad/s is printed too.  It also
reports an unstable part, and that is a property of the data rather than of
the function: beyond 1 rad/s the function grows by ten orders of magnitude,
so the band-limited samples are not those of a band-limited stable
response.  A bounded stable function on the same grid is shown for contrast.

    python3 demos/appendix_local_fit.py
"""
import numpy as np

from _plot import figure
from stabproj import AnalysisConfig, FullAxisFrf, appendix_fun, local_rational_fit, project


def main():
    window = appendix_fun(np.linspace(-0.6, 0.6, 1000))
    errors = []
    for order in range(2, 12):
        model = local_rational_fit(window, (-0.6, 0.6), order)
        rhp = model.poles[model.poles.real > 0]
        errors.append(model.max_phase_error_deg)
        print(f"order {order:2d}: max phase error {model.max_phase_error_deg:9.3g} deg, "
              f"{rhp.size} RHP poles {np.round(rhp, 3)}")

    cfg = AnalysisConfig(f_max=1 / (2 * np.pi), interp="pade")
    w = np.linspace(-1, 1, 2001)
    res = project(appendix_fun(w), cfg)
    print(f"projection on [-1, 1]: {res.report.verdict}, margin {res.report.margin_db:.1f} dB")
    ctrl = project(FullAxisFrf(w / (2 * np.pi), 500 / (1j * w + 5) ** 3), cfg)
    print(f"bounded control 500/(s+5)^3: {ctrl.report.verdict}, "
          f"margin {ctrl.report.margin_db:.1f} dB")

    plt, out = figure()
    if plt:
        fig, ax = plt.subplots(figsize=(6, 4))
        ax.semilogy(range(2, 12), errors, "o-")
        ax.set_xlabel("model order")
        ax.set_ylabel("max phase error [deg]")
        fig.tight_layout()
        fig.savefig(out / "appendix_local_fit.png", dpi=120)
        print("wrote", out / "appendix_local_fit.png")


if __name__ == "__main__":
    main()
