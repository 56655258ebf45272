"""Shared plotting helper for the demos (matplotlib is optional)."""
from pathlib import Path

OUT = Path(__file__).parent / "out"


def figure():
    """Return ``(plt, out_dir)`` or ``(None, None)`` without matplotlib."""
    try:
        import matplotlib
    except ImportError:
        print("matplotlib not installed; skipping the figure")
        return None, None
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    OUT.mkdir(exist_ok=True)
    return plt, OUT


def plot_curves(ax, result, title):
    f, s_db, u_db, e_db = result.curves()
    ax.plot(f / 1e9, s_db, label="stable")
    ax.plot(f / 1e9, u_db, label="unstable")
    ax.plot(f / 1e9, e_db, "k:", label="interpolation error")
    ax.set_xlabel("frequency [GHz]")
    ax.set_ylabel("dB Ohm")
    ax.set_title(title)
    ax.legend(loc="lower left")
