"""PNG rendering of sampled functions; matplotlib is imported only when a plot is requested."""

from __future__ import annotations


class PlottingUnavailable(RuntimeError):
    pass


def _pyplot():
    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError as exc:
        raise PlottingUnavailable("plotting needs matplotlib (install the 'plot' extra)") from exc
    return plt


def plot_samples(x, y, path, title=None, knots=None):
    """Line plot of ``(x, y)`` written to ``path``; ``knots`` are marked on the axis.

    Parameters
    ----------
    x, y : array_like
        Sample points and values.
    path : str or os.PathLike
        Output file, format inferred from the suffix.
    title : str, optional
    knots : array_like, optional
        Coarse mesh points shown as ticks on the zero line.
    """
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.0, 3.2), dpi=120)
    ax.axhline(0.0, color="0.7", lw=0.8)
    ax.plot(x, y, color="C0", lw=1.4)
    if knots is not None:
        ax.plot(knots, [0.0] * len(knots), "|", color="C3", ms=8)
    ax.axvline(0.0, color="0.85", lw=0.8, ls="--")
    ax.set_xlabel("x")
    if title:
        ax.set_title(title, fontsize=10)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
