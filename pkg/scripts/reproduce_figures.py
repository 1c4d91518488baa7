"""Write curve data for all nine figure panels and print their resonance windows.

    python scripts/reproduce_figures.py --out data/ [--steps 1000] [--plot]

``--plot`` additionally renders a 3x3 PNG grid (needs matplotlib), one column
per figure. In the middle column the noise is drawn as S(W) - 1.
"""

import argparse
from pathlib import Path

from noisy_channels.cli import records_to_csv
from noisy_channels.sweep import FIGURE_PANELS, SweepSpec, detect_resonance, run_sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("data"))
    ap.add_argument("--steps", type=int, default=1000)
    ap.add_argument("--w12-variant", choices=("derived", "printed"), default="derived")
    ap.add_argument("--xi-variant", choices=("derived", "printed"), default="derived")
    ap.add_argument("--plot", action="store_true")
    args = ap.parse_args()

    args.out.mkdir(parents=True, exist_ok=True)
    curves = {}
    for panel in FIGURE_PANELS:
        spec = SweepSpec.for_panel(panel, steps=args.steps, w12_variant=args.w12_variant, xi_variant=args.xi_variant)
        records = run_sweep(spec)
        (args.out / f"fig{panel}.csv").write_text(records_to_csv(records, spec))
        windows = detect_resonance(records)
        curves[panel] = records
        shown = ", ".join(f"[{w.p_lo:.3f}, {w.p_hi:.3f}]" for w in windows) or "none"
        print(f"{panel}: scenario={spec.scenario} q={spec.q} windows: {shown}")

    if args.plot:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        fig, axes = plt.subplots(3, 3, figsize=(11, 9), sharex=True)
        for ax, (panel, records) in zip(axes.T.ravel(), curves.items()):
            ps = [r.p for r in records]
            offset = 1.0 if panel.startswith("2") else 0.0
            ax.plot(ps, [r.metric for r in records], "-", label="rate")
            ax.plot(ps, [r.noise - offset for r in records], "--", label="noise")
            ax.set_title(panel)
        axes[0, 0].legend()
        fig.tight_layout()
        fig.savefig(args.out / "figures.png", dpi=120)
        print(f"wrote {args.out / 'figures.png'}")


if __name__ == "__main__":
    main()
