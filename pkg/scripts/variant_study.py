"""Resonance windows under each closed-form variant, plus a q scan around the quoted panels.

    python scripts/variant_study.py

Prints where the windows land for the derived and printed forms of the
amplitude damping W_12 entry and of the dense coding spectrum, and which
mixing parameter q would put the windows at the quoted endpoints.
"""

import numpy as np

from noisy_channels.sweep import FIG2_INPUT, SweepSpec, detect_resonance, run_sweep

QUOTED = {"1c": (0.25, 0.60), "2c": (0.64, 0.84), "3b": (0.15, 1.0)}


def windows(spec):
    return [(round(w.p_lo, 3), round(w.p_hi, 3)) for w in detect_resonance(run_sweep(spec))]


def main():
    print("panel  quoted        variant   windows")
    for panel, quoted in QUOTED.items():
        for variant in ("derived", "printed"):
            spec = SweepSpec.for_panel(panel, w12_variant=variant, xi_variant=variant)
            print(f"{panel:5}  {quoted!s:12}  {variant:8}  {windows(spec)}")

    print("\nq scan (derived forms)")
    print("q      bf a=(0.1,0.1,0.9)        dc")
    for q in np.round(np.arange(0.3, 0.75, 0.05), 2):
        bf = windows(SweepSpec("bf", float(q), FIG2_INPUT))
        dc = windows(SweepSpec("dc", float(q)))
        print(f"{q:<5}  {bf!s:25} {dc}")


if __name__ == "__main__":
    main()
