"""Regenerate src/powerpvq/data/sign_max_weights.json (sign+max profiles and sign gains).

    python scripts/fit_sign_max.py [--l-max 32] [--samples 1000000]
"""
import argparse
import json
from pathlib import Path

from powerpvq.baselines import fit_sign_gain, fit_sign_max_weights
from powerpvq.benchmark import DEFAULT_SEED
from powerpvq.geometry import SAMPLING_LAWS

OUT = Path(__file__).resolve().parents[1] / "src" / "powerpvq" / "data" / "sign_max_weights.json"


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--l-max", type=int, default=32)
    ap.add_argument("--samples", type=int, default=1_000_000)
    ap.add_argument("--seed", type=int, default=DEFAULT_SEED)
    args = ap.parse_args()
    weights = {
        law: {str(l): list(fit_sign_max_weights(l, args.samples, args.seed, law))
              for l in range(2, args.l_max + 1)}
        for law in SAMPLING_LAWS
    }
    gains = {
        law: {str(l): fit_sign_gain(l, args.samples, args.seed, law) for l in range(2, args.l_max + 1)}
        for law in SAMPLING_LAWS
    }
    doc = {"samples": args.samples, "seed": args.seed, "weights": weights, "sign_gain": gains}
    OUT.write_text(json.dumps(doc, indent=1) + "\n")
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()
