"""Per-mode success-probability bounds for coherent-state amplification.

Scans the mode-k monotone ratios ||rho^(k)|| / ||sigma^(k)|| for a candidate
|alpha> -> |alpha'> amplifier and compares them with the analytic envelope
e^{-(|a|^2 - |a'|^2)} (|a|/|a'|)^k.  Emits plot-ready CSV.

    python scripts/amplifier_bounds.py --alpha 1.0 --alpha-prime 1.5 --k-max 50
"""

import argparse
from dataclasses import dataclass

from asymmodes import amplifier_envelope, coherent_state, transition_bound


@dataclass
class Config:
    alpha: float
    alpha_prime: float
    n_max: int
    k_max: int


def run(cfg: Config) -> None:
    src = coherent_state(cfg.alpha, cfg.n_max)
    dst = coherent_state(cfg.alpha_prime, cfg.n_max)
    if not (src.truncation_ok and dst.truncation_ok):
        raise SystemExit(f"n_max={cfg.n_max} truncates too much probability; increase it")
    bound = transition_bound(src.density, dst.density, src.representation, tol=0.0)
    print("k,bound,envelope")
    for k in range(cfg.k_max + 1):
        env = min(1.0, amplifier_envelope(cfg.alpha, cfg.alpha_prime, k))
        print(f"{k},{bound.per_mode[k]:.17g},{env:.17g}")
    print(f"# overall bound (min over modes): {bound.overall:.17g}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--alpha", type=float, default=1.0)
    ap.add_argument("--alpha-prime", type=float, default=1.5)
    ap.add_argument("--n-max", type=int, default=60)
    ap.add_argument("--k-max", type=int, default=50)
    args = ap.parse_args()
    run(Config(args.alpha, args.alpha_prime, args.n_max, args.k_max))


if __name__ == "__main__":
    main()
