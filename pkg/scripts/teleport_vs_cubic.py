"""Cubic-phase T gate against magic-state teleportation, both EC-decoded."""
import argparse

from gkpcb.ec import ec_qubit_average
from gkpcb.gates import apply_cubic_T
from gkpcb.gkp import LogicalLabel, SqueezingSpec, grid_for, logical_state
from gkpcb.qubit import fidelity_to_magic
from gkpcb.teleport import teleport_T, two_mode_grid


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--db", type=float, nargs="*", default=[10, 12.5, 15, 17.5, 20])
    ap.add_argument("--points", type=int, default=1024, help="two-mode grid points per mode")
    args = ap.parse_args()
    print(f"{'dB':>6} {'identity':>10} {'cubic':>10} {'teleport':>10} {'target':>10}")
    for db in args.db:
        s = SqueezingSpec.symmetric(db)
        g = grid_for(s)
        plus = logical_state(LogicalLabel.PLUS, s, g)
        ec = lambda psi: fidelity_to_magic(ec_qubit_average(psi))  # noqa: E731
        g2 = two_mode_grid(s, n_points=args.points)
        tele = fidelity_to_magic(teleport_T(logical_state(LogicalLabel.PLUS, s, g2), s))
        target = ec(logical_state(LogicalLabel.MAGIC, s, g))
        print(f"{db:6.1f} {ec(plus):10.6f} {ec(apply_cubic_T(plus)):10.6f} {tele:10.6f} {target:10.6f}")


if __name__ == "__main__":
    main()
