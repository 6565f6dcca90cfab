"""Grid-resolution, kernel-cutoff and two-mode-grid convergence of the headline numbers."""
import argparse

import numpy as np

from gkpcb.analytics import fidelity_closed_form
from gkpcb.binning import qubit_density
from gkpcb.ec import ec_qubit_average
from gkpcb.gates import apply_cubic_T
from gkpcb.gkp import LogicalLabel, SqueezingSpec, grid_for, logical_state
from gkpcb.qubit import fidelity_to_magic
from gkpcb.teleport import teleport_T, two_mode_grid


def cubic_plus(s, samples_per_sigma=6.0):
    g = grid_for(s, samples_per_sigma)
    return apply_cubic_T(logical_state(LogicalLabel.PLUS, s, g))


def resolution(dbs):
    print("binning fidelity of U_T|+> vs samples per peak width")
    print(f"{'dB':>5} {'sps=3':>10} {'sps=6':>10} {'sps=12':>10} {'closed':>10}")
    for db in dbs:
        s = SqueezingSpec.symmetric(db)
        fs = [fidelity_to_magic(qubit_density(cubic_plus(s, sps))) for sps in (3, 6, 12)]
        print(f"{db:5.1f} " + " ".join(f"{f:10.6f}" for f in fs) + f" {fidelity_closed_form(1, 1):10.6f}")


def cutoff(dbs):
    print("\nmax |rho(k_max) - rho(full sum)| for EC of U_T|+>")
    print(f"{'dB':>5} " + " ".join(f"{k:>10}" for k in (16, 32, 64, 128)))
    for db in dbs:
        psi = cubic_plus(SqueezingSpec.symmetric(db))
        full = ec_qubit_average(psi).matrix
        errs = [np.max(np.abs(ec_qubit_average(psi, k).matrix - full)) for k in (16, 32, 64, 128)]
        print(f"{db:5.1f} " + " ".join(f"{e:10.2e}" for e in errs))


def two_mode(dbs):
    print("\nteleported-T fidelity vs two-mode grid size")
    print(f"{'dB':>5} {'1024':>12} {'2048':>12}")
    for db in dbs:
        s = SqueezingSpec.symmetric(db)
        fs = []
        for n in (1024, 2048):
            g = two_mode_grid(s, n_points=n)
            fs.append(fidelity_to_magic(teleport_T(logical_state(LogicalLabel.PLUS, s, g), s)))
        print(f"{db:5.1f} " + " ".join(f"{f:12.9f}" for f in fs))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--db", type=float, nargs="*", default=[15, 20, 25, 30])
    ap.add_argument("--skip-teleport", action="store_true")
    args = ap.parse_args()
    resolution(args.db)
    cutoff(args.db)
    if not args.skip_teleport:
        two_mode([d for d in args.db if d <= 20])


if __name__ == "__main__":
    main()
