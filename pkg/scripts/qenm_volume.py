"""Monte-Carlo volume of the QENM region of the unit cube, with convergence table.

    python3 scripts/qenm_volume.py --seed 42 --max-exp 7
"""
import argparse

import numpy as np

from pauli_nm.qenm import endpoint_margins, qenm_volume


def lattice_volume(n):
    g = (np.arange(n) + 0.5) / n
    total = 0
    for l in g:  # slab by slab to bound memory
        m, k = np.meshgrid(g, g, indexing="ij")
        mg = endpoint_margins(l, m, k)
        total += np.count_nonzero((mg[0] > 0) | (mg[1] > 0) | (mg[2] > 0))
    return total / n ** 3


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--max-exp", type=int, default=7)
    ap.add_argument("--workers", type=int, default=4)
    ap.add_argument("--lattice", type=int, default=400, help="points per axis of the midpoint check")
    args = ap.parse_args()

    print(f"{'samples':>10} {'estimate':>10} {'std.err':>10}   (seed {args.seed})")
    for e in range(4, args.max_exp + 1):
        est = qenm_volume(10 ** e, args.seed, workers=args.workers)
        print(f"{est.samples:>10d} {est.estimate:>10.6f} {est.standard_error:>10.2e}")
    diag = qenm_volume(10 ** 6, args.seed, diagonal=True)
    print(f"diagonal l=m=n: {diag.estimate:.6f} +- {diag.standard_error:.1e} (2/3 = {2 / 3:.6f})")
    print(f"midpoint lattice {args.lattice}^3: {lattice_volume(args.lattice):.6f}")


if __name__ == "__main__":
    main()
