"""Write the standard CSV series (rates, Choi spectra, measures, trace distances) to a directory.

    python3 scripts/write_series.py --out results/
"""
import argparse
import csv
import math
from pathlib import Path

import numpy as np

from pauli_nm import channels as ch
from pauli_nm.divisibility import choi_scan, td_scan
from pauli_nm.generator import rates_grid, singularities
from pauli_nm.measures import hcla, sss
from pauli_nm.qalg import ket_state


def write(path, header, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow(["" if v is None else "%.12g" % v for v in r])
    print(f"wrote {path} ({len(rows)} rows)")


def rates_rows(fam, grid):
    return [(pt.p, None, None, None, 1) if pt.singular else (pt.p, *pt.rates, 0)
            for pt in rates_grid(fam, grid)]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("results"))
    ap.add_argument("--step", type=float, default=1e-3)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    grid = np.round(np.arange(0, 0.75 + args.step / 2, args.step), 12)
    header = ["p", "gamma1", "gamma2", "gamma3", "singular"]

    aniso = ch.AnisoDepol(0.4, 0.5, 0.65)
    write(args.out / "rates_aniso_0.4_0.5_0.65.csv", header, rates_rows(aniso, grid))
    print("  singularities:", [round(p, 6) for p in singularities(aniso).positions])

    for a in (0.5, 0.8):
        write(args.out / f"rates_iso_{a}.csv", header, rates_rows(ch.IsoDepol(a), grid))

    aniso = ch.AnisoDepol(0.2, 0.4, 0.6)
    s = 0.37
    rows = [(p, *spec.values) for p, spec in choi_scan(aniso, s, np.linspace(s, 0.392, 221))]
    write(args.out / "choi_aniso_0.2_0.4_0.6_s0.37.csv", ["p", "lambda1", "lambda2", "lambda3", "lambda4"], rows)

    rows = []
    for a in np.round(np.arange(1, 21) * 0.05, 10):
        fam = ch.IsoDepol(a)
        rows.append((a, hcla(fam).value, sss(fam).renormalized_value))
    write(args.out / "measures_iso_sweep.csv", ["alpha", "hcla", "sss_renormalized"], rows)

    ts = np.linspace(0, 10, 2001)
    tm = ch.appendix_t_minus(0.75, 1.0)
    rows = [(t, None if abs(t - tm) < 1e-9 else ch.appendix_rate_t(0.75, 1.0, t)) for t in ts]
    write(args.out / "appendix_dephasing_rate_t.csv", ["t", "gamma"], rows)
    print(f"  t- = {tm:.12f} (ln 3 = {math.log(3):.12f})")

    for a in (0.0, 0.5, 0.9):
        rows = td_scan(ch.IsoDepol(a), ket_state(0), ket_state(1), grid)
        write(args.out / f"td_alpha{a}.csv", ["p", "trace_distance"], rows)

    ts = np.linspace(0, 8, 1601)
    write(args.out / "cos_dephasing_rates.csv", header, rates_rows(ch.CosDephasing(1.0), ts))


if __name__ == "__main__":
    main()
