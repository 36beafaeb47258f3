"""Maximality of u^r = x^q - x over F_{q^3} for square q in characteristic 2 and 3."""

import argparse

from dlcovers import rcf


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--qs", default="4,9,16,64")
    args = ap.parse_args()
    for q in map(int, args.qs.split(",")):
        q0 = int(round(q**0.5))
        m = q - q0 + 1
        rows = rcf.kummer_scan(q, 3, m)
        tz = rcf.hermitian_tracezero_analysis(q).ok if q <= 49 else "-"
        maximal = [r.r for r in rows if r.maximal]
        print(f"q={q:3} m={m:3} maximal r: {maximal}  others: {[r.r for r in rows if not r.maximal]}  "
              f"trace-zero structure ok: {tz}")


if __name__ == "__main__":
    main()
