"""Print N_e, the Hasse-Weil bound and the verdict for the small curves of each family."""

import argparse

from dlcovers import count as C
from dlcovers import curves

CASES = [
    ("hermitian", 4), ("gk", 4), ("hermitian", 9), ("gk", 9),
    ("suzuki", 8), ("suzuki-tilde", 8), ("suzuki", 32), ("suzuki-tilde", 32),
    ("ree", 27),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--workers", type=int, default=None)
    ap.add_argument("--max-ext", type=int, default=None, help="cap the extension degree")
    args = ap.parse_args()
    print(f"{'curve':28} {'q':>4} {'e':>2} {'genus':>7} {'N_e':>14} {'bound':>14}  verdict")
    for fam, q in CASES:
        spec = curves.make_spec(fam, q)
        for e in range(1, spec.d + 1):
            if args.max_ext and e > args.max_ext:
                break
            if q**e > C.GUARD_RAIL:
                continue
            rep = C.count_points(spec, e, workers=args.workers)
            verdict = "-" if rep.maximal is None else ("maximal" if rep.maximal else f"short by {rep.deficiency}")
            bound = rep.hasse_weil_bound if rep.hasse_weil_bound is not None else "-"
            print(f"{spec.label:28} {q:>4} {e:>2} {rep.genus:>7} {rep.total:>14} {bound!s:>14}  {verdict}")


if __name__ == "__main__":
    main()
