"""Look at Hom_Z(H, Z) for the affine Hecke algebra of SL2 over its center Z = k[y1].

Prints the dual-basis action matrices, the double-duality check, and the
outcome of bounded searches for a form phi with phi(xy) of unit Gram
determinant: nonsymmetric (left-module isomorphism) and symmetric
(bimodule isomorphism).  Boxes and support sizes can be raised to widen the
symmetric search; a negative outcome stays "undetermined".

    python scripts/iwahori_probe.py --box 3 --support 4
"""
import argparse
import time

from laurent_duality.formats import bundled, load_algebra
from laurent_duality.zalg import commutant_dimension, fsg_probe, hom_center


def show(C, labels, mats, title):
    print(title)
    for lab, m in zip(labels, mats):
        rows = ["[" + ", ".join(C.format(x) for x in row) + "]" for row in m]
        print(f"  {lab:>7}: " + "\n           ".join(rows))


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--file", default=str(bundled("hecke_a1.alg")))
    ap.add_argument("--box", type=int, default=2)
    ap.add_argument("--support", type=int, default=3)
    ap.add_argument("--limit", type=int, default=200000)
    args = ap.parse_args()
    a = load_algebra(args.file).algebra
    C = a.center
    print(f"{a.name}: rank {a.rank} over {C.describe()}, parameters {a.meta}")
    for p in (0, 1, 3, 5):
        print(f"  center of the fibre at y1 = {p}: dimension {commutant_dimension(a.specialize([p]))}")
    h = hom_center(a)
    show(C, a.labels, h.left, "left action on the dual basis")
    show(C, a.labels, h.right, "right action on the dual basis")
    print("double dual matches:", h.double_dual_ok)
    for sym in (False, True):
        t = time.perf_counter()
        v = fsg_probe(a, box=args.box, max_support=args.support, limit=args.limit, symmetric=sym)
        kind = "bimodule (symmetric form)" if sym else "left module"
        print(f"{kind}: {v.verdict}  phi={v.functional}  det={v.determinant}  "
              f"searched={v.searched}  {v.note}  ({time.perf_counter() - t:.2f}s)")


if __name__ == "__main__":
    main()
