"""Regenerate the bundled algebra and module files (except the Hecke algebra, see build_hecke_a1.py).

    python scripts/make_data.py [--out src/laurent_duality/data]
"""
import argparse
from fractions import Fraction
from pathlib import Path

from laurent_duality.finmod import FinLengthModule
from laurent_duality.formats import algebra_to_doc, module_to_doc, write_json
from laurent_duality.scalars import Field
from laurent_duality.zalg import check_idempotents, group_algebra, matrix_algebra, simple_modules, upper_triangular

Q = Field.rational()


def z2_group_algebra():
    a = group_algebra(Q, [2], name="group_z2")
    half = Fraction(1, 2)
    a.idempotents = [[Q(half), Q(half)], [Q(half), Q(-half)]]
    assert not check_idempotents(a)
    return a, simple_modules(a)


def ut2():
    a = upper_triangular(Q)
    a.name = "ut2"
    return a, simple_modules(a)


def crossed_docs():
    z2 = {"kind": "crossed", "name": "z2_cross", "field": "Q", "rank": 1, "generators": [["-1"]],
          "modules": [{"name": "V1", "induced_at": ["1"]}, {"name": "V2", "induced_at": ["2"]},
                      {"name": "V3", "induced_at": ["-1/3"]}]}
    z3 = {"kind": "crossed", "name": "z3_cross", "field": "cyclotomic:3", "rank": 1, "generators": [["z"]],
          "modules": [{"name": "V1", "induced_at": ["1"]}, {"name": "V2", "induced_at": ["2"]},
                      {"name": "V3", "induced_at": ["z + 2"]}]}
    # Klein four group of sign characters on Z^2 with cocycle (-1)^(a2*b1)
    elems = [["1", "1"], ["-1", "1"], ["1", "-1"], ["-1", "-1"]]
    bits = [(0, 0), (1, 0), (0, 1), (1, 1)]
    coc = [[str((-1) ** (a[1] * b[0])) for b in bits] for a in bits]
    klein = {"kind": "crossed", "name": "klein_twisted", "field": "Q", "rank": 2, "elements": elems, "cocycle": coc,
             "modules": [{"name": "V1", "induced_at": ["2", "3"]}]}
    return {"z2_cross": z2, "z3_cross": z3, "klein_twisted": klein}


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--out", type=Path, default=Path("src/laurent_duality/data"))
    args = ap.parse_args()
    out = args.out
    for name, (a, mods) in {"group_z2": z2_group_algebra(), "ut2": ut2()}.items():
        write_json(algebra_to_doc(a, mods), out / f"{name}.alg")
    m2 = matrix_algebra(Q, 2)
    m2.name = "m2"
    write_json(algebra_to_doc(m2), out / "m2.alg")
    for name, doc in crossed_docs().items():
        write_json(doc, out / f"{name}.alg")
    write_json(module_to_doc(FinLengthModule.character(Q, [1]), "k_A"), out / "k_a_d1.mod")
    write_json(module_to_doc(FinLengthModule.character(Q, [1, 1]), "k_A"), out / "k_a_d2.mod")
    print("wrote", ", ".join(sorted(p.name for p in out.iterdir())))


if __name__ == "__main__":
    main()
