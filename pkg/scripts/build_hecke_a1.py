"""Write the structure constants of the affine Hecke algebra of SL2 over its center.

Bernstein presentation with one parameter q:
    T^2 = (q - 1) T + q
    T g = g^s T + (q - 1) (g - g^s) / (1 - θ^-1)     for g in k[θ^±], g^s(θ) = g(θ^-1)
The center is k[y1] with y1 = θ + θ^-1; the algebra is free over it on 1, θ, T, θT.

    python scripts/build_hecke_a1.py --q 4 --out src/laurent_duality/data/hecke_a1.alg
"""
import argparse
import json
from pathlib import Path

import sympy as sp

th, y = sp.symbols("theta y1")


def bar(g):
    return sp.expand(g.subs(th, 1 / th))


def t_times(g, q):
    """T g as (coefficient of 1, coefficient of T), both Laurent in θ."""
    quotient = sp.cancel((g - bar(g)) / (1 - 1 / th))
    return sp.expand((q - 1) * quotient), bar(g)


def mul(x, z, q):
    """(f0 + f1 T)(g0 + g1 T) with f, g Laurent polynomials in θ."""
    f0, f1 = x
    g0, g1 = z
    c0 = f0 * g0
    c1 = f0 * g1
    a, b = t_times(g0, q)          # T g0 = a + b T
    c0 += f1 * a
    c1 += f1 * b
    a, b = t_times(g1, q)          # T g1 T = a T + b T^2
    c1 += f1 * a
    c0 += f1 * b * q
    c1 += f1 * b * (q - 1)
    return sp.expand(c0), sp.expand(c1)


def over_center(f):
    """Write a Laurent polynomial f(θ) as a(y1) + b(y1) θ using θ^2 = y1 θ - 1."""
    f = sp.expand(f)
    a, b = sp.Integer(0), sp.Integer(0)
    for term in sp.Add.make_args(f):
        c, k = term.as_coeff_exponent(th)
        # θ^k = A_k + B_k θ
        A, B = sp.Integer(1), sp.Integer(0)
        step = 1 if k >= 0 else -1
        for _ in range(abs(int(k))):
            if step > 0:
                A, B = -B, A + y * B
            else:
                A, B = A * y + B, -A
        a += c * A
        b += c * B
    return sp.expand(a), sp.expand(b)


BASIS = [("1", (1, 0)), ("theta", (th, 0)), ("T", (0, 1)), ("thetaT", (0, th))]


def structure_constants(q):
    triples = []
    for i, (_, x) in enumerate(BASIS):
        for j, (_, z) in enumerate(BASIS):
            c0, c1 = mul(tuple(sp.sympify(v) for v in x), tuple(sp.sympify(v) for v in z), q)
            a0, b0 = over_center(c0)
            a1, b1 = over_center(c1)
            for m, coeff in enumerate((a0, b0, a1, b1)):
                if coeff != 0:
                    triples.append([i, j, m, str(coeff).replace("**", "^")])
    return triples


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--q", type=int, default=4)
    ap.add_argument("--out", type=Path, default=Path("src/laurent_duality/data/hecke_a1.alg"))
    args = ap.parse_args()
    doc = {
        "kind": "zalg",
        "name": "hecke_a1",
        "field": "Q",
        "center": {"type": "polynomial", "rank": 1, "names": ["y1"]},
        "basis": [b for b, _ in BASIS],
        "unit": 0,
        "parameters": {"q": str(args.q), "y1": "theta + theta^-1"},
        "products": structure_constants(sp.Integer(args.q)),
    }
    args.out.write_text(json.dumps(doc, indent=1) + "\n")
    print(f"wrote {len(doc['products'])} structure constants to {args.out}")


if __name__ == "__main__":
    main()
