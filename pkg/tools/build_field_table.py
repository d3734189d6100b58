"""Regenerate src/rm3/data/fields.jsonl from PARI/GP (via cypari).

Developer tool only; the package itself never imports PARI.  Every record
written here is re-verified by ``rm3.ideals.load_field_table``.

    pip install cypari
    python tools/build_field_table.py --max-disc 4000
"""
import argparse
import json
import math
from fractions import Fraction

from cypari import pari

# Defining polynomials used in the literature for a few fields; the rest
# use polredabs.
PREFERRED = ["x^3+x^2-2*x-1", "x^3-3*x+1", "x^3-x^2-10*x+8", "x^3-21*x-35"]

PREFERRED_STR = {str(pari(p)) for p in PREFERRED}

# Hand-fixed class representatives (nontrivial classes first, principal
# class appended automatically).
FIXED_CLASSES = {
    "x^3 - 21*x - 35": [
        [[7, 0, 0], [0, 7, 0], [-14, 0, 1]],
        [[7, 0, 0], [0, 1, 0], [-14, -3, 1]],
    ],
}


def gp(expr):
    return pari(expr)


def as_fraction(q):
    return Fraction(str(q))


def integer_rows(rows):
    den = 1
    for row in rows:
        for c in row:
            den = den * c.denominator // math.gcd(den, c.denominator)
    return [[int(c * den) for c in row] for row in rows], den


def coords(pol_elt):
    """Power-basis coordinates of a polynomial in x (degree <= 2)."""
    return [as_fraction(pari.polcoef(pol_elt, k, "x")) for k in range(3)]


def field_polys(max_disc):
    out = {}
    for family in ("C3", "S3"):
        for f in gp(f'nflist("{family}",[1,{max_disc - 1}])'):
            if int(pari.polsturm(f)) != 3:
                continue
            red = pari.polredabs(f)
            for p in PREFERRED:
                if pari.polredabs(gp(p)) == red:
                    red = gp(p)
            out.setdefault(int(pari.nfdisc(f)), []).append(red)
    return out


def record(f, d):
    pari.setrand(1)
    nf = pari.nfinit(f)
    bnf = pari.bnfinit(nf, 1)
    gp_bnf = f"bnfinit({f},1)"
    assert int(pari.nfdisc(f)) == d
    zk = gp(f"nfinit({f}).zk")
    order, oden = integer_rows([coords(b) for b in zk])
    h = int(gp(f"{gp_bnf}.no"))

    if str(f) in FIXED_CLASSES:
        reps = []
        for rows in FIXED_CLASSES[str(f)]:
            gens = ",".join(f"{r[0]}+{r[1]}*x+{r[2]}*x^2" for r in rows)
            reps.append(gp(f"my(nf=nfinit({f}));idealhnf(nf,matconcat(apply(g->nfalgtobasis(nf,g),[{gens}])))"))
    else:
        cyc = [int(c) for c in gp(f"{gp_bnf}.cyc")]
        reps = []
        if h > 1:
            assert len(cyc) == 1, "non-cyclic class group not handled"
            for k in range(1, h):
                reps.append(gp(f"my(b={gp_bnf});idealred(b,idealpow(b,b.gen[1],{k}))"))
    reps.append(gp(f"idealhnf(nfinit({f}),1)"))

    classes = []
    seen = set()
    for ideal in reps:
        cls = str(pari.bnfisprincipal(bnf, ideal, 0))
        assert cls not in seen, "duplicate class"
        seen.add(cls)
        rows = []
        for j in range(3):
            col = gp(f"my(nf=nfinit({f}));lift(nfbasistoalg(nf,{ideal}[,{j + 1}]))")
            rows.append(coords(col))
        basis, den = integer_rows(rows)
        classes.append({"basis": basis, "den": den})
    assert len(classes) == h

    units = []
    for u in gp(f"my(b={gp_bnf});apply(e->lift(nfbasistoalg(b,e)),b.fu)"):
        units.append([str(c) for c in coords(u)])
    reg = float(gp(f"{gp_bnf}.reg"))
    v = pari.version()
    return {
        "disc": d,
        "poly": [int(pari.polcoef(f, k)) for k in range(4)],
        "h": h,
        "order": {"basis": order, "den": oden},
        "classes": classes,
        "units": units,
        "source": f"PARI/GP {v[0]}.{v[1]}.{v[2]} nflist+bnfinit; regulator {reg:.6f}",
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-disc", type=int, default=4000)
    ap.add_argument("--out", default="src/rm3/data/fields.jsonl")
    args = ap.parse_args()
    pari.allocatemem(10**9)
    polys = field_polys(args.max_disc)
    lines = []
    for d in sorted(polys):
        fs = sorted(polys[d], key=lambda f: (str(f) not in PREFERRED_STR,
                                            [abs(int(pari.polcoef(f, k))) for k in (2, 1, 0)]))
        for f in fs:
            lines.append(json.dumps(record(f, d), separators=(",", ":")))
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
    print(f"wrote {len(lines)} records to {args.out}")


if __name__ == "__main__":
    main()
