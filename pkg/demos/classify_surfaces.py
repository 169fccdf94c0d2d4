"""Walk the reference catalog and print each classification verdict.

The four surface cases all appear: a point on a rational line (alpha 1),
a point whose tangent section isolates it (alpha 2), rational tangent
lines at a node (alpha 2), and the generic conjugate-node case where
rational points accumulate along a nodal cubic (alpha 3/2).
"""

from cubapprox.catalog import CATALOG
from cubapprox.classify import classify
from cubapprox.localfield import Place

PLACES = [Place.real(), Place(5), Place(7)]


def main():
    for entry in CATALOG:
        X, P = entry.hypersurface(), entry.point()
        print(f"\n{entry.name}: X = {{{entry.form_text} = 0}}, P = {P}")
        if entry.note:
            print(f"  ({entry.note})")
        for v in PLACES:
            res = classify(X, P, v)
            alpha = res.predicted_alpha
            print(f"  at {v}: {res.case}, alpha = {alpha} "
                  f"[{res.confidence}]")
            for cert in res.certificates:
                detail = cert.curve or cert.form or cert.point
                print(f"    certificate ({cert.kind}): {detail}")


if __name__ == "__main__":
    main()
