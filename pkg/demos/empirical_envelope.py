"""Estimate the approximation exponent empirically and compare cases.

Enumerate all rational points of bounded height on two surfaces and
print the envelope of the empirical exponent delta = log H / (-log dist)
over shrinking radii around P.  On the entry with a rational line
through P the envelope heads to 1; on the conjugate-node entry it stays
near 3/2.
"""

from cubapprox.catalog import get_entry
from cubapprox.search import empirical_alpha, enumerate_points

HEIGHT_BOUND = 60


def show(entry_name):
    entry = get_entry(entry_name)
    X, P, v = entry.hypersurface(), entry.point(), entry.place()
    res = entry.expected[entry.run_place]
    print(f"\n{entry.name} at {v}: expected case {res[0]}, "
          f"alpha = {res[1]}")
    stream = enumerate_points(X, HEIGHT_BOUND)
    print(f"  {len(stream)} points of height <= {HEIGHT_BOUND}")
    est = empirical_alpha(stream, P, v)
    print("  radius        delta_min  witnesses  best point")
    for eps, alpha_hat, nwit, best in est.rows:
        print(f"  {float(eps):<13g} {alpha_hat:<10.4f} {nwit:<10d} {best}")
    print(f"  extrapolated empirical alpha: {est.extrapolated:.4f}")


if __name__ == "__main__":
    show("fermat-on-line")
    show("real-node")
