"""Build explicit curves of best approximation in two regimes.

First the residual conic: the plane through a point P of the Fermat
surface and a line on it meets the surface in the line plus a conic
through P, which certifies alpha(P) <= 2.  Then the projection cubic:
for a surface whose tangent cone at P splits only over the completion,
the inverse of projection from P maps a conjugate-pair line to a nodal
cubic realizing alpha = 3/2.
"""

from cubapprox.catalog import get_entry
from cubapprox.constructions import projection_curve, residual_conic
from cubapprox.curves import ParamCurve, branch_data, curve_alpha
from cubapprox.forms import parse_form
from cubapprox.hypersurface import CubicHypersurface, tangent_section
from cubapprox.localfield import Place
from cubapprox.points import ProjPoint


def residual_conic_demo():
    X = CubicHypersurface(parse_form("x0^3 + x1^3 + x2^3 + x3^3"))
    P = ProjPoint.parse("3:4:5:-6")
    ell = ParamCurve.parse("s; -s; t; -t")
    print(f"Fermat surface, P = {P}, line ell = ({ell})")
    res = residual_conic(X, P, ell)
    print(f"  residual conic: {res.conic}")
    print(f"  conic form in plane coordinates: {res.conic_form}")
    print(f"  alpha of P on the conic (real place): "
          f"{curve_alpha(res.conic, P, Place.real())}")


def projection_cubic_demo():
    entry = get_entry("real-node")
    X, P = entry.hypersurface(), entry.point()
    v = Place.real()
    print(f"\n{entry.name}: X = {{{entry.form_text} = 0}}, P = {P}")
    S = tangent_section(X, P)
    print(f"  tangent section pieces: f3 = {S.f3}, g = {S.g}")
    res = projection_curve(S, v)
    print(f"  projection cubic T' = ({res.curve})")
    print(f"  node quadric: {res.node_factor}")
    for b in branch_data(res.curve, P, v):
        print(f"  branch: residue degree {b.kappa_degree}, "
              f"in completion: {b.in_kv}, multiplicity {b.m_q}")
    print(f"  alpha of P on T': {curve_alpha(res.curve, P, v)}")


if __name__ == "__main__":
    residual_conic_demo()
    projection_cubic_demo()
