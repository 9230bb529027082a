from theta_envelopes.curves.elliptic import (
    INFINITY,
    CubicCurve,
    CurvePoint,
    add,
    discriminant,
    j_invariant,
    negate,
    on_curve,
    point_order,
    scalar_mul,
    two_torsion,
)
