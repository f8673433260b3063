"""Ratio between the stated two-form identities and their cyclic-sum readings."""

import numpy as np

from nearsasaki.identities import get_identity, sample_model_points
from nearsasaki.models import get_model
from nearsasaki import catalog as C
from nearsasaki.structure import PointContext, sample_vectors


def main():
    e = get_model("nsas-s5")
    rng = np.random.default_rng(0)
    p = sample_model_points(e, 1, 0)[0]
    t = C.Terms(PointContext(e.structure, p))
    for rid in ("TF-0", "TF-1", "TF-2"):
        rec = get_identity(rid)
        args = [sample_vectors(rng, 32, e.dim) for _ in range(rec.arity)]
        lhs, rhs = rec.evaluator(t, *args)
        _, rhs_c = dict(rec.variants)["cyclic"](t, *args)
        lhs, rhs, rhs_c = (np.ravel(a) for a in (lhs, rhs, rhs_c))
        ratio = np.linalg.lstsq(rhs[:, None], lhs, rcond=None)[0][0]
        print(f"{rid}: lhs/rhs fit {ratio:+.6f}, cyclic residual {np.abs(lhs - rhs_c).max():.1e}")


if __name__ == "__main__":
    main()
