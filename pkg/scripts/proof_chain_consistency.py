"""Check that defects of derived proof-chain rows are substitutions of their parents.

If a row is obtained from a parent by substituting phi X (or phi Z, phi V)
for an argument, its defect (lhs - rhs) must equal the parent defect at the
substituted arguments.  Matching defects show that a failure is inherited
rather than introduced by transcription.
"""

import numpy as np

from nearsasaki import catalog as C
from nearsasaki.identities import get_identity, sample_model_points
from nearsasaki.models import get_model
from nearsasaki.structure import PointContext, sample_vectors

# (child, parent, argument map from child args (X, Y, Z, V) to parent args)
LINKS = (
    ("PC-8", "L4-a", lambda t, X, Y, Z, V: (t.ph(X), Y, Z, V)),
    ("PC-11", "L4-a", lambda t, X, Y, Z, V: (X, Y, t.ph(Z), V)),
    ("PC-12", "L4-a", lambda t, X, Y, Z, V: (X, Y, Z, t.ph(V))),
    ("PC-7", "PC-6", lambda t, X, Y, Z, V: (X, V, Z, Y)),
)


def defect(rid, t, *args):
    lhs, rhs = get_identity(rid).evaluator(t, *args)
    return np.asarray(lhs) - np.asarray(rhs)


def main():
    e = get_model("nsas-s5")
    rng = np.random.default_rng(0)
    for p in sample_model_points(e, 2, 0):
        t = C.Terms(PointContext(e.structure, p))
        args = [sample_vectors(rng, 16, e.dim) for _ in range(4)]
        for child, parent, amap in LINKS:
            dc = defect(child, t, *args)
            dp = defect(parent, t, *amap(t, *args))
            print(f"{child:6s} vs {parent:5s}: |child defect| {np.abs(dc).max():.2e}  "
                  f"difference {np.abs(dc - dp).max():.1e}")


if __name__ == "__main__":
    main()
