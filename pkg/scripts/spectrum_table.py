"""Spectrum of h^2 and foliation residuals for every registered model."""

from nearsasaki.cli import spectrum_summary
from nearsasaki.models import model_names


def main():
    for name in model_names():
        s = spectrum_summary(name, points=30)
        shape = ", ".join(f"{c['eigenvalue']:+.6f} x{c['multiplicity']}" for c in s["clusters"])
        geo = max((v.get("geodesic", 0.0) for v in s["totally_geodesic"].values()), default=0.0)
        print(f"{name:14s} {shape:32s} const {s['constancy_deviation']:.1e}  geodesic {geo:.1e}  {s['note']}")


if __name__ == "__main__":
    main()
