"""Polynomial surrogates for the hexagon densities."""
import numpy as np

from hexdist import fit, pdf_eval
from hexdist.polyfit import PUBLISHED_NR, published_coefficient_check

for kind, degree in (("hex-interior", 10), ("hex-adjacent", 20)):
    r = fit(kind, degree)
    print(f"{kind}: degree {degree}, NR {r.norm_of_residuals:.6f} "
          f"on {r.grid['points']} points (published {PUBLISHED_NR[r.kind]})")

# residual profile of the low-order fit
r = fit("hex-interior", 6)
x = np.linspace(0, 2, 9)
print(np.round(r(x) - pdf_eval("hex-interior", x), 4))

# the printed coefficient tables, evaluated as given
print(published_coefficient_check("hex-interior"))
print(published_coefficient_check("hex-adjacent"))
