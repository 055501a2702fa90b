"""Evaluate the ten distance densities and their CDFs."""
import numpy as np

from hexdist import DistanceKind, cdf_eval, pdf_eval, support
from hexdist.distributions import breakpoints

# Every kind lives on a bounded interval split into analytic pieces
for kind in DistanceKind:
    lo, hi = support(kind)
    print(f"{kind.value:12s} support [{lo:.4f}, {hi:.4f}]  pieces {len(breakpoints(kind)) - 1}")

# Densities accept scalars or arrays and vanish outside the support
d = np.linspace(0.0, 2.0, 5)
print(pdf_eval("hex-interior", d))
print(cdf_eval("hex-interior", 1.0))

# The side length enters only through a change of variable
from hexdist import scaled_pdf
print(scaled_pdf("hex-interior", 2.0, 2.0), pdf_eval("hex-interior", 1.0) / 2)
