"""A side-2 hexagon split into unit sub-regions: two routes to the same density."""
import numpy as np

from hexdist import RECURSION_MIXTURE, mixture_pdf, pdf_eval
from hexdist.verify import check_recursion

for w, kind in RECURSION_MIXTURE.components:
    print(f"{w:.6f}  {kind.value}")

d = np.linspace(0.0, 4.0, 9)
lhs = mixture_pdf(RECURSION_MIXTURE, d)
rhs = 0.5 * pdf_eval("hex-interior", d / 2)
print(np.abs(lhs - rhs).max())

print(check_recursion())
