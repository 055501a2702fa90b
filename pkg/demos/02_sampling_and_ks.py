"""Monte Carlo distances between uniform points, checked against the exact CDF."""
import numpy as np

from hexdist import canonical_placement, make_rng, sample_distances
from hexdist.verify import ks_check

placement = canonical_placement("hex-adjacent")
print(placement.region_a.name, "->", placement.region_b.name)

rng = make_rng(42)
x = sample_distances(placement, rng, 100_000)
print("min", x.min(), "max", x.max(), "mean", x.mean())

# same seed, same stream
assert np.array_equal(x, sample_distances(placement, make_rng(42), 100_000))

for kind in ("D1", "D8", "hex-interior"):
    r = ks_check(kind, n=20_000, seed=42)
    print(f"{kind:12s} KS {r.ks_distance:.4f}  critical {r.critical_value:.4f}  ok={r.passed}")
