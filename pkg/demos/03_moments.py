"""Mean and variance by quadrature, closed form, Monte Carlo and region covariances."""
from hexdist import moment_report
from hexdist.moments import TABLE_I

for method in ("closed_form", "quadrature", "covariance_oracle", "monte_carlo"):
    r = moment_report("hex-interior", method=method, n=200_000, seed=1)
    print(f"{method:18s} m1={r.m1:.10f}  m2={r.m2:.10f}  var={r.variance:.10f}")

print("published          m1={:.10f}  m2={:.10f}  var={:.10f}".format(
    *TABLE_I["HexInterior"]["closed"]))

# the adjacent-hexagon second moment is exactly 23/6
r = moment_report("hex-adjacent", method="covariance_oracle")
print(r.m2, 23 / 6)
