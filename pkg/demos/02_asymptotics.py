"""How fast the exact values approach their large-n limits.

Connectedness is pinned by eta = n*rho - ln n, coverage by nu = n*rho.
"""
import math
from fractions import Fraction

import manetq as mq

eta = 1.0
limit = mq.asym_metric(mq.MetricKind.CONNECTEDNESS, mq.Eta(eta))
print(f"limit exp(-e^-eta) = {limit:.6f}")

for n in (25, 50, 100, 200, 400, 800, 1600):
    rho = Fraction(round((math.log(n) + eta) / n * 10**6), 10**6)
    exact = float(mq.p_conn_pb((n, rho)))
    print(f"n={n:5d}  exact={exact:.6f}  error={abs(exact - limit):.2e}")

# The number of breaks is close to Poisson with mean e^-eta, but the higher
# counts converge slowly: at n = 800 the k = 3 ratio is still ~20% off.
n = 800
rho = Fraction(round((math.log(n) + eta) / n * 10**6), 10**6)
p0 = mq.p_disc_pb((n, rho), 0)
for k in range(1, 5):
    ratio = float(mq.p_disc_pb((n, rho), k) / p0)
    poisson = math.exp(-eta * k) / math.factorial(k)
    print(f"k={k}  P(k)/P(0)={ratio:.5f}  poisson={poisson:.5f}")

# Intensive metrics only need n*rho fixed
for n in (10, 100, 1000):
    q = float(mq.q_coverage_exact((n, Fraction(1, n))))
    print(f"coverage n={n:4d}: {q:.6f}  (limit {1 - math.exp(-2):.6f})")
