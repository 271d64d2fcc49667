"""Two departures from the ring model: a plain interval and nodes that switch off."""
from fractions import Fraction

import manetq as mq

# On an interval the end nodes have no wrap-around link.  The exact answer
# is only known as bounds around the ring value.
for n in (5, 20, 100):
    rho = Fraction(1, 10)
    b = mq.p_disc_db_bounds((n, rho), 0)
    est = mq.run(mq.make_config(n, rho, "disconnected", trials=100_000, seed=3))["connectedness"]
    print(f"n={n:3d}  [{float(b.lower):.4f}, {float(b.upper):.4f}]  mc={est.mean:.4f}")

# Each of 40 nodes is on with probability p.  Segmentation has a closed form.
n, rho = 40, Fraction(1, 20)
for p in (Fraction(1, 4), Fraction(1, 2), Fraction(1)):
    closed = mq.q_segmentation_vn((n, rho), p)
    print(f"p={p}  segmentation (formula convention) = {float(closed):.5f}")

# The simulation treats "no node on" as score 0, so its expectation is a
# slightly different binomial mixture.
p = Fraction(1, 2)
mix = mq.exact_metric_vn(mq.MetricKind.SEGMENTATION, (n, rho), p)
mc = mq.run(mq.make_config(n, rho, trials=100_000, seed=5, p_on=p))["segmentation"]
print(f"simulation convention: exact {float(mix):.5f}  mc {mc.mean:.5f} +- {mc.stderr:.5f}")
