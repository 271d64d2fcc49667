"""Exact connectivity of a line network, and how it compares to simulation.

Run with ``python3 demos/01_exact_values.py``.
"""
from fractions import Fraction

import numpy as np

import manetq as mq

# Ten nodes on a ring of length 1 with normalized radio range 1/5.
params = mq.SystemParams(10, Fraction(1, 5))

# The number of broken links follows an exact rational distribution.
dist = [mq.p_disc_pb(params, k) for k in range(params.n + 1)]
for k, p in enumerate(dist):
    if p:
        print(f"P(k={k}) = {float(p):.6f}")
print("sums to", sum(dist))

# Every quality parameter is a rational number too
for kind in (mq.MetricKind.CONNECTEDNESS, mq.MetricKind.COVERAGE,
             mq.MetricKind.SEGMENTATION, mq.MetricKind.VULNERABILITY,
             mq.MetricKind.REACHABILITY):
    q = mq.exact_metric(kind, params)
    print(f"{kind.value:14s} {float(q):.6f}   ({q.numerator.bit_length()}-bit numerator)")

# Now the same thing by brute force.  The seed fixes the answer regardless
# of how many threads the simulation uses.
est = mq.run(mq.make_config(10, "1/5", trials=200_000, seed=1))
for name in ("connectedness", "coverage", "segmentation", "vulnerability", "reachability"):
    e = est[name]
    exact = float(mq.exact_metric(mq.MetricKind(name), params))
    z = (e.mean - exact) / e.stderr if e.stderr else 0.0
    print(f"{name:14s} mc={e.mean:.5f} +- {e.stderr:.5f}  z={z:+.2f}")

# Connectedness as a function of range: it is exactly zero until rho > 1/n.
rhos = [Fraction(i, 100) for i in range(5, 41, 5)]
conn = np.array([float(mq.p_conn_pb((10, r))) for r in rhos])
print(np.column_stack([[float(r) for r in rhos], conn]))
