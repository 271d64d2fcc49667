"""How many nodes does a road need?

A 1000 m stretch, radios reaching 30 m (WLAN-like) or 10 m (Bluetooth-like),
and a required quality level of 90% or 99%.
"""
import manetq as mq
from manetq.cli import design_table

rows = design_table("1000", ("30", "10"), ("0.9", "0.99"))
print(f"{'metric':14s} {'target':>8s} {'r=30':>6s} {'r=10':>6s}")
for a, b in zip(rows[::2], rows[1::2]):
    sign = ">=" if a["direction"] == "at_least" else "<="
    print(f"{a['metric']:14s} {sign}{a['threshold']:.2f} {a['n_min']:6d} {b['n_min']:6d}")

# A longer road needs more than proportionally more nodes for connectedness,
# since the ln n term grows with n.
phys = mq.PhysicalParams(30, 2463)
res = mq.min_nodes(mq.QualityTarget(mq.MetricKind.CONNECTEDNESS, 0.9), phys)
print("2463 m road, r=30:", res.n_min, "nodes, eta =", round(res.auxiliary, 4))

# Vulnerability has a ceiling; asking for more is infeasible.
try:
    mq.min_nodes(mq.QualityTarget(mq.MetricKind.VULNERABILITY, 0.5), phys)
except mq.InfeasibleTargetError as exc:
    print("infeasible:", exc)
