"""Evaluate the closed-form cost and throughput models side by side.

Cost unit prices are illustrative, not measurements.  The overlapped row
carries both the continuous node-processor form and the PE count actually
instantiated by the stage duplication rule.
"""

from polarsc import CostParams, table_report

costs = CostParams(c_np=2, c_r=1, c_mux=0.25, c_us=0.5, t_np=1e-9)

for n, p in ((8, 3), (1024, 7)):
    report = table_report(n, p, costs)
    print(f"n = {n}, overlap parallelism P = {p}, t_np = {costs.t_np:g} s")
    print(report.to_text())
    overlap = next(r for r in report.rows if r["kind"] == "overlap")
    print(f"  overlap node-processor approximation: "
          f"{overlap['node_processors_approx']:.2f}")
    print(f"  overlap PEs actually instantiated:     "
          f"{overlap['structural_pes']} (= {2 * overlap['structural_pes']} "
          f"node processors)\n")

print("throughput scaling: the line machine holds 1/(2 t_np) as n grows;")
print("overlapping multiplies it by P at the price of P register sets")
