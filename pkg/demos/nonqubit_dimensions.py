"""
Away from qubits, the baker map entangles like a random unitary.

The entangling-power deficit seen at d = 2^N (see qubit_anomaly.py) is a
property of the qubit quantizations, not of the map family: for even
dimensions that are not powers of two, and for asymmetric splits, the
spectral e_p(inf) of the baker lands on the random-state benchmark to
within finite-size fluctuations.

Run:  python3 demos/nonqubit_dimensions.py
"""
import bakerlab as bl

cases = [
    (238, bl.Bipartition(14, 17)),
    (162, bl.Bipartition(9, 18)),
    (100, bl.Bipartition(10, 10)),
    (256, bl.Bipartition(16, 16)),  # the qubit case, for contrast
]

print(f"{'d':>5s} {'split':>8s} {'benchmark':>10s} {'e_p(inf)':>10s} {'gap':>9s}")
for d, part in cases:
    bench = bl.cue_mean_entropy(part)
    ep = bl.asymptotic_entangling_power(bl.eigensystem(bl.baker(d)), part)
    flag = "  <- qubit anomaly" if d == 256 else ""
    print(f"{d:5d} {part.d_a:4d}x{part.d_b:<3d} {bench:10.6f} {float(ep):10.6f} "
          f"{bench - float(ep):9.6f}{flag}")

print()
print("the non-qubit gaps are O(1/d) fluctuation-sized; the qubit gap is ~10x bigger")
