"""
The baker map on qubits entangles slightly less than a random unitary.

Computes the time-asymptotic entangling power e_p(inf) from the spectral
decomposition (no trajectory simulation) for the baker B and the
approximate map D across qubit dimensions, and compares against the
random-state benchmark (dA-1)(dB-1)/(dA dB + 1).  The deficit survives
at every size and is essentially unchanged when the reflection symmetry
is removed (D), so the symmetry is not what causes it.

Run:  python3 demos/qubit_anomaly.py
"""
import numpy as np

import bakerlab as bl

print(f"{'d':>5s} {'split':>7s} {'benchmark':>10s} {'baker':>10s} {'D map':>10s} {'B deficit':>10s}")
for n_qubits in (4, 6, 8):
    d = 2 ** n_qubits
    da = 2 ** (n_qubits // 2)
    part = bl.Bipartition(da, d // da)
    bench = bl.cue_mean_entropy(part)

    row = {}
    for name, u in (("baker", bl.baker(d)), ("dmap", bl.d_map(d, +1))):
        eig = bl.eigensystem(u)
        row[name] = bl.asymptotic_entangling_power(eig, part)

    print(f"{d:5d} {part.d_a:3d}x{part.d_b:<3d} {bench:10.6f} "
          f"{float(row['baker']):10.6f} {float(row['dmap']):10.6f} "
          f"{bench - float(row['baker']):10.6f}")

print()
print("Notes:")
print(" - both maps sit below the benchmark at every size;")
print(" - D (no reflection symmetry) is barely above the baker, so the")
print("   spatial symmetry accounts for almost none of the gap;")
print(" - the relative deficit shrinks slowly with d: the anomaly is a")
print("   finite-size property of these quantizations, not of the split.")

# the d=256 values with Monte-Carlo error bars for scale
part = bl.Bipartition(16, 16)
mc_mean, mc_se = bl.asymptotic_power_mc(
    bl.baker(256), part, 60, 513, 1024, bl.RngStream(11, 0)
)
spectral = float(bl.asymptotic_entangling_power(bl.eigensystem(bl.baker(256)), part))
print()
print(f"d=256 cross-check: spectral {spectral:.6f}, "
      f"simulated {mc_mean:.6f} +- {mc_se:.6f} "
      f"({abs(spectral - mc_mean) / mc_se:.1f} sigma apart)")
