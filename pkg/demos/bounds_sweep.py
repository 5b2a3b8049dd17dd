"""Sweep the covert-communication bounds over block length.

Reproduces the headline square-root-law picture: the number of reliable
covert qubits grows like sqrt(n) for both the achievability (hashing) and
converse (amplifier-capacity) bounds, with the classically-assisted curve
sitting between them.  Run:

    python3 demos/bounds_sweep.py

or get the same rows from the CLI:

    covert-bosonic bounds --eta 0.9 --nbar-b 0.12 --delta 0.05 \
        --n 1e4:1e14:11 --modes-per-sec 1e8
"""

import math

import numpy as np

from covert_bosonic import (
    ChannelParams,
    bounds_curve,
    c_cov,
    upper_bound_srl_coefficient,
)

params = ChannelParams(eta=0.9, nbar_b=0.12)
delta = 0.05

print(f"channel: transmittance {params.eta}, background {params.nbar_b} photons")
print(f"covertness budget delta = {delta}, c_cov = {c_cov(params):.4f}")
print()

header = f"{'n (rounds)':>12} {'seconds':>10} {'lower':>12} {'assisted':>12} {'upper':>12}"
print(header)
print("-" * len(header))
for pt in bounds_curve(params, delta, np.geomspace(1e4, 1e14, 11),
                       modes_per_second=1e8):
    print(f"{pt.n:12.3e} {pt.seconds:10.2e} {pt.lower_qubits:12.4e} "
          f"{pt.assisted_lower_qubits:12.4e} {pt.upper_qubits:12.4e}")

print()
srl = upper_bound_srl_coefficient(params, delta)
print("square-root-law coefficients (qubits per sqrt(round)):")
pt = bounds_curve(params, delta, [1e14])[0]
print(f"  lower bound: {pt.lower_qubits / math.sqrt(pt.n):.6f}")
print(f"  upper bound: {pt.upper_qubits / math.sqrt(pt.n):.6f}"
      f"  (analytic large-n limit {srl:.6f})")
