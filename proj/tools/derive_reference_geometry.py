#!/usr/bin/env python3
"""Check the reference truss used by the shipped scenarios.

The rise, half span and stiffnesses are free choices. They were picked so the
muscle force law F(t) = 0.2 + 1.9 (t - 0.6) N fails to trigger the element at
1.0 mm and succeeds at 1.2 mm. This script prints the equilibria, barriers
and the thickness at which triggering starts, for any candidate geometry.

    python3 tools/derive_reference_geometry.py [H L k k_theta]
"""

import sys

import numpy as np
from scipy.optimize import brentq


def load(v, h, l, k, kt):
    l1 = np.sqrt(2 * h * v + l * l - v * v)
    return -2.0 / l1 * (k * (l - l1) * (h - v) + kt * (np.arctan((h - v) / l1) - np.arctan(h / l)))


def energy(v, h, l, k, kt):
    l1 = np.sqrt(2 * h * v + l * l - v * v)
    da = np.arctan((h - v) / l1) - np.arctan(h / l)
    return 0.5 * k * (l1 - l) ** 2 + 0.5 * kt * da * da


def roots(h, l, k, kt, n=2048):
    v = np.linspace(0.0, 2 * h, n + 1)
    p = load(v, h, l, k, kt)
    out = [0.0]
    for i in range(1, n):
        if p[i] == 0.0:
            out.append(v[i])
        elif p[i] * p[i + 1] < 0:
            out.append(brentq(load, v[i], v[i + 1], args=(h, l, k, kt), xtol=1e-14))
    return out


def triggers(force, first, unstable, h, l, k, kt, grid=256):
    # Muscle force decays linearly from `force` at x = -1 to 0 at x = 0;
    # x = 0 is excluded because both forces vanish there.
    x = -1.0 + np.arange(grid - 1) / (grid - 1)
    v = first + (x + 1.0) * (unstable - first)
    return bool(np.all(force * (-x) > load(v, h, l, k, kt)))


def main():
    h, l, k, kt = (float(a) for a in sys.argv[1:5]) if len(sys.argv) == 5 else (5.0, 20.0, 4.0, 4.0)
    r = roots(h, l, k, kt)
    if len(r) != 3:
        sys.exit(f"not bistable: roots {r}")
    first, unstable, second = r
    print(f"equilibria_mm = {first:.6f} {unstable:.6f} {second:.6f}")
    print(f"forward_stroke_mm = {second - unstable:.6f}")
    print(f"reverse_stroke_mm = {unstable - first:.6f}")
    e = [energy(x, h, l, k, kt) for x in r]
    print(f"forward_snap_release_Nmm = {e[1] - e[2]:.6f}")
    print(f"reverse_snap_release_Nmm = {e[1] - e[0]:.6f}")
    v = np.linspace(first, unstable, 4001)
    print(f"forward_peak_N = {load(v, h, l, k, kt).max():.6f}")
    v = np.linspace(unstable, second, 4001)
    print(f"reverse_peak_N = {load(v, h, l, k, kt).min():.6f}")

    force = lambda t: 0.2 + 1.9 * (t - 0.6)
    ts = np.arange(0.6, 2.0001, 0.001)
    ok = [triggers(force(t), first, unstable, h, l, k, kt) for t in ts]
    threshold = next((t for t, o in zip(ts, ok) if o), None)
    print(f"trigger_threshold_mm = {threshold:.3f}" if threshold else "trigger_threshold_mm = none")
    for t in (1.0, 1.2):
        print(f"can_trigger({t}) = {triggers(force(t), first, unstable, h, l, k, kt)}")


if __name__ == "__main__":
    main()
