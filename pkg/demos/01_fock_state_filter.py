#!/usr/bin/env python3
"""A Fock state filter in action.

A coherent state is a Poisson-weighted superposition of photon numbers. The
filter combines it with a single-photon ancilla on a beam splitter of
transmissivity k/(k+1) and heralds on one ancilla click; destructive
interference then removes the k-photon component exactly while rescaling the
rest by cos^(n+1)(theta) * (1 - n tan^2(theta)).

This script filters |1> and then |2> out of a coherent state and prints the
amplitude table after each stage.
"""

import math

from noongen import amplitude, apply_fsf, make_coherent_truncated


def print_amplitudes(label, state, n_max=6):
    print(f"\n{label}")
    print(f"  {'n':>2} {'amplitude':>24} {'|amp|^2':>12}")
    for n in range(n_max + 1):
        amp = amplitude(state, (n,))
        print(f"  {n:>2} {amp:>24.6g} {abs(amp)**2:>12.6g}")


def main():
    alpha = 1.0
    state = make_coherent_truncated(alpha, cutoff=6)
    print_amplitudes(f"coherent state, alpha = {alpha}", state)

    outcome = apply_fsf(state, mode=0, k_filter=1)
    print_amplitudes(
        f"after the k=1 filter (herald probability {outcome.herald_probability:.4f})",
        outcome.state,
    )
    print("  note the vanished single-photon row")

    outcome = apply_fsf(outcome.state, mode=0, k_filter=2)
    print_amplitudes("after the k=2 filter as well", outcome.state)
    print("  only n = 0 and n >= 3 remain: exactly what the first pipeline")
    print("  needs before postselecting a total photon number")

    theta = math.atan(1 / math.sqrt(1))
    print(f"\nfilter angle for k=1: theta = {theta:.6f} rad "
          f"(transmissivity {math.cos(theta)**2:.3f})")


if __name__ == "__main__":
    main()
