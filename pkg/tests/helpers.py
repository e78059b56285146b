"""Shared comparison utilities for the test suite."""

from __future__ import annotations

import cmath

import numpy as np

from sgsim import HybridState, QuadExpPacket


def _circle_gap(x: float, y: float) -> float:
    """Distance between two angles measured on the unit circle."""
    return abs(cmath.exp(1j * x) - cmath.exp(1j * y))


def packet_distance(p: QuadExpPacket, q: QuadExpPacket) -> float:
    """Worst-case parameter difference; Im(c) compared on the unit circle
    so 2 pi phase windings do not count.
    """
    return max(
        abs(p.a - q.a),
        abs(p.b - q.b),
        abs(p.c.real - q.c.real),
        _circle_gap(p.c.imag, q.c.imag),
    )


def state_distance(s1: HybridState, s2: HybridState) -> float:
    """Worst physical difference between two hybrid states.

    A component's phase may sit in the coefficient or in the packet's
    Im(c) depending on the order operations were applied in; only the
    combination arg(c_m) + Im(c_packet) is meaningful, so compare that.
    """
    assert s1.s == s2.s
    worst = 0.0
    for c1, c2, p1, p2 in zip(s1.coeffs, s2.coeffs, s1.z_packets, s2.z_packets):
        worst = max(worst, abs(abs(c1) - abs(c2)))
        worst = max(worst, abs(p1.a - p2.a), abs(p1.b - p2.b),
                    abs(p1.c.real - p2.c.real))
        if abs(c1) > 1e-15 and abs(c2) > 1e-15:
            ph1 = cmath.phase(c1) + p1.c.imag
            ph2 = cmath.phase(c2) + p2.c.imag
            worst = max(worst, _circle_gap(ph1, ph2))
    for p, q in [(s1.x_packet, s2.x_packet), (s1.y_packet, s2.y_packet)]:
        worst = max(worst, packet_distance(p, q))
    return worst
