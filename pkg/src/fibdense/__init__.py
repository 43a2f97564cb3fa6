"""Exact-arithmetic toolkit for elliptic fibrations, multisections, and
rational-point density reports, including the quartic-cone construction for
K3 covers with Weierstrass models over Q(t)."""

__version__ = "0.1.0"
