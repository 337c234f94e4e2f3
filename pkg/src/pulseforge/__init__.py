"""Pulse scheme synthesis for coupled qudit and oscillator networks.

The package turns combinatorial designs (orthogonal arrays, difference
schemes, spreads) into piecewise-constant local control sequences that
decouple, selectively recouple, invert or reshape the internal coupling
of a network, and certifies the results numerically.
"""

__version__ = "0.1.0"
