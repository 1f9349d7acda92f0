"""Quotient graphs of Bruhat-Tits trees by quaternionic unit groups.

Computes, for the unit group of a maximal F_q[T]-order in a division
quaternion algebra ramified at a finite set of primes and split at the
place at infinity, the quotient of the Bruhat-Tits tree of
PGL_2(F_q((1/T))) together with vertex stabilizer labels and an edge
pairing, and derives from it a presentation of the group and a solution
to its word problem.
"""

__version__ = "0.1.0"
