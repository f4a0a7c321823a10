"""Exact-arithmetic laboratory for spectral invariants of operator products.

Everything is computed over arbitrary-precision rationals; there is no
floating point and no tolerance anywhere. See ratspec.ratmat for the linear
algebra core, ratspec.invariants for the spectral invariant sequences,
ratspec.intertwine for the verification machinery around the condition
A(BA)^2 = ABACA = ACABA = (AC)^2A, ratspec.drazin for Drazin inverses and
the transfer construction, ratspec.genlab for instance generators and
ratspec.cli for the command-line interface.
"""

from ratspec.ratmat import Mat, Poly, Rat, Subspace, rat

__all__ = ["Mat", "Poly", "Rat", "Subspace", "rat"]
__version__ = "0.1.0"
