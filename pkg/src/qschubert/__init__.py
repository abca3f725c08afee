"""Torus-invariant primes, strata dimensions and catenarity data for
multiparameter quantum Schubert cell algebras, in exact integer arithmetic."""

__version__ = "0.1.0"
