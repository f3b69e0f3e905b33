"""Decoherence and spectrum-broadcast observables for a massive oscillator
coupled to a discrete random bath, with a Fock-space brute-force oracle."""

__version__ = "0.1.0"
