"""Kazhdan-Lusztig polynomials, Bruhat order and singular loci of Schubert varieties in S_n."""

__version__ = "0.1.0"
