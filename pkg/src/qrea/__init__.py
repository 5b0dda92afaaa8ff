"""Exact kernel for braid-operator algebra, quantum matrices, the reflection
equation algebra, and shape matrices of Hermitian forms."""

__version__ = "0.1.0"
