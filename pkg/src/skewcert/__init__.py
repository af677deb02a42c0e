"""Exact noncommutative algebra kernel and certification harness for free
symmetric subalgebras of division rings built from enveloping algebras."""

__version__ = "0.1.0"
