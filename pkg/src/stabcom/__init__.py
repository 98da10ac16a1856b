"""Stabilizer simulation with a contextual ontological model.

SSTR (:mod:`stabcom.sstr`) samples measurement outcomes at random; COM
(:mod:`stabcom.com`) stores a full symplectic basis whose signs fix every
outcome in advance. :mod:`stabcom.microscope` realizes a measurement as a
pointer interaction, and :mod:`stabcom.oracle` is the dense reference.
"""
from stabcom.circuit_io import Circuit, ShotRecord, demo, parse, serialize
from stabcom.com import ComState, Expansion
from stabcom.pauli import PauliElement, format_pauli, multiply, parse_pauli, symplectic_product
from stabcom.sstr import SstrState

__all__ = [
    "Circuit",
    "ComState",
    "Expansion",
    "PauliElement",
    "ShotRecord",
    "SstrState",
    "demo",
    "format_pauli",
    "multiply",
    "parse",
    "parse_pauli",
    "serialize",
    "symplectic_product",
]
__version__ = "0.1.0"
