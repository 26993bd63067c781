"""Exact counting of ordered sums of exceptional units in quaternion rings H(R)."""

from .count import (PhiResult, binomial_parity_sums, phi2_mat_formula, phi2_odd_quaternion,
                    phi2_scan_oracle, phi_k_convolution_oracle, phi_k_even_quaternion,
                    phi_k_field_formula, phi_k_reduce)
from .errors import ExUnitsError, ParseError, SizeLimitError, UnsupportedError
from .gf import FieldElem, FieldSpec, make_field
from .mat2 import Mat2, ResidueClass, classify, psi, psi_inv
from .parse import parse_element, parse_ring_spec
from .quat import Quaternion, q_from
from .ring import LocalRingSpec, RingElem, RingSpec, make_galois_ring, make_ring, make_zn

__version__ = "0.1.0"

__all__ = [
    "FieldElem", "FieldSpec", "LocalRingSpec", "Mat2", "PhiResult", "Quaternion", "ResidueClass",
    "RingElem", "RingSpec", "ExUnitsError", "ParseError", "SizeLimitError", "UnsupportedError",
    "binomial_parity_sums", "classify", "make_field", "make_galois_ring", "make_ring", "make_zn",
    "parse_element", "parse_ring_spec", "phi2_mat_formula", "phi2_odd_quaternion",
    "phi2_scan_oracle", "phi_k_convolution_oracle", "phi_k_even_quaternion",
    "phi_k_field_formula", "phi_k_reduce", "psi", "psi_inv", "q_from",
]
