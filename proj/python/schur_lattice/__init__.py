"""Modified Schur numbers in integer lattices: enumeration, SAT encoding,
search with certificates, and Ramsey-graph witnesses."""

from ._core import (
    InputError,
    IntegrityError,
    IoError,
    NotTabulated,
    ParseError,
    RenderError,
    SizeError,
    brute_force_oracle,
    certificate_colors,
    encode_dimacs,
    enumerate_tuples,
    extract_schur_witness,
    find_schur_number,
    known_schur_numbers,
    probe,
    ramsey_number,
    rank,
    render,
    schur_3k_formula,
    solve_dimacs,
    upper_bound_S,
    vandermonde_det,
    verify_certificate,
    verify_coloring,
)

__all__ = [
    "InputError",
    "IntegrityError",
    "IoError",
    "NotTabulated",
    "ParseError",
    "RenderError",
    "SizeError",
    "brute_force_oracle",
    "certificate_colors",
    "encode_dimacs",
    "enumerate_tuples",
    "extract_schur_witness",
    "find_schur_number",
    "known_schur_numbers",
    "probe",
    "ramsey_number",
    "rank",
    "render",
    "schur_3k_formula",
    "solve_dimacs",
    "upper_bound_S",
    "vandermonde_det",
    "verify_certificate",
    "verify_coloring",
]
