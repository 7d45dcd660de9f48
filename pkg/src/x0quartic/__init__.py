"""Deciding which modular curves X0(N) admit degree-4 maps to positive-rank elliptic curves.

The pipeline: exact degree-pairing Gram matrices on the degeneracy-map basis,
Fincke-Pohst enumeration of small form values, point-count exclusion bounds,
and an evidence-chain classifier for the quartic-point question.
"""

from .numthy import divisors, moebius, psi, omega, genus_x0, level_profile
from .curvedb import CurveRecord, CurveDatabase, load_database, positive_rank_factors, strong_weil
from .traces import count_points, ap
from .hecke import EigenvalueContext, an, moebius_coefficient
from .pairing import GramMatrix, hypothesis_check, gram_entry, gram_matrix, form_string
from .qflattice import PDForm, EnumerationResult, NotPositiveDefinite, ldl_decompose, enumerate_up_to, represents, minimum
from .oggfilter import OggCertificate, ogg_lower_bound, d_elliptic_excluded
from .auxdata import AuxFacts, load_aux
from .classifier import TetraellipticVerdict, Classification, tetraelliptic_status, classify, scan

__version__ = "0.1.0"

__all__ = [
    "divisors", "moebius", "psi", "omega", "genus_x0", "level_profile",
    "CurveRecord", "CurveDatabase", "load_database", "positive_rank_factors", "strong_weil",
    "count_points", "ap",
    "EigenvalueContext", "an", "moebius_coefficient",
    "GramMatrix", "hypothesis_check", "gram_entry", "gram_matrix", "form_string",
    "PDForm", "EnumerationResult", "NotPositiveDefinite",
    "ldl_decompose", "enumerate_up_to", "represents", "minimum",
    "OggCertificate", "ogg_lower_bound", "d_elliptic_excluded",
    "AuxFacts", "load_aux",
    "TetraellipticVerdict", "Classification", "tetraelliptic_status", "classify", "scan",
]
