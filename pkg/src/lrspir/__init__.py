"""Linearized Reed-Solomon codes, LRS-based MR-LRC storage and private retrieval over it."""

from .codes import LrsCode, encode, erasure_decode, is_mds, lrs_generator
from .errors import LrsPirError
from .galois import Basis, ExtField, PrimeField, find_primitive, frobenius_pow, make_extension, make_prime_field
from .mrlrc import MrLrc, audit_mr, build_construction1, encode_global, make_local_code, repair
from .pir import PirParams, PirScheme, audit_privacy_exact, derive_params, rate, server_respond
from .products import code_product_span, cw_product, inner_product, mat_rep, mat_rep_inv, star
from .skew import SkewPoly, norm_i, op_eval, random_skew, skew_mul, total_eval
from .storesim import Database, Transcript, adversary_view, init_database, run_retrieval

__version__ = "0.1.0"
