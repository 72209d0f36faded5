"""Exact graded commutative algebra: Groebner bases, resolutions, Tor/Ext and
module invariants over standard graded quotient rings, plus a scenario verifier."""

from .errors import (BoundExceeded, EngineError, GradalgError, NotWellDefined, ParseError,
                     RingMismatch, Unsupported, UnsupportedRing)
from .field import Field
from .groebner import (FreeModule, GroebnerBasis, Ideal, NotHomogeneous, VectorElem, buchberger,
                       colon, ideal_ops, intersect, normal_form, syzygies)
from .homology import (INFINITY, BettiTable, PdResult, Resolution, depth, ext, grade, pd, resolve,
                       restrict, syzygy, tor, transpose)
from .invariants import (check_depth_formula, height, is_locally_free_at, is_reflexive, is_torsion,
                         is_torsionless, rank, rigidity_witness, serre, support_contains)
from .modules import (FPModule, HilbertFunction, HilbertSeries, cokernel, dim_module, direct_sum, dual,
                      fitting_ideal, hilbert, hilbert_series, hom, image, kernel, minimalize, tensor)
from .ring import Polynomial, QuotientRing, parse_polynomial

__version__ = "0.1.0"
