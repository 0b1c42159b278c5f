"""Exact entropy, overlap and Diophantine computations for self-similar measures.

Submodules
----------
exactnum
    Integer polynomials, number fields, algebraic numbers, rational maps.
measures
    Finite distributions, Shannon and scale entropies, convolution.
selfsim
    Parametrized IFS, Garsia entropy, overlap detection, curve families.
ffield
    The analogous digit systems over formal power series.
derivs
    Value-and-derivative vectors along curves.
dioph
    Certified roots, Mahler measure and lemma checkers.
cli
    Command-line front end.

Set ``GARSIA_DISABLE_NUMBA=1`` before import to force the numpy kernels.
"""

from .errors import (
    GarsiaError,
    GuardrailExceeded,
    HypothesisViolated,
    IndistinguishableRoots,
    LemmaViolation,
    NotPowerSeries,
    PoleError,
    PrecisionExhausted,
)
from .exactnum import (
    X,
    AlgebraicNumber,
    IntPolynomial,
    NumberField,
    NumberFieldElement,
    RationalMap,
    eval_map,
    series_prefix,
    vanishing_order,
)
from .measures import DiscreteDistribution, convolve, scale_entropy, shannon_entropy
from .selfsim import (
    BERNOULLI_FORMS,
    STANDARD_FORMS,
    Degenerate,
    DigitPair,
    IfsSpec,
    NonDegenerate,
    Symbolic,
    curve_entropy,
    dim_upper_bound,
    entropy_rate_upper,
    enumerate_level,
    find_overlap,
    garsia_entropy,
    similarity_dimension,
    xn_membership,
)
from ._levels import Limits
from .kernels import BACKEND

__version__ = "0.1.0"
