"""Exact verification of binomial identities and hyperbolic homogeneous polynomials."""

from .exact import DomainError, binom
from .poly import HPoly, Sign, sign_on_punctured_plane
from .diffgeo import QForm, arnold_P, arnold_family, hessian_det, second_form
from .topo import Verdict, classify, index_at_origin

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "binom",
    "HPoly",
    "Sign",
    "sign_on_punctured_plane",
    "QForm",
    "arnold_P",
    "arnold_family",
    "hessian_det",
    "second_form",
    "Verdict",
    "classify",
    "index_at_origin",
]
