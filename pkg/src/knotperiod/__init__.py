"""Classical and twisted Alexander polynomials via Fox calculus, with periodicity obstructions."""

from .alexander import alexander_poly, link_poly, verify_rel_identity
from .catalog import catalog_get, catalog_list
from .errors import ComputationError, InvalidInputError, KnotPeriodError, NotDivisibleError, ParseError
from .fox import fox_derivative, jacobian
from .freegroup import GroupRingElem, Word
from .knotio import PDCode, Presentation, parse_pd, parse_presentation, wirtinger
from .laurent import LaurentPoly, canonicalize, equal_up_to_unit, gcd_poly, parse_poly
from .matring import RingMatrix, determinant
from .obstruction import murasugi_check, murasugi_verify, twisted_search, twisted_verify
from .twisted import Representation, delta0, find_representations, twisted_alexander, wada_poly

__version__ = "0.1.0"

__all__ = [
    "alexander_poly", "link_poly", "verify_rel_identity",
    "catalog_get", "catalog_list",
    "ComputationError", "InvalidInputError", "KnotPeriodError", "NotDivisibleError", "ParseError",
    "fox_derivative", "jacobian",
    "GroupRingElem", "Word",
    "PDCode", "Presentation", "parse_pd", "parse_presentation", "wirtinger",
    "LaurentPoly", "canonicalize", "equal_up_to_unit", "gcd_poly", "parse_poly",
    "RingMatrix", "determinant",
    "murasugi_check", "murasugi_verify", "twisted_search", "twisted_verify",
    "Representation", "delta0", "find_representations", "twisted_alexander", "wada_poly",
]
