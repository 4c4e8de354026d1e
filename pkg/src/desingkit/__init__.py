"""Exact desingularization of linear Poisson structures by Lie algebroids."""

from .algebroid import TrivialAlgebroid, verify_desingularizes
from .desing import Verdict, verdict
from .errors import DesingError
from .liealg import LieAlgebra, builtin, classify3, kks
from .multivector import PolyVector
from .symbolic import Polynomial

__version__ = "0.1.0"

__all__ = [
    "DesingError",
    "LieAlgebra",
    "PolyVector",
    "Polynomial",
    "TrivialAlgebroid",
    "Verdict",
    "builtin",
    "classify3",
    "kks",
    "verdict",
    "verify_desingularizes",
]
