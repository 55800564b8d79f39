from .quiver import Arrow, Path, Quiver
from .structured import StructuredAlgebra
from .algebra import AlgebraElement, QuotientAlgebra, build_quotient
from .matrix import MatrixOverA
from .module import ProjectiveModule, Representation, hom_dimension
