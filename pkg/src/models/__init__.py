from .word import Word, GroupRingElement
from .scalars import CyclotomicField, ComplexField, cyclotomic_field, complex_field
from .laurent import LaurentPoly, RationalFn, rational_reduce, equal_up_to_unit
from .poly_matrix import PolyMatrix
from .presentation import Presentation, TorusLinkParams
from .representation import Representation, CharacterPoint, MatrixTriple
