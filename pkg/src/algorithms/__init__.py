from .fox import fox_derivative, fox_jacobian
from .symmetric_power import symmetric_power
from .twisted import TwistedAlexanderEngine, wada_invariant, compare_with_closed_form
from .character_variety import from_character_case11, from_character_case12, from_character_case21
from .torus_formulas import TorusEigenData, closed_form_sl2, closed_form_symn, torsion_closed_form
