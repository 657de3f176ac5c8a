"""Mod 2 Steenrod algebra computations on Stiefel-Whitney and Thom-space
models, and embedding/immersion obstruction checks over finite cohomology
presentations."""

from .char_ring import (
    PontryaginExpression,
    RingContext,
    SWPolynomial,
    apply_steenrod,
    format_poly,
    parse_pontryagin,
    reduce_pontryagin,
    sq_generator,
    sq_poly,
)
from .obstructions import (
    Outcome,
    Verdict,
    check_bhk_codim3,
    check_gsz_immersion,
    check_prop_kq,
    check_theorem_c,
    whitney_m2_mod2,
)
from .presentation import (
    AlgebraPresentation,
    MissingData,
    PresentedClass,
    cup,
    format_presentation,
    load_presentation,
    parse_presentation,
    sq_apply,
    validate,
)
from .steenrod import (
    SqWord,
    SteenrodElement,
    adem_normalize,
    excess,
    gsz_candidates,
    parse_element,
    serre_generators,
)
from .thom import ThomModel, mso3_mod3_degree_dims, verify_codim11_identity

__version__ = "0.1.0"
