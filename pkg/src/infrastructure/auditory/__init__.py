# ================================
# Auditory Surrogates
# ================================
# Sustitutos analíticos de cóclea, IHC y ANF, perfiles de audición y
# caminos auditivos (sustitutos o emuladores) para el lazo cerrado.
# ================================

from .cochlea import CochleaSurrogate, erb_hz, gammatone_coefficients
from .hair_cell import HairCellSurrogate
from .nerve import FIBER_TYPES, FiberSurrogate, FiberType, NerveSurrogate
from .pathway import (
    ANF_SCALE,
    BM_SCALE,
    IHC_SCALE,
    EmulatedPathway,
    PathwayResponse,
    SurrogatePathway,
)
from .profiles import KNOWN_PROFILES, make_profile
from .stages import an_population, anf_forward, cochlea_forward, ihc_forward, population_response

__all__ = [
    "CochleaSurrogate",
    "HairCellSurrogate",
    "NerveSurrogate",
    "FiberSurrogate",
    "FiberType",
    "FIBER_TYPES",
    "erb_hz",
    "gammatone_coefficients",
    "cochlea_forward",
    "ihc_forward",
    "anf_forward",
    "an_population",
    "population_response",
    "make_profile",
    "KNOWN_PROFILES",
    "SurrogatePathway",
    "EmulatedPathway",
    "PathwayResponse",
    "BM_SCALE",
    "IHC_SCALE",
    "ANF_SCALE",
]
