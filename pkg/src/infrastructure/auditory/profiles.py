"""
Hearing Profiles
================

Fábrica de perfiles de audición por nombre.

Nombres reconocidos:
- "NH": audición normal, sin pérdida OHC, pesos (13, 3, 3)
- "Slope<dB>": pérdida OHC de 0 dB hasta 1 kHz que sube log-linealmente
  hasta <dB> en 8 kHz (constante por encima), pesos NH
- "Slope<dB>-H,M,L": la misma pérdida OHC con pesos de fibra (H, M, L)
- "CS-H,M,L": sólo sinaptopatía (pesos reducidos), sin pérdida OHC

Los ejemplos publicados son NH, Slope35, Slope35-7,0,0 y CS-7,0,0.
"""

import re

from src.domain.exceptions import ConfigurationError, InvalidSpecError
from src.domain.value_objects import NH_FIBER_WEIGHTS, HearingProfile

SLOPE_START_HZ = 1000.0
SLOPE_END_HZ = 8000.0

KNOWN_PROFILES = ("NH", "Slope35", "Slope35-7,0,0", "CS-7,0,0")

_NUMBER = r"\d+(?:\.\d+)?"
_WEIGHTS = rf"({_NUMBER}),({_NUMBER}),({_NUMBER})"
_SLOPE = re.compile(rf"^Slope({_NUMBER})(?:-{_WEIGHTS})?$")
_CS = re.compile(rf"^CS-{_WEIGHTS}$")


def slope_breakpoints(loss_db: float) -> tuple[tuple[float, float], ...]:
    """Puntos de quiebre de una pérdida en pendiente que empieza en 1 kHz."""
    return ((SLOPE_START_HZ, 0.0), (SLOPE_END_HZ, loss_db))


def make_profile(name: str) -> HearingProfile:
    """
    Construye un HearingProfile a partir de su nombre.

    Raises:
        ConfigurationError: Nombre no reconocido (lista los conocidos)
    """
    name = name.strip()
    if name == "NH":
        return HearingProfile(name="NH")

    try:
        match = _SLOPE.match(name)
        if match:
            loss = float(match.group(1))
            weights = NH_FIBER_WEIGHTS
            if match.group(2) is not None:
                weights = (float(match.group(2)), float(match.group(3)), float(match.group(4)))
            return HearingProfile(name, slope_breakpoints(loss), weights)

        match = _CS.match(name)
        if match:
            weights = (float(match.group(1)), float(match.group(2)), float(match.group(3)))
            return HearingProfile(name, (), weights)
    except InvalidSpecError as exc:
        raise ConfigurationError(
            f"invalid hearing profile '{name}'", details=exc.details
        ) from exc

    raise ConfigurationError(
        f"unknown hearing profile '{name}'",
        details={"known_profiles": list(KNOWN_PROFILES)},
    )
