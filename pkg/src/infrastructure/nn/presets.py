"""
Model Presets
=============

Especificaciones publicadas de los emuladores y del modelo HA.

El ancho de proyección P de cada preset se ajusta para que el recuento de
parámetros caiga dentro del 10% del publicado; con P == H el modelo HA
quedaría ~11% por encima.

Recuentos resultantes (con 201 CFs):
    cochlear  1,421,525   (publicado 1.5M)
    ihc         299,345   (publicado 0.3M)
    anf         101,907   (publicado 0.1M)
    ha        1,554,829   (publicado 1.6M)
"""

from src.domain.exceptions import ConfigurationError
from src.domain.value_objects import ActivationKind, ModelSpec

PUBLISHED_PARAM_COUNTS: dict[str, int] = {
    "cochlear": 1_500_000,
    "ihc": 300_000,
    "anf": 100_000,
    "ha": 1_600_000,
}

PRESET_NAMES = tuple(PUBLISHED_PARAM_COUNTS)


def published_spec(name: str, n_cf: int = 201) -> ModelSpec:
    """
    Spec de un preset publicado.

    Para "anf" devuelve el spec del tronco compartido; usar
    `published_anf_specs` para el par (tronco, rama).

    Raises:
        ConfigurationError: Si el nombre no existe
    """
    if name == "cochlear":
        return ModelSpec(
            blocks_per_repeat=6, repeats=2, history_taps=80, future_taps=0,
            hidden=256, projection=192, c_in=1, c_out=n_cf,
            act_hidden=ActivationKind.TANH, act_out=ActivationKind.TANH,
            left_context=256, right_context=256,
        )
    if name == "ihc":
        return ModelSpec(
            blocks_per_repeat=4, repeats=2, history_taps=32, future_taps=32,
            hidden=128, projection=96, c_in=n_cf, c_out=n_cf,
            act_hidden=ActivationKind.TANH, act_out=ActivationKind.SIGMOID,
            left_context=256, right_context=256,
        )
    if name == "anf":
        return published_anf_specs(n_cf)[0]
    if name == "ha":
        return ModelSpec(
            blocks_per_repeat=6, repeats=2, history_taps=32, future_taps=32,
            hidden=256, projection=224, c_in=1, c_out=1,
            act_hidden=ActivationKind.TANH, act_out=ActivationKind.TANH,
            left_context=7936, right_context=256, passthrough=True,
        )
    raise ConfigurationError(
        f"unknown preset '{name}'",
        details={"known": list(PRESET_NAMES)},
    )


def published_anf_specs(n_cf: int = 201) -> tuple[ModelSpec, ModelSpec]:
    """
    Par (tronco, rama) del modelo ANF de tres ramas.

    Tronco y cada rama tienen 8 bloques (dilataciones 1…128): el camino
    de entrada a cualquier salida atraviesa 16 bloques (M=8, R=2).
    """
    shared = ModelSpec(
        blocks_per_repeat=8, repeats=1, history_taps=16, future_taps=16,
        hidden=32, projection=24, c_in=n_cf, c_out=n_cf,
        act_hidden=ActivationKind.TANH, act_out=ActivationKind.TANH,
        left_context=7936, right_context=256, act_final=ActivationKind.RELU,
    )
    return shared, shared
