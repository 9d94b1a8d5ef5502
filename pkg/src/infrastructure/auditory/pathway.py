"""
Auditory Pathways
=================

Adaptadores del port IAuditoryPathway:

- SurrogatePathway: cóclea → IHC → ANF sustitutos analíticos (sin parámetros)
- EmulatedPathway: emuladores dCoNNear entrenados (cóclea, IHC, ANF de tres
  ramas) más los pesos de fibra del perfil; deben congelarse antes de
  usarse en lazo cerrado

Ambos devuelven la respuesta AN ponderada r_f (N_CF × T) y propagan
gradientes hacia el audio de entrada.
"""

import hashlib
from dataclasses import dataclass

import numpy as np

from src.domain.exceptions import ConfigurationError
from src.domain.interfaces import IAuditoryPathway
from src.domain.value_objects import DEFAULT_SAMPLE_RATE, CFGrid, HearingProfile
from src.infrastructure.auditory.cochlea import CochleaSurrogate
from src.infrastructure.auditory.hair_cell import HairCellSurrogate
from src.infrastructure.auditory.nerve import NerveSurrogate
from src.infrastructure.auditory.stages import population_response
from src.infrastructure.nn import DCoNNear, ThreeBranchANF

# Escalas de los objetivos de entrenamiento de cada emulador.
BM_SCALE = 1e6
IHC_SCALE = 10.0
ANF_SCALE = 0.01


@dataclass(frozen=True, eq=False)
class PathwayResponse:
    """Salidas intermedias de un forward completo (todas N_CF × T)."""

    bm: np.ndarray
    ihc: np.ndarray
    fibers: tuple[np.ndarray, np.ndarray, np.ndarray]
    r_f: np.ndarray
    p: np.ndarray


class SurrogatePathway(IAuditoryPathway):
    """
    Camino de sustitutos analíticos.

    Ejemplo:
        >>> path = SurrogatePathway(make_profile("NH"), CFGrid.log_spaced(21))
        >>> r_f = path.forward(audio)
    """

    def __init__(self, profile: HearingProfile, grid: CFGrid,
                 sample_rate: float = DEFAULT_SAMPLE_RATE) -> None:
        self._profile = profile
        self.grid = grid
        self.sample_rate = sample_rate
        self.cochlea = CochleaSurrogate(grid, profile, sample_rate)
        self.hair_cell = HairCellSurrogate(sample_rate)
        self.nerve = NerveSurrogate(sample_rate)

    @property
    def profile(self) -> HearingProfile:
        return self._profile

    @property
    def frozen(self) -> bool:
        return True

    def respond(self, audio: np.ndarray) -> PathwayResponse:
        """Forward completo conservando todas las etapas."""
        bm = self.cochlea.forward(audio)
        ihc = self.hair_cell.forward(bm)
        hsr, msr, lsr = self.nerve.forward(ihc)
        r_f, p = population_response(hsr, msr, lsr, self._profile.fiber_weights)
        return PathwayResponse(bm, ihc, (hsr, msr, lsr), r_f, p)

    def forward(self, audio: np.ndarray) -> np.ndarray:
        return self.respond(audio).r_f

    def backward(self, grad_output: np.ndarray) -> np.ndarray:
        grads = [w * grad_output for w in self._profile.fiber_weights]
        g_ihc = self.nerve.backward(grads)
        return self.cochlea.backward(self.hair_cell.backward(g_ihc))

    def fingerprint(self) -> str:
        key = f"surrogate|{self._profile!r}|{self.grid.center_freqs.tobytes().hex()}"
        return hashlib.sha256(key.encode()).hexdigest()


class EmulatedPathway(IAuditoryPathway):
    """
    Camino de emuladores dCoNNear.

    Cada emulador trabaja en la escala de sus objetivos de entrenamiento:
    la cóclea produce BM·1e6, la IHC recibe BM·1e6 y produce IHC·10, el ANF
    recibe IHC·10 y produce tasas·0.01. Las tres etapas corren sin recorte
    y sólo la salida final se recorta con el contexto del emulador coclear.

    La pérdida OHC de un perfil HI debe estar incorporada en el emulador
    coclear recibido; aquí sólo se aplican los pesos de fibra.
    """

    def __init__(self, cochlea: DCoNNear, ihc: DCoNNear, anf: ThreeBranchANF,
                 profile: HearingProfile) -> None:
        n_cf = cochlea.spec.c_out
        if ihc.spec.c_in != n_cf or ihc.spec.c_out != n_cf or anf.shared_spec.c_in != n_cf:
            raise ConfigurationError(
                "emulator channel counts must match the cochlear output",
                details={
                    "cochlea_out": n_cf,
                    "ihc": [ihc.spec.c_in, ihc.spec.c_out],
                    "anf_in": anf.shared_spec.c_in,
                },
            )
        self.cochlea = cochlea
        self.ihc = ihc
        self.anf = anf
        self._profile = profile
        self._length = 0

    @property
    def profile(self) -> HearingProfile:
        return self._profile

    @property
    def frozen(self) -> bool:
        return all(m.frozen for m in (self.cochlea, self.ihc, self.anf))

    def freeze(self) -> None:
        for model in (self.cochlea, self.ihc, self.anf):
            model.freeze()

    def _crop(self, y: np.ndarray) -> np.ndarray:
        spec = self.cochlea.spec
        return y[:, spec.left_context:y.shape[1] - spec.right_context]

    def forward(self, audio: np.ndarray) -> np.ndarray:
        x = np.asarray(audio, dtype=np.float64).reshape(1, -1)
        self._length = x.shape[1]
        bm = self.cochlea.forward(x, trim=False)
        ihc = self.ihc.forward(bm, trim=False)
        fibers = [f / ANF_SCALE for f in self.anf.forward(ihc, trim=False)]
        r_f, _ = population_response(*fibers, self._profile.fiber_weights)
        return self._crop(r_f)

    def backward(self, grad_output: np.ndarray) -> np.ndarray:
        spec = self.cochlea.spec
        g_full = np.zeros((grad_output.shape[0], self._length))
        g_full[:, spec.left_context:self._length - spec.right_context] = grad_output
        grads = [w * g_full / ANF_SCALE for w in self._profile.fiber_weights]
        g_ihc = self.anf.backward(grads)
        g_bm = self.ihc.backward(g_ihc)
        return self.cochlea.backward(g_bm).reshape(-1)

    def fingerprint(self) -> str:
        digest = hashlib.sha256()
        for model in (self.cochlea, self.ihc, self.anf):
            digest.update(model.store.fingerprint().encode())
        return digest.hexdigest()
