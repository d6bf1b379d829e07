"""Value Objects: catálogo de contenidos y política de caché probabilística."""

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray


def _frozen(values: NDArray[np.float64] | list[float]) -> NDArray[np.float64]:
    array = np.array(values, dtype=np.float64)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class Catalog:
    """
    Catálogo de F ficheros con su probabilidad de petición p_f.

    La popularidad es una función de masa: suma 1.
    """

    num_files: int
    """Número de ficheros F"""

    popularity: NDArray[np.float64]
    """Vector p_f de probabilidades de petición"""

    def __post_init__(self) -> None:
        """Valida el catálogo y congela el vector."""
        object.__setattr__(self, "popularity", _frozen(self.popularity))

        if self.num_files < 1:
            raise ValueError("Catalog needs at least one file")

        if self.popularity.shape != (self.num_files,):
            raise ValueError(
                f"Popularity length {self.popularity.shape} does not match F={self.num_files}"
            )

        if np.any(self.popularity < 0.0) or np.any(self.popularity > 1.0):
            raise ValueError("Popularity entries must lie in [0, 1]")

        if abs(float(np.sum(self.popularity)) - 1.0) > 1e-9:
            raise ValueError("Popularity must sum to 1")


@dataclass(frozen=True, eq=False)
class CachePolicy:
    """
    Matriz q_fi de probabilidades de caché (fichero f, estación i).

    No valida C4/C5 al construirse: una política inviable puede existir
    para que validate_policy la diagnostique.
    """

    q: NDArray[np.float64]
    """Tabla densa F × |B|"""

    def __post_init__(self) -> None:
        object.__setattr__(self, "q", _frozen(self.q))
        if self.q.ndim != 2:
            raise ValueError("Cache policy must be a 2-D table (files x stations)")

    @property
    def num_files(self) -> int:
        return int(self.q.shape[0])

    @property
    def num_stations(self) -> int:
        return int(self.q.shape[1])

    def column(self, station: int) -> NDArray[np.float64]:
        """Retorna la columna q_·i de una estación."""
        return self.q[:, station]


@dataclass(frozen=True)
class PolicyViolation:
    """Violación de C4 (capacidad) o C5 (rango de q) en una estación."""

    station: int
    """Índice de la estación"""

    constraint: str
    """'C4' o 'C5'"""

    margin: float
    """Exceso sobre el límite (siempre > 0)"""

    file: int | None = None
    """Fichero implicado (solo C5)"""

    def __str__(self) -> str:
        where = f"station {self.station}"
        if self.file is not None:
            where += f", file {self.file}"
        return f"{self.constraint} violated at {where} by {self.margin:.6g}"
