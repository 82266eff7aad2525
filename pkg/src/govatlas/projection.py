"""Map projections: spherical Albers equal-area conic and a pass-through identity."""

from __future__ import annotations

import math
from dataclasses import dataclass

# Authalic sphere radius in meters; any positive radius works, this keeps
# projected units in familiar meter-like magnitudes.
SPHERE_RADIUS = 6370997.0


class ProjectionError(ValueError):
    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code
        self.message = message


def _check_lat(lat: float) -> None:
    if abs(lat) >= 90.0:
        raise ProjectionError("E_POLE", f"latitude {lat} outside the open interval (-90, 90)")


@dataclass(frozen=True)
class AlbersEqualArea:
    """Forward spherical Albers equal-area conic projection.

    x grows eastward and y northward; the origin maps to (0, 0).
    """

    origin_lat: float
    origin_lon: float
    parallel_1: float
    parallel_2: float
    radius: float = SPHERE_RADIUS

    def __post_init__(self):
        phi1 = math.radians(self.parallel_1)
        phi2 = math.radians(self.parallel_2)
        n = (math.sin(phi1) + math.sin(phi2)) / 2.0
        c = math.cos(phi1) ** 2 + 2.0 * n * math.sin(phi1)
        rho0 = self.radius * math.sqrt(c - 2.0 * n * math.sin(math.radians(self.origin_lat))) / n
        object.__setattr__(self, "_n", n)
        object.__setattr__(self, "_c", c)
        object.__setattr__(self, "_rho0", rho0)

    def project(self, lon: float, lat: float) -> tuple[float, float]:
        _check_lat(lat)
        n: float = self._n  # type: ignore[attr-defined]
        c: float = self._c  # type: ignore[attr-defined]
        rho0: float = self._rho0  # type: ignore[attr-defined]
        rho = self.radius * math.sqrt(c - 2.0 * n * math.sin(math.radians(lat))) / n
        theta = n * math.radians(lon - self.origin_lon)
        return rho * math.sin(theta), rho0 - rho * math.cos(theta)


@dataclass(frozen=True)
class Identity:
    """Pass-through projection for already-planar fixture geometry."""

    def project(self, lon: float, lat: float) -> tuple[float, float]:
        _check_lat(lat)
        return lon, lat


# Conventional conterminous-US setup: standard parallels 29.5N/45.5N, origin 23N 96W.
ALBERS_US = AlbersEqualArea(origin_lat=23.0, origin_lon=-96.0, parallel_1=29.5, parallel_2=45.5)
IDENTITY = Identity()

PROJECTIONS = {"albers": ALBERS_US, "identity": IDENTITY}

# Grid cells per projected unit; exact shared-edge matching needs integer snapping.
DEFAULT_SCALE = {"albers": 1e4, "identity": 1.0}


def get_projection(name: str):
    try:
        return PROJECTIONS[name]
    except KeyError:
        raise ProjectionError("E_BAD_PROJECTION", f"unknown projection {name!r}") from None
