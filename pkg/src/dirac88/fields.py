"""Fields on a periodic grid: wave-functions, classical E/B, spectral calculus.

Grid axes map onto the last ``ndim`` Cartesian directions, so a 1-D grid
varies along z, a 2-D grid along (y, z), and a 3-D grid along (x, y, z).
Vector fields have shape (*grid, 3), wave-functions (*grid, 8); storage
is complex throughout, with reality enforced only where classical fields
are read out.

Units are Gaussian; c and hbar enter as explicit constants where they
appear in formulas (natural units c = hbar = 1 by default).
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .algebra import generators, transformed_dirac88
from .errors import ConstraintViolation

__all__ = [
    "GridSpec",
    "EMField",
    "SpinorField8",
    "FourCurrent",
    "FieldTensor",
    "EnergyPoynting",
    "embed_em",
    "extract_em",
    "embed_electron",
    "field_tensor",
    "divergence",
    "curl",
    "energy_and_poynting",
    "save_spinor_csv",
    "load_spinor_csv",
    "save_em_csv",
    "load_em_csv",
]

PHOTON = "photon"
ELECTRON = "electron"
GENERIC = "generic"


@dataclass(frozen=True)
class GridSpec:
    """Periodic box: points per axis (powers of two) and box lengths."""

    points: tuple[int, ...]
    lengths: tuple[float, ...]

    def __post_init__(self):
        if len(self.points) != len(self.lengths):
            raise ValueError("points and lengths must have equal rank")
        if not 1 <= len(self.points) <= 3:
            raise ValueError("grid rank must be 1, 2 or 3")
        for n in self.points:
            if n < 2 or n & (n - 1):
                raise ValueError(f"points per axis must be a power of two >= 2, got {n}")

    @property
    def ndim(self) -> int:
        return len(self.points)

    @property
    def shape(self) -> tuple[int, ...]:
        return self.points

    @property
    def spacings(self) -> tuple[float, ...]:
        return tuple(length / n for length, n in zip(self.lengths, self.points))

    @property
    def cell_volume(self) -> float:
        return float(np.prod(self.spacings))

    @property
    def volume(self) -> float:
        return float(np.prod(self.lengths))

    @property
    def spatial_axes(self) -> tuple[int, ...]:
        """Cartesian indices the grid axes map to: z for 1-D, (y,z), (x,y,z)."""
        return tuple(range(3 - self.ndim, 3))

    def axis_coords(self) -> list[np.ndarray]:
        """Box-centred coordinates per grid axis, from -L/2 to L/2 - dx."""
        return [(-0.5 * length + spacing * np.arange(n))
                for length, spacing, n in zip(self.lengths, self.spacings, self.points)]

    def positions(self) -> np.ndarray:
        """(x, y, z) per grid point, shape (*grid, 3); off-grid directions are 0."""
        out = np.zeros(self.shape + (3,))
        mesh = np.meshgrid(*self.axis_coords(), indexing="ij")
        for axis, cart in enumerate(self.spatial_axes):
            out[..., cart] = mesh[axis]
        return out

    def wave_vectors(self) -> np.ndarray:
        """Discrete Fourier wave vectors, shape (*grid, 3)."""
        out = np.zeros(self.shape + (3,))
        axes_k = [2.0 * np.pi * np.fft.fftfreq(n, d=spacing)
                  for n, spacing in zip(self.points, self.spacings)]
        mesh = np.meshgrid(*axes_k, indexing="ij")
        for axis, cart in enumerate(self.spatial_axes):
            out[..., cart] = mesh[axis]
        return out

    def to_dict(self) -> dict:
        return {"points": list(self.points), "lengths": list(self.lengths)}

    @classmethod
    def from_dict(cls, d: dict) -> "GridSpec":
        return cls(points=tuple(int(p) for p in d["points"]),
                   lengths=tuple(float(x) for x in d["lengths"]))


@dataclass
class EMField:
    """Classical E and B on a grid, shape (*grid, 3) each, complex storage."""

    grid: GridSpec
    e: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        self.e = np.asarray(self.e, dtype=complex)
        self.b = np.asarray(self.b, dtype=complex)
        want = self.grid.shape + (3,)
        if self.e.shape != want or self.b.shape != want:
            raise ValueError(f"field shape must be {want}")

    @classmethod
    def zero(cls, grid: GridSpec) -> "EMField":
        z = np.zeros(grid.shape + (3,), dtype=complex)
        return cls(grid, z, z.copy())

    def reality_residual(self) -> float:
        return float(max(np.max(np.abs(self.e.imag), initial=0.0),
                         np.max(np.abs(self.b.imag), initial=0.0)))


@dataclass
class SpinorField8:
    """Eight complex components per grid point plus kind ('photon' states
    keep components 0 and 4 at zero) and a rest mass."""

    grid: GridSpec
    values: np.ndarray
    kind: str = GENERIC
    mass: float = 0.0

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex)
        if self.values.shape != self.grid.shape + (8,):
            raise ValueError(f"wave-function shape must be {self.grid.shape + (8,)}")
        if self.kind not in (PHOTON, ELECTRON, GENERIC):
            raise ValueError(f"unknown kind {self.kind!r}")

    def norm(self) -> float:
        """Integral of psi+ psi over the box."""
        return float(np.sum(np.abs(self.values) ** 2) * self.grid.cell_volume)

    def constraint_residual(self) -> float:
        """Largest magnitude on the two constrained components."""
        return float(max(np.max(np.abs(self.values[..., 0])),
                         np.max(np.abs(self.values[..., 4]))))


@dataclass
class FourCurrent:
    """Prescribed source: J(r, t) = j_amp(r) cos(Omega t) with the charge
    density following from continuity, rho(r, t) = rho_amp(r) sin(Omega t)/Omega.

    By default rho_amp = -div j_amp (computed spectrally), which satisfies
    continuity exactly.  Passing ``rho_amp`` explicitly allows deliberately
    inconsistent sources for negative controls.
    """

    grid: GridSpec
    j_amp: np.ndarray
    omega: float = 0.0
    rho_amp: np.ndarray | None = None

    def __post_init__(self):
        self.j_amp = np.asarray(self.j_amp, dtype=float)
        if self.j_amp.shape != self.grid.shape + (3,):
            raise ValueError(f"current amplitude shape must be {self.grid.shape + (3,)}")
        if self.rho_amp is None:
            self.rho_amp = -divergence(self.grid, self.j_amp).real
        else:
            self.rho_amp = np.asarray(self.rho_amp, dtype=float)
            if self.rho_amp.shape != self.grid.shape:
                raise ValueError(f"charge amplitude shape must be {self.grid.shape}")

    def current(self, t: float) -> np.ndarray:
        return self.j_amp * np.cos(self.omega * t)

    def charge(self, t: float) -> np.ndarray:
        # sin(w t)/w with a smooth w -> 0 limit of t
        return self.rho_amp * (t * np.sinc(self.omega * t / np.pi))

    def charge_rate(self, t: float) -> np.ndarray:
        return self.rho_amp * np.cos(self.omega * t)

    def continuity_residual(self, t: float) -> float:
        """max |d rho/dt + div J| at time t (spectral divergence)."""
        r = self.charge_rate(t) + divergence(self.grid, self.current(t).astype(complex)).real
        return float(np.max(np.abs(r)))


@dataclass(frozen=True)
class FieldTensor:
    """Antisymmetric 4x4 field tensor and its dual."""

    f: np.ndarray
    g: np.ndarray


@dataclass(frozen=True)
class EnergyPoynting:
    """Total field energy, Poynting field, and the same flux read from the
    embedded wave-function (psi+ alpha psi / 2)."""

    energy: float
    poynting: np.ndarray
    poynting_from_spinor: np.ndarray


def embed_em(em: EMField) -> SpinorField8:
    """Pack (E, B) into the eight-component wave-function [0, E, 0, iB]."""
    values = np.zeros(em.grid.shape + (8,), dtype=complex)
    values[..., 1:4] = em.e
    values[..., 5:8] = 1j * em.b
    return SpinorField8(em.grid, values, kind=PHOTON, mass=0.0)


def extract_em(psi: SpinorField8, tol: float = 1e-10) -> EMField:
    """Read (E, B) back out of a photon-embedded wave-function.

    Raises ConstraintViolation if components 0 or 4 exceed ``tol`` anywhere
    (broken transversality / Gauss constraint), or if the recovered fields
    fail the reality check at the same tolerance.
    """
    resid = psi.constraint_residual()
    if resid > tol:
        raise ConstraintViolation(
            f"components 0/4 reach {resid:.3e} (tolerance {tol:.1e}); "
            "Gauss-law or transversality constraint broken")
    e = psi.values[..., 1:4]
    b = -1j * psi.values[..., 5:8]
    imag = max(float(np.max(np.abs(e.imag))), float(np.max(np.abs(b.imag))))
    if imag > tol:
        raise ConstraintViolation(
            f"recovered fields have imaginary residue {imag:.3e} (tolerance {tol:.1e})")
    return EMField(psi.grid, e.real.astype(complex), b.real.astype(complex))


def extract_em_amplitudes(psi: SpinorField8 | np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Complex (E, B) amplitudes from the embedding slots, no reality check."""
    values = psi.values if isinstance(psi, SpinorField8) else np.asarray(psi, complex)
    return values[..., 1:4].copy(), -1j * values[..., 5:8]


def embed_electron(g: np.ndarray, phi: np.ndarray, f: np.ndarray, chi: np.ndarray,
                   grid: GridSpec, mass: float) -> SpinorField8:
    """Pack the electron variables as [i g, phi, f, i chi]."""
    values = np.zeros(grid.shape + (8,), dtype=complex)
    values[..., 0] = 1j * np.asarray(g)
    values[..., 1:4] = np.asarray(phi)
    values[..., 4] = np.asarray(f)
    values[..., 5:8] = 1j * np.asarray(chi)
    return SpinorField8(grid, values, kind=ELECTRON, mass=mass)


def field_tensor(e: np.ndarray, b: np.ndarray) -> FieldTensor:
    """Expand pointwise (E, B) on the generator basis:
    F = -i kappa.E - i theta.B and the dual G = -i kappa.B + i theta.E."""
    kappa, theta, _ = generators()
    e = np.asarray(e, dtype=complex)
    b = np.asarray(b, dtype=complex)
    f = -1j * np.einsum("k,kij->ij", e, kappa) - 1j * np.einsum("k,kij->ij", b, theta)
    g = -1j * np.einsum("k,kij->ij", b, kappa) + 1j * np.einsum("k,kij->ij", e, theta)
    return FieldTensor(f, g)


def _fft_axes(grid: GridSpec) -> tuple[int, ...]:
    return tuple(range(grid.ndim))


def _spectral_apply(grid: GridSpec, values: np.ndarray, factor) -> np.ndarray:
    """ifft(factor(k) * fft(values)) over the grid axes."""
    axes = _fft_axes(grid)
    hat = np.fft.fftn(values, axes=axes)
    hat = factor(hat)
    return np.fft.ifftn(hat, axes=axes)


def divergence(grid: GridSpec, v: np.ndarray) -> np.ndarray:
    """Spectral divergence of a 3-vector field; exact for band-limited input."""
    v = np.asarray(v, dtype=complex)
    k = grid.wave_vectors()
    axes = _fft_axes(grid)
    hat = np.fft.fftn(v, axes=axes)
    out = np.fft.ifftn(1j * np.einsum("...i,...i->...", k, hat), axes=axes)
    return out


def curl(grid: GridSpec, v: np.ndarray) -> np.ndarray:
    """Spectral curl of a 3-vector field."""
    v = np.asarray(v, dtype=complex)
    k = grid.wave_vectors()
    axes = _fft_axes(grid)
    hat = np.fft.fftn(v, axes=axes)
    curl_hat = 1j * np.cross(k, hat)
    return np.fft.ifftn(curl_hat, axes=axes)


def energy_and_poynting(em: EMField, c: float = 1.0) -> EnergyPoynting:
    """Total energy int (E^2 + B^2)/8pi dV and S = (c/4pi) E x B per point.

    Also evaluates psi+ alpha psi / 2 through the embedding; for real
    fields it must equal E x B pointwise (the classical flux integrand).
    """
    e = em.e.real
    b = em.b.real
    density = (np.einsum("...i,...i->...", e, e) + np.einsum("...i,...i->...", b, b)) / (8 * np.pi)
    energy = float(np.sum(density) * em.grid.cell_volume)
    poynting = (c / (4 * np.pi)) * np.cross(e, b)
    alpha, _ = transformed_dirac88()
    psi = embed_em(em).values
    half = 0.5 * np.stack(
        [np.einsum("...a,ab,...b->...", psi.conj(), alpha[i], psi).real for i in range(3)],
        axis=-1)
    return EnergyPoynting(energy, poynting, half)


# --- columnar serialisation: CSV body plus a JSON sidecar with the grid ---

def _write_csv(path: Path, grid: GridSpec, values: np.ndarray, ncomp: int, kindmeta: dict):
    path = Path(path)
    idx_shape = grid.shape + (1,) * (3 - grid.ndim)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["i", "j", "k", "component", "re", "im"])
        flat = values.reshape(-1, ncomp)
        for flat_index, row in enumerate(flat):
            ijk = np.unravel_index(flat_index, idx_shape[:3])
            for comp in range(ncomp):
                writer.writerow([ijk[0], ijk[1], ijk[2], comp,
                                 f"{row[comp].real:.17g}", f"{row[comp].imag:.17g}"])
    sidecar = {"grid": grid.to_dict(), "components": ncomp}
    sidecar.update(kindmeta)
    path.with_suffix(path.suffix + ".json").write_text(json.dumps(sidecar, indent=1))


def _read_csv(path: Path) -> tuple[GridSpec, np.ndarray, dict]:
    path = Path(path)
    meta = json.loads(path.with_suffix(path.suffix + ".json").read_text())
    grid = GridSpec.from_dict(meta["grid"])
    ncomp = int(meta["components"])
    values = np.zeros(grid.shape + (ncomp,), dtype=complex)
    flat = values.reshape(-1, ncomp)
    idx_shape = grid.shape + (1,) * (3 - grid.ndim)
    with path.open() as fh:
        reader = csv.reader(fh)
        next(reader)
        for i, j, k, comp, re, im in reader:
            flat_index = np.ravel_multi_index((int(i), int(j), int(k)), idx_shape[:3])
            flat[flat_index, int(comp)] = float(re) + 1j * float(im)
    return grid, values, meta


def save_spinor_csv(path, psi: SpinorField8):
    _write_csv(Path(path), psi.grid, psi.values, 8, {"kind": psi.kind, "mass": psi.mass})


def load_spinor_csv(path) -> SpinorField8:
    grid, values, meta = _read_csv(Path(path))
    return SpinorField8(grid, values, kind=meta.get("kind", GENERIC),
                        mass=float(meta.get("mass", 0.0)))


def save_em_csv(path, em: EMField):
    stacked = np.concatenate([em.e, em.b], axis=-1)
    _write_csv(Path(path), em.grid, stacked, 6, {"kind": "em"})


def load_em_csv(path) -> EMField:
    grid, values, _ = _read_csv(Path(path))
    return EMField(grid, values[..., :3], values[..., 3:])
