"""First-order Hermite-Gaussian fields and CCD-style port images.

Fields are sampled at the beam waist on a square grid in waist units
(w = 1), so the horizontal mode is x * exp(-(x^2 + y^2)) and the vertical
one swaps x for y.  Port images weight the spatial-mode intensity of the
port by its outcome probability; relative brightness across the four
ports then encodes p(m, n) directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .game import Outcome
from .qmath import BASIS_LABELS

DEFAULT_PIXELS = 256
DEFAULT_EXTENT = 3.0


@dataclass(frozen=True)
class FieldGrid:
    """Complex field samples on an n x n grid spanning +-extent waist units."""

    n: int
    extent: float
    values: np.ndarray

    def __post_init__(self):
        if self.n < 8:
            raise ValueError("grid needs at least 8 pixels per side")
        if not self.extent > 0:
            raise ValueError("grid extent must be positive")
        vals = np.array(self.values, dtype=complex)
        if vals.shape != (self.n, self.n):
            raise ValueError(f"values must be {self.n}x{self.n}")
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)

    def intensity(self) -> np.ndarray:
        return np.abs(self.values) ** 2


def hg_field(which: str, n: int = DEFAULT_PIXELS, extent: float = DEFAULT_EXTENT) -> FieldGrid:
    """First-order Hermite-Gaussian profile at the waist, peak intensity 1.

    ``which`` is "h" (lobes split along x, nodal line on the y axis) or "v"
    (the 90-degree rotation).  Rows index y, columns x, both from -extent
    to +extent.
    """
    if which not in ("h", "v"):
        raise ValueError('mode must be "h" or "v"')
    if n < 8:
        raise ValueError("grid needs at least 8 pixels per side")
    if not extent > 0:
        raise ValueError("grid extent must be positive")
    axis = np.linspace(-extent, extent, n)
    x, y = np.meshgrid(axis, axis)
    u = x if which == "h" else y
    field = u * np.exp(-(x**2 + y**2))
    field = field / np.abs(field).max()
    return FieldGrid(n=n, extent=extent, values=field)


@dataclass(frozen=True)
class PortImage:
    """Intensity image of one output port, scaled by its probability weight."""

    port: str
    pixels: np.ndarray
    scale: float

    def __post_init__(self):
        if self.port not in BASIS_LABELS:
            raise ValueError(f"unknown port label {self.port!r}")
        px = np.array(self.pixels, dtype=float)
        if np.any(px < 0):
            raise ValueError("pixel intensities must be nonnegative")
        px.flags.writeable = False
        object.__setattr__(self, "pixels", px)


def port_images(
    outcome: Outcome, n: int = DEFAULT_PIXELS, extent: float = DEFAULT_EXTENT
) -> list[PortImage]:
    """One image per output port, in basis-label order.

    The interferometric sorter sends each spatial mode to its own port and
    polarization picks the beam-splitter branch, so a port shows the
    profile of its spatial letter (Bob's bit) weighted by p(m, n).
    """
    profiles = {
        "C": hg_field("h", n, extent).intensity(),
        "D": hg_field("v", n, extent).intensity(),
    }
    images = []
    for label in BASIS_LABELS:
        p = outcome.prob(label)
        images.append(PortImage(port=label, pixels=p * profiles[label[1]], scale=p))
    return images


def write_image(img: PortImage, path: str | Path, white: float | None = None) -> None:
    """Write an 8-bit binary portable graymap, mapping [0, white] to [0, 255].

    ``white`` defaults to the image's own peak; pass a shared value to keep
    relative brightness comparable across ports.  Identical inputs produce
    byte-identical files.
    """
    level = float(white) if white is not None else float(img.pixels.max())
    if level <= 0.0:
        level = 1.0
    n_rows, n_cols = img.pixels.shape
    data = np.clip(np.rint(img.pixels / level * 255.0), 0, 255).astype(np.uint8)
    header = f"P5\n{n_cols} {n_rows}\n255\n".encode("ascii")
    Path(path).write_bytes(header + data.tobytes())


def render_outcome(
    outcome: Outcome,
    directory: str | Path,
    n: int = DEFAULT_PIXELS,
    extent: float = DEFAULT_EXTENT,
) -> list[Path]:
    """Write the four port images to ``directory`` as port_<mn>.pgm files.

    All four share one white level (the global peak) so brightness encodes
    the outcome probabilities.
    """
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    images = port_images(outcome, n, extent)
    white = max(img.pixels.max() for img in images)
    paths = []
    for img in images:
        path = directory / f"port_{img.port}.pgm"
        write_image(img, path, white=white)
        paths.append(path)
    return paths
