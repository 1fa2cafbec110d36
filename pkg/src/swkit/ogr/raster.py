"""Raster pages and binarization."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..errors import DegenerateImage


@dataclass
class RasterPage:
    pixels: np.ndarray  # grayscale uint8, shape (height, width)
    dpi: int | None = None

    def __post_init__(self) -> None:
        self.pixels = np.asarray(self.pixels, dtype=np.uint8)
        if self.pixels.ndim != 2 or self.pixels.size == 0:
            raise ValueError("page must be a nonempty 2-D grayscale grid")

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @classmethod
    def load(cls, path: str | Path) -> "RasterPage":
        from PIL import Image

        with Image.open(path) as img:
            dpi = img.info.get("dpi")
            return cls(np.asarray(img.convert("L")), dpi=int(dpi[0]) if dpi else None)

    def save(self, path: str | Path) -> None:
        from PIL import Image

        Image.fromarray(self.pixels, mode="L").save(path)


def otsu_threshold(pixels: np.ndarray) -> int:
    """Threshold maximizing between-class variance; classes [0..t] and (t..255]."""
    hist = np.bincount(pixels.ravel(), minlength=256).astype(np.float64)
    total = hist.sum()
    omega = np.cumsum(hist)  # class-0 weight at each cut
    mu = np.cumsum(hist * np.arange(256))
    mu_total = mu[-1]
    valid = (omega > 0) & (omega < total)
    sigma_b = np.zeros(256)
    sigma_b[valid] = (mu_total * omega[valid] - total * mu[valid]) ** 2 / (
        omega[valid] * (total - omega[valid])
    )
    return int(sigma_b.argmax())


def binarize(
    page: RasterPage,
    method: str = "otsu",
    threshold: int | None = None,
    polarity: str = "auto",
) -> np.ndarray:
    """Boolean ink mask (True = foreground).

    With no fixed ``threshold`` the cut is chosen by between-class variance
    maximization. ``polarity`` says which side of the cut is ink: "dark",
    "light", or "auto" (the minority side; documents are mostly background).
    A pure-white page is blank (zero foreground); any other uniform page has
    no meaningful cut and raises DegenerateImage unless a fixed threshold
    is supplied.
    """
    if polarity not in ("dark", "light", "auto"):
        raise ValueError(f"bad polarity {polarity!r}")
    if method not in ("otsu", "fixed"):
        raise ValueError(f"bad method {method!r}")
    px = page.pixels
    if threshold is None and method == "fixed":
        raise ValueError("fixed method requires a threshold")
    if threshold is None:
        lo, hi = int(px.min()), int(px.max())
        if lo == hi:
            if lo == 255:
                return np.zeros_like(px, dtype=bool)
            raise DegenerateImage(f"uniform intensity {lo} with no threshold override")
        threshold = otsu_threshold(px)
    dark = px <= threshold
    if polarity == "dark":
        return dark
    if polarity == "light":
        return ~dark
    n_dark = int(dark.sum())
    return dark if n_dark * 2 <= dark.size else ~dark
