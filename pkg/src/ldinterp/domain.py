"""Axis-parallel rectangles and their affine maps onto ``[-1, 1]^2``."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class Rect:
    x0: float
    x1: float
    y0: float
    y1: float

    def __post_init__(self):
        vals = (self.x0, self.x1, self.y0, self.y1)
        if not all(np.isfinite(vals)):
            raise DomainError(f"rectangle bounds must be finite, got {vals}")
        if not (self.x1 > self.x0 and self.y1 > self.y0):
            raise DomainError(f"rectangle must have positive side lengths, got {vals}")

    @classmethod
    def parse(cls, text: str) -> "Rect":
        """Parse ``"x0,x1,y0,y1"``."""
        parts = [p for p in text.split(",") if p.strip()]
        if len(parts) != 4:
            raise DomainError(f"expected x0,x1,y0,y1, got {text!r}")
        try:
            return cls(*(float(p) for p in parts))
        except ValueError:
            raise DomainError(f"rectangle bounds must be numbers, got {text!r}") from None

    @property
    def width(self) -> float:
        return self.x1 - self.x0

    @property
    def height(self) -> float:
        return self.y1 - self.y0

    def as_tuple(self) -> tuple:
        return (self.x0, self.x1, self.y0, self.y1)

    def contains(self, x, y, atol: float = 1e-12):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        sx = atol * max(1.0, abs(self.x0), abs(self.x1))
        sy = atol * max(1.0, abs(self.y0), abs(self.y1))
        return (
            (x >= self.x0 - sx) & (x <= self.x1 + sx) & (y >= self.y0 - sy) & (y <= self.y1 + sy)
        )


UNIT_SQUARE = Rect(-1.0, 1.0, -1.0, 1.0)


@dataclass(frozen=True)
class AffineMap:
    """Componentwise affine bijection ``rect <-> [-1, 1]^2``."""

    rect: Rect

    def to_unit(self, x, y):
        r = self.rect
        u = (2.0 * np.asarray(x, dtype=float) - (r.x0 + r.x1)) / r.width
        v = (2.0 * np.asarray(y, dtype=float) - (r.y0 + r.y1)) / r.height
        return u, v

    def from_unit(self, u, v):
        r = self.rect
        x = r.x0 + 0.5 * (np.asarray(u, dtype=float) + 1.0) * r.width
        y = r.y0 + 0.5 * (np.asarray(v, dtype=float) + 1.0) * r.height
        return x, y

    __call__ = to_unit
    inverse = from_unit


def affine_map(rect) -> AffineMap:
    """Affine map sending the corners of ``rect`` to those of ``[-1, 1]^2``."""
    if not isinstance(rect, Rect):
        rect = Rect(*rect)
    return AffineMap(rect)
