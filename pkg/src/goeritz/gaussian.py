"""Exact Gaussian integers a + b*i."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union


@dataclass(frozen=True, order=True)
class GaussianInt:
    re: int = 0
    im: int = 0

    @staticmethod
    def coerce(x: Union["GaussianInt", int]) -> "GaussianInt":
        if isinstance(x, GaussianInt):
            return x
        if isinstance(x, bool) or not isinstance(x, int):
            raise TypeError(f"cannot coerce {x!r} to GaussianInt")
        return GaussianInt(x, 0)

    def __add__(self, other):
        o = GaussianInt.coerce(other)
        return GaussianInt(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianInt(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussianInt.coerce(other))

    def __rsub__(self, other):
        return GaussianInt.coerce(other) - self

    def __mul__(self, other):
        o = GaussianInt.coerce(other)
        return GaussianInt(self.re * o.re - self.im * o.im,
                           self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return self.im == 0 and self.re == other
        if isinstance(other, GaussianInt):
            return self.re == other.re and self.im == other.im
        return NotImplemented

    def __hash__(self):
        # equal to the int hash when real, so {1, GaussianInt(1)} has one element
        return hash(self.re) if self.im == 0 else hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re or self.im)

    def conjugate(self) -> "GaussianInt":
        return GaussianInt(self.re, -self.im)

    def is_unit(self) -> bool:
        return abs(self.re) + abs(self.im) == 1 and self.re * self.im == 0

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return {1: "i", -1: "-i"}.get(self.im, f"{self.im}i")
        sign = "+" if self.im > 0 else "-"
        mag = abs(self.im)
        return f"{self.re}{sign}{'' if mag == 1 else mag}i"

    def __repr__(self) -> str:
        return f"GaussianInt({self.re}, {self.im})"

    @classmethod
    def parse(cls, text: str) -> "GaussianInt":
        """Parse ``"3"``, ``"-i"``, ``"2+3i"``, ``"-1-i"``."""
        s = text.strip().replace(" ", "")
        if not s.endswith("i"):
            return cls(int(s), 0)
        body = s[:-1]
        # split at the last sign that is not the leading one
        cut = max(body.rfind("+"), body.rfind("-"))
        if cut <= 0:
            re_part, im_part = "0", body
        else:
            re_part, im_part = body[:cut], body[cut:]
        if im_part in ("", "+"):
            im = 1
        elif im_part == "-":
            im = -1
        else:
            im = int(im_part)
        return cls(int(re_part), im)


I = GaussianInt(0, 1)


def entry_key(x) -> tuple[int, int]:
    """Total order on int / GaussianInt entries, used by canonical forms."""
    if isinstance(x, GaussianInt):
        return (x.re, x.im)
    return (int(x), 0)


def fmt_entry(x) -> str:
    return str(x)
