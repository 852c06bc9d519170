"""Exact rationals extended with a single infinity.

Finite values are fractions.Fraction; the symbol INF absorbs addition and
dominates every finite value.  Comparisons and sums in valuation checks go
through the helpers below so that infinity arithmetic stays in one place.
"""

from __future__ import annotations

from fractions import Fraction


class _Infinity:
    """Unique +infinity sentinel: INF + x = INF and INF >= x for all x."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("dressian-infinity")

    def __repr__(self):
        return "INF"


INF = _Infinity()


def is_finite(x) -> bool:
    return x is not INF


def ext_sum(a, b):
    """a + b with infinity absorption."""
    if a is INF or b is INF:
        return INF
    return a + b


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or an integer string into an exact Fraction."""
    return Fraction(text.strip())


def format_rational(q: Fraction) -> str:
    return str(q)
