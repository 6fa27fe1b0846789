"""Identifiers for the hyperbolic knots handled by this package."""

from __future__ import annotations

import enum


class KnotId(enum.Enum):
    """The three knots supported throughout: 4_1, 5_2 and 6_1."""

    FOUR_ONE = "4_1"
    FIVE_TWO = "5_2"
    SIX_ONE = "6_1"

    @classmethod
    def parse(cls, name: str) -> "KnotId":
        for knot in cls:
            if knot.value == name:
                return knot
        options = ", ".join(knot.value for knot in cls)
        raise ValueError(f"unknown knot {name!r}; expected one of: {options}")

    def __str__(self) -> str:
        return self.value
