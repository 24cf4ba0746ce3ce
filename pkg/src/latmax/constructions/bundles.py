"""Shared result containers for the construction gallery."""

from __future__ import annotations

from dataclasses import dataclass, field

from latmax.systems import BiorthogonalSystem

# how an expected value was obtained
VALUE_TAGS = ("closed_form", "enumerated", "sampled", "fitted")


@dataclass(frozen=True)
class Expected:
    """A named numeric claim: the value and how it was derived."""

    value: float
    tag: str

    def __post_init__(self):
        if self.tag not in VALUE_TAGS:
            raise ValueError(f"unknown value tag {self.tag!r}")


@dataclass
class WitnessBundle:
    """Named witness elements plus the numeric claims made about them.

    Every value in `expected` must be recomputable from `vectors` (or the
    closed forms in `series`) by the hosting module; `reports` carries any
    constant lower bounds with their witnesses, `series` any (n, value)
    sweeps handed to growth fitting, and `extras` construction-specific data
    (index sets, matrices, scaling constants).
    """

    space: object
    vectors: dict = field(default_factory=dict)
    expected: dict = field(default_factory=dict)
    reports: dict = field(default_factory=dict)
    series: dict = field(default_factory=dict)
    extras: dict = field(default_factory=dict)

    def expect(self, name: str, value: float, tag: str):
        self.expected[name] = Expected(float(value), tag)

    def value(self, name: str) -> float:
        return self.expected[name].value


@dataclass
class FramePair:
    """A redundant vector/functional family: reconstruction without
    biorthogonality.  The wrapped system is built with the gram check off."""

    system: BiorthogonalSystem
    frame: bool = True
