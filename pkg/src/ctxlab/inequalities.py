"""Linear inequalities over edge variables, canonical sense >=.

Rows are normalized by a positive scaling that makes all coefficients and
the bound coprime integers; the sense is never flipped (a >= row scaled by a
negative factor would describe a different halfspace).  Labels carry row
provenance and are ignored by equality keys.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

from .distributions import as_fraction


@dataclass(frozen=True)
class LinearInequality:
    coeffs: dict[str, Fraction]
    rhs: Fraction
    label: str = ""

    def __post_init__(self):
        fixed = {e: as_fraction(c) for e, c in self.coeffs.items() if as_fraction(c) != 0}
        object.__setattr__(self, "coeffs", fixed)
        object.__setattr__(self, "rhs", as_fraction(self.rhs))

    def normalized(self) -> LinearInequality:
        entries = [*self.coeffs.values(), self.rhs]
        denom = lcm(*(e.denominator for e in entries)) if entries else 1
        nums = [int(e * denom) for e in entries]
        g = gcd(*nums) if any(nums) else 1
        scale = Fraction(denom, g or 1)
        if scale == 1:
            return self
        return LinearInequality(
            {e: c * scale for e, c in self.coeffs.items()},
            self.rhs * scale,
            self.label,
        )

    def key(self):
        """Label-independent identity of the normalized row."""
        norm = self.normalized()
        return (tuple(sorted(norm.coeffs.items())), norm.rhs)

    def evaluate(self, values) -> Fraction:
        return sum((c * values[e] for e, c in self.coeffs.items()), Fraction(0))

    def satisfied_by(self, values) -> bool:
        return self.evaluate(values) >= self.rhs

    def scaled(self, factor: Fraction) -> LinearInequality:
        factor = as_fraction(factor)
        if factor <= 0:
            raise ValueError("only positive scalings preserve the sense")
        return LinearInequality(
            {e: c * factor for e, c in self.coeffs.items()}, self.rhs * factor, self.label
        )

    def plus(self, other: LinearInequality, label: str = "") -> LinearInequality:
        coeffs = dict(self.coeffs)
        for e, c in other.coeffs.items():
            coeffs[e] = coeffs.get(e, Fraction(0)) + c
        return LinearInequality(coeffs, self.rhs + other.rhs, label)

    def substitute(self, edge: str, value: Fraction) -> LinearInequality:
        """Fix one variable to a constant, folding it into the bound."""
        if edge not in self.coeffs:
            return self
        coeffs = {e: c for e, c in self.coeffs.items() if e != edge}
        return LinearInequality(
            coeffs, self.rhs - self.coeffs[edge] * as_fraction(value), self.label
        )

    def rename(self, mapping: dict[str, str]) -> LinearInequality:
        """Relabel variables; coefficients landing on the same name are summed."""
        coeffs: dict[str, Fraction] = {}
        for e, c in self.coeffs.items():
            target = mapping.get(e, e)
            coeffs[target] = coeffs.get(target, Fraction(0)) + c
        return LinearInequality(coeffs, self.rhs, self.label)

    def __str__(self):
        terms = " ".join(
            f"{'+' if c > 0 else '-'} {abs(c)}*{e}" for e, c in sorted(self.coeffs.items())
        )
        return f"{terms or '0'} >= {self.rhs}"


def dedupe(rows) -> list[LinearInequality]:
    """Normalize, drop duplicates, and sort rows by their canonical key."""
    seen: dict = {}
    for row in rows:
        norm = row.normalized()
        seen.setdefault(norm.key(), norm)
    return [seen[k] for k in sorted(seen)]
