"""Central differential operators as commutative polynomials.

For the two groups implemented here (tori and SU(2)) the center of the
algebra of left-invariant differential operators is a polynomial algebra
on canonical generators: the coordinate derivatives d_1..d_d on T^d, and
the Casimir element on SU(2).  A central operator is therefore stored as
a sparse complex polynomial in those generators, and everything we need
from it (scalar action on an irreducible, formal transpose) reduces to
polynomial algebra plus a per-generator lookup table.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable


def _canonical(coefficients, arity):
    """Drop exact zeros, coerce keys to int tuples, validate arity."""
    out = {}
    for expo, coeff in coefficients.items():
        expo = tuple(int(e) for e in expo)
        if len(expo) != arity:
            raise ValueError(
                f"exponent vector {expo} has length {len(expo)}, expected arity {arity}"
            )
        if any(e < 0 for e in expo):
            raise ValueError(f"negative exponent in {expo}")
        coeff = complex(coeff)
        if coeff != 0:
            out[expo] = out.get(expo, 0j) + coeff
    return {e: c for e, c in sorted(out.items()) if c != 0}


@dataclass(frozen=True)
class CentralElement:
    """Complex polynomial in the canonical central generators of a backend.

    ``coefficients`` maps exponent vectors (one entry per generator) to
    complex coefficients; zero coefficients are dropped and keys are kept
    lexicographically sorted, so ``==`` is structural equality.
    """

    arity: int
    coefficients: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.arity < 1:
            raise ValueError("arity must be >= 1")
        object.__setattr__(
            self, "coefficients", _canonical(self.coefficients, self.arity)
        )

    @classmethod
    def constant(cls, arity, value):
        return cls(arity, {(0,) * arity: complex(value)})

    @classmethod
    def generator(cls, arity, index):
        """The index-th generator as a degree-one monomial."""
        if not 0 <= index < arity:
            raise ValueError(f"generator index {index} out of range for arity {arity}")
        expo = tuple(1 if k == index else 0 for k in range(arity))
        return cls(arity, {expo: 1.0 + 0j})

    @property
    def is_zero(self):
        return not self.coefficients

    def degree(self):
        if not self.coefficients:
            return 0
        return max(sum(e) for e in self.coefficients)

    def _check_arity(self, other):
        if self.arity != other.arity:
            raise ValueError(f"arity mismatch: {self.arity} vs {other.arity}")

    def __add__(self, other):
        if not isinstance(other, CentralElement):
            other = CentralElement.constant(self.arity, other)
        self._check_arity(other)
        merged = dict(self.coefficients)
        for expo, coeff in other.coefficients.items():
            merged[expo] = merged.get(expo, 0j) + coeff
        return CentralElement(self.arity, merged)

    __radd__ = __add__

    def __neg__(self):
        return CentralElement(
            self.arity, {e: -c for e, c in self.coefficients.items()}
        )

    def __sub__(self, other):
        if not isinstance(other, CentralElement):
            other = CentralElement.constant(self.arity, other)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, CentralElement):
            return CentralElement(
                self.arity,
                {e: complex(other) * c for e, c in self.coefficients.items()},
            )
        self._check_arity(other)
        prod = {}
        for e1, c1 in self.coefficients.items():
            for e2, c2 in other.coefficients.items():
                expo = tuple(a + b for a, b in zip(e1, e2))
                prod[expo] = prod.get(expo, 0j) + c1 * c2
        return CentralElement(self.arity, prod)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        out = CentralElement.constant(self.arity, 1.0)
        for _ in range(int(n)):
            out = out * self
        return out

    def evaluate(self, values):
        """Evaluate the polynomial at one complex value per generator."""
        if len(values) != self.arity:
            raise ValueError(
                f"got {len(values)} generator values, expected {self.arity}"
            )
        total = 0j
        for expo, coeff in self.coefficients.items():
            term = coeff
            for v, e in zip(values, expo):
                if e:
                    term *= complex(v) ** e
            total += term
        return total

    def to_records(self):
        """Serialize as a list of {exponents, re, im} records (config format)."""
        return [
            {"exponents": list(e), "re": c.real, "im": c.imag}
            for e, c in self.coefficients.items()
        ]

    @classmethod
    def from_records(cls, arity, records):
        coeffs = {}
        for rec in records:
            expo = tuple(int(e) for e in rec["exponents"])
            coeffs[expo] = coeffs.get(expo, 0j) + complex(rec["re"], rec["im"])
        return cls(arity, coeffs)


@dataclass(frozen=True)
class GeneratorCharacterTable:
    """Per-generator scalar action on irreducibles plus transpose images.

    ``characters[k]`` maps a weight to the scalar by which generator k acts
    on the irreducible labelled by that weight.  ``dagger_images[k]`` is the
    image of generator k under the formal transpose (the anti-homomorphism
    fixed by X -> -X on the Lie algebra), expressed again as a polynomial
    in the same generators.
    """

    characters: tuple
    dagger_images: tuple

    def __post_init__(self):
        if len(self.characters) != len(self.dagger_images):
            raise ValueError("characters and dagger_images must align")
        for img in self.dagger_images:
            if img.arity != self.arity:
                raise ValueError("dagger image arity does not match table")

    @property
    def arity(self):
        return len(self.characters)


def infinitesimal_character(element, weight, table):
    """Scalar by which ``element`` acts on the irreducible of ``weight``.

    Generators are central, so the scalar action is plain polynomial
    substitution of the per-generator character values.
    """
    if element.arity != table.arity:
        raise ValueError(
            f"element arity {element.arity} does not match table arity {table.arity}"
        )
    values = [char(weight) for char in table.characters]
    return element.evaluate(values)


def dagger(element, table):
    """Formal transpose of a central operator.

    Applies the anti-homomorphism monomial-wise via the table's
    per-generator images; coefficients are carried complex-linearly
    (no conjugation).  On commuting generators the anti-homomorphism is
    just generator-wise substitution.
    """
    if element.arity != table.arity:
        raise ValueError(
            f"element arity {element.arity} does not match table arity {table.arity}"
        )
    out = CentralElement(element.arity)
    for expo, coeff in element.coefficients.items():
        term = CentralElement.constant(element.arity, coeff)
        for k, e in enumerate(expo):
            if e:
                term = term * table.dagger_images[k] ** e
        out = out + term
    return out


def character_of_contragredient(element, weight, model):
    """Scalar action on the dual of the irreducible labelled by ``weight``.

    Equals the infinitesimal character at the contragredient weight, and
    (a tested invariant) the character of ``dagger(element)`` at ``weight``.
    """
    dual = model.contragredient_weight(weight)
    return infinitesimal_character(element, dual, model.character_table)
