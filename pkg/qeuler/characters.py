"""Dirichlet characters of odd modulus with exact root-of-unity values."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

from sympy import discrete_log, factorint, primitive_root
from sympy.ntheory.modular import crt

from .errors import DomainError, UnsupportedCharacterError
from .qcore import RootOfUnity, Scalar, ScalarField


@dataclass(frozen=True)
class UnitGroup:
    """(ℤ/f)^× as a product of cyclic factors, one per prime power dividing f.

    ``generators[i]`` reduces to a primitive root modulo the i-th prime power
    and to 1 modulo the others; ``logs[a]`` is the exponent vector of the unit
    ``a`` on those generators (None for non-units).
    """

    modulus: int
    components: Tuple[int, ...]
    generators: Tuple[int, ...]
    orders: Tuple[int, ...]
    logs: Tuple[Optional[Tuple[int, ...]], ...]

    @property
    def exponent(self) -> int:
        return math.lcm(*self.orders) if self.orders else 1


def _check_modulus(f: int) -> None:
    if not isinstance(f, int) or f < 1:
        raise DomainError(f"character modulus must be a positive integer, got {f!r}")
    if f % 2 == 0:
        raise DomainError(f"character modulus must be odd, got {f}")


@lru_cache(maxsize=None)
def unit_group(f: int) -> UnitGroup:
    _check_modulus(f)
    factors = sorted(factorint(f).items())
    components = tuple(p**e for p, e in factors)
    roots = tuple(int(primitive_root(c)) for c in components)
    orders = tuple(c - c // p for c, (p, _) in zip(components, factors))
    generators: List[int] = []
    for i, root in enumerate(roots):
        residues = [root if j == i else 1 for j in range(len(components))]
        generators.append(int(crt(list(components), residues)[0]))
    logs: List[Optional[Tuple[int, ...]]] = []
    for a in range(f):
        if math.gcd(a, f) != 1:
            logs.append(None)
            continue
        logs.append(tuple(int(discrete_log(c, a % c, r)) for c, r in zip(components, roots)))
    return UnitGroup(f, components, tuple(generators), orders, tuple(logs))


@dataclass(frozen=True)
class DirichletCharacter:
    """A character mod ``modulus`` given by ``exponents`` on the unit-group generators.

    χ(g_i) = exp(2πi·k_i/φ(p_i^e_i)); the full value table is built once and
    every evaluation is a lookup.
    """

    modulus: int
    exponents: Tuple[int, ...]
    values: Tuple[Optional[RootOfUnity], ...]

    @classmethod
    def from_exponents(cls, f: int, exponents: Sequence[int]) -> "DirichletCharacter":
        group = unit_group(f)
        exponents = tuple(int(k) for k in exponents)
        if len(exponents) != len(group.orders):
            raise DomainError(
                f"a character mod {f} needs {len(group.orders)} exponents, got {len(exponents)}"
            )
        for k, order in zip(exponents, group.orders):
            if not 0 <= k < order:
                raise DomainError(f"exponent {k} out of range for a cyclic factor of order {order}")
        scale = group.exponent
        values: List[Optional[RootOfUnity]] = []
        for logs in group.logs:
            if logs is None:
                values.append(None)
                continue
            index = sum(k * l * (scale // order) for k, l, order in zip(exponents, logs, group.orders))
            values.append(RootOfUnity(scale, index % scale))
        return cls(f, exponents, tuple(values))

    @classmethod
    def trivial(cls, f: int = 1) -> "DirichletCharacter":
        return cls.from_exponents(f, [0] * len(unit_group(f).orders))

    @property
    def generators(self) -> Tuple[int, ...]:
        return unit_group(self.modulus).generators

    @property
    def order(self) -> int:
        """Order of χ in the character group."""
        result = 1
        for value in self.values:
            if value is not None:
                result = math.lcm(result, value.exact_order)
        return result

    @property
    def value_order(self) -> int:
        """An order m with every value in μ_m (the exponent of the unit group)."""
        return unit_group(self.modulus).exponent

    @property
    def is_trivial(self) -> bool:
        return self.order == 1

    @property
    def is_real(self) -> bool:
        return self.order <= 2

    def value(self, n: int) -> Optional[RootOfUnity]:
        return self.values[n % self.modulus]

    def real_values(self) -> Tuple[int, ...]:
        """The table as integers in {0, 1, -1}."""
        if not self.is_real:
            raise UnsupportedCharacterError(
                f"character {self.serialize()} has order {self.order}; only values 0, 1, -1 are supported here"
            )
        return tuple(0 if v is None else (1 if v.is_one() else -1) for v in self.values)

    def complex_values(self) -> Tuple[complex, ...]:
        return tuple(0j if v is None else v.to_complex() for v in self.values)

    def serialize(self) -> str:
        return f"{self.modulus};" + ",".join(str(k) for k in self.exponents)

    @classmethod
    def parse(cls, text: str) -> "DirichletCharacter":
        try:
            modulus_text, exponent_text = text.split(";")
            f = int(modulus_text)
            exponents = [int(k) for k in exponent_text.split(",")] if exponent_text.strip() else []
        except ValueError as exc:
            raise DomainError(f"character must be written 'f;k1,k2,...', got {text!r}") from exc
        return cls.from_exponents(f, exponents)

    def __str__(self) -> str:
        return self.serialize()


def enumerate_characters(f: int) -> List[DirichletCharacter]:
    """All φ(f) characters mod f, trivial first."""
    group = unit_group(f)
    return [
        DirichletCharacter.from_exponents(f, exponents)
        for exponents in itertools.product(*(range(order) for order in group.orders))
    ]


def evaluate(chi: DirichletCharacter, n: int, field: ScalarField) -> Scalar:
    value = chi.value(n)
    if value is None:
        return field.zero()
    if field.kind == "padic" and value.exact_order > 2:
        raise UnsupportedCharacterError(
            f"value of order {value.exact_order} of {chi} has no embedding in the p-adic ring"
        )
    return field.root_of_unity(value)
