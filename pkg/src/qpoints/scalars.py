"""Exact arithmetic for the multiplicative parameter group of a skew
polynomial algebra, and the matrix of commutation parameters built from it.

Every parameter q_ij lives in a finitely generated abelian group written
multiplicatively: a free part on named generators plus one distinguished
root of unity of order m ("torsion").  All equality questions the package
ever asks reduce to identities in this group, so there is no floating point
anywhere and "generic" simply means "uses a generator nobody else uses".
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .triples import Triple, check_triple

#: Reserved name for the distinguished root of unity in the string syntax.
TORSION_NAME = "w"

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class ScalarError(ValueError):
    """Invalid scalar construction or parse."""


class TableMismatchError(ScalarError):
    """Operands belong to incompatible generator tables."""


@dataclass(frozen=True)
class GroupScalar:
    """An element g1^e1 * ... * gk^ek * w^t of the parameter group.

    exponents holds only nonzero entries, sorted by generator name; torsion
    is reduced mod the modulus.  Equality is structural equality of this
    canonical form.
    """

    exponents: tuple[tuple[str, int], ...]
    torsion: int
    modulus: int

    def __post_init__(self) -> None:
        if self.modulus < 1:
            raise ScalarError("torsion modulus must be >= 1")
        object.__setattr__(self, "torsion", self.torsion % self.modulus)
        cleaned = tuple(sorted((g, e) for g, e in self.exponents if e != 0))
        names = [g for g, _ in cleaned]
        if len(set(names)) != len(names):
            raise ScalarError("duplicate generator in exponent list")
        for g in names:
            if not _NAME_RE.match(g) or g == TORSION_NAME:
                raise ScalarError(f"bad generator name {g!r}")
        object.__setattr__(self, "exponents", cleaned)

    @classmethod
    def one(cls, modulus: int = 2) -> "GroupScalar":
        return cls((), 0, modulus)

    @classmethod
    def generator(cls, name: str, modulus: int = 2, power: int = 1) -> "GroupScalar":
        return cls(((name, power),), 0, modulus)

    @classmethod
    def root_of_unity(cls, modulus: int = 2, power: int = 1) -> "GroupScalar":
        return cls((), power, modulus)

    @classmethod
    def from_dict(
        cls, exponents: Mapping[str, int], torsion: int = 0, modulus: int = 2
    ) -> "GroupScalar":
        return cls(tuple(exponents.items()), torsion, modulus)

    def exponent_map(self) -> dict[str, int]:
        return dict(self.exponents)

    def generators(self) -> tuple[str, ...]:
        return tuple(g for g, _ in self.exponents)

    @property
    def is_one(self) -> bool:
        return not self.exponents and self.torsion == 0

    def __mul__(self, other: "GroupScalar") -> "GroupScalar":
        if not isinstance(other, GroupScalar):
            return NotImplemented
        if other.modulus != self.modulus:
            raise TableMismatchError(
                f"torsion moduli differ: {self.modulus} vs {other.modulus}"
            )
        exps = dict(self.exponents)
        for g, e in other.exponents:
            exps[g] = exps.get(g, 0) + e
        return GroupScalar(tuple(exps.items()), self.torsion + other.torsion, self.modulus)

    def inverse(self) -> "GroupScalar":
        return GroupScalar(
            tuple((g, -e) for g, e in self.exponents), -self.torsion, self.modulus
        )

    def __pow__(self, k: int) -> "GroupScalar":
        return GroupScalar(
            tuple((g, e * k) for g, e in self.exponents), self.torsion * k, self.modulus
        )

    def __truediv__(self, other: "GroupScalar") -> "GroupScalar":
        return self * other.inverse()

    def substitute(self, images: Mapping[str, "GroupScalar"]) -> "GroupScalar":
        """Apply the group homomorphism sending each named generator to its
        image; generators absent from the mapping are kept."""
        out = GroupScalar((), self.torsion, self.modulus)
        for g, e in self.exponents:
            img = images.get(g)
            out = out * (img ** e if img is not None else GroupScalar(((g, e),), 0, self.modulus))
        return out

    def evaluate(self, assignment: Mapping[str, Fraction | int]) -> Fraction:
        """Exact rational value under a full assignment; needs modulus <= 2
        (the root of unity maps to -1)."""
        if self.modulus > 2:
            raise ScalarError("torsion of order > 2 has no rational value")
        value = Fraction(-1) ** self.torsion
        for g, e in self.exponents:
            if g not in assignment:
                raise ScalarError(f"no value assigned to generator {g!r}")
            base = Fraction(assignment[g])
            if base == 0:
                raise ScalarError("generators must map to nonzero rationals")
            value *= base ** e
        return value

    def __str__(self) -> str:
        if self.is_one:
            return "1"
        parts = [g if e == 1 else f"{g}^{e}" for g, e in self.exponents]
        if self.torsion:
            parts.append(
                TORSION_NAME if self.torsion == 1 else f"{TORSION_NAME}^{self.torsion}"
            )
        return "*".join(parts)


def parse_scalar(text: str, modulus: int = 2) -> GroupScalar:
    """Parse the compact string form, e.g. "a*b^-1*w" or "1"."""
    text = text.strip()
    if text in ("1", ""):
        return GroupScalar.one(modulus)
    exps: dict[str, int] = {}
    torsion = 0
    for token in text.split("*"):
        token = token.strip()
        name, _, power = token.partition("^")
        name = name.strip()
        try:
            e = int(power) if power else 1
        except ValueError as exc:
            raise ScalarError(f"bad exponent in token {token!r}") from exc
        if name == TORSION_NAME:
            torsion += e
        elif _NAME_RE.match(name):
            exps[name] = exps.get(name, 0) + e
        else:
            raise ScalarError(f"bad generator name {name!r} in {text!r}")
    return GroupScalar.from_dict(exps, torsion, modulus)


@dataclass(frozen=True)
class GeneratorTable:
    """The named free generators and torsion order a matrix draws from."""

    names: tuple[str, ...] = ()
    torsion_modulus: int = 2

    def __post_init__(self) -> None:
        if self.torsion_modulus < 1:
            raise ScalarError("torsion modulus must be >= 1")
        names = tuple(self.names)
        if len(set(names)) != len(names):
            raise ScalarError("generator names must be unique")
        for g in names:
            if not _NAME_RE.match(g) or g == TORSION_NAME:
                raise ScalarError(f"bad generator name {g!r}")
        object.__setattr__(self, "names", names)

    def one(self) -> GroupScalar:
        return GroupScalar.one(self.torsion_modulus)

    def gen(self, name: str, power: int = 1) -> GroupScalar:
        if name not in self.names:
            raise ScalarError(f"unknown generator {name!r}")
        return GroupScalar.generator(name, self.torsion_modulus, power)

    def root(self, power: int = 1) -> GroupScalar:
        return GroupScalar.root_of_unity(self.torsion_modulus, power)

    def admits(self, s: GroupScalar) -> bool:
        return s.modulus == self.torsion_modulus and all(
            g in self.names for g, _ in s.exponents
        )


class NameSupply:
    """Deterministic source of fresh generator names (g1, g2, ...)."""

    def __init__(self, prefix: str = "g") -> None:
        self.prefix = prefix
        self._count = 0

    def fresh(self) -> str:
        self._count += 1
        return f"{self.prefix}{self._count}"

    def fresh_scalar(self, modulus: int = 2) -> GroupScalar:
        return GroupScalar.generator(self.fresh(), modulus)


@dataclass(frozen=True)
class QMatrix:
    """Multiplicatively antisymmetric (n+1) x (n+1) matrix of group scalars.

    Only the upper triangle is stored; the diagonal is 1 and the lower
    triangle the inverses, by construction.
    """

    n: int
    upper: dict[tuple[int, int], GroupScalar]
    table: GeneratorTable = field(default=None)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ScalarError("dimension index must be >= 0")
        expected = {(i, j) for i in range(self.n + 1) for j in range(i + 1, self.n + 1)}
        if set(self.upper) != expected:
            raise ScalarError("upper triangle must hold exactly the pairs i < j")
        if self.table is None:
            names = sorted({g for s in self.upper.values() for g in s.generators()})
            moduli = {s.modulus for s in self.upper.values()} or {2}
            if len(moduli) != 1:
                raise TableMismatchError("entries use different torsion moduli")
            object.__setattr__(self, "table", GeneratorTable(tuple(names), moduli.pop()))
        for s in self.upper.values():
            if not self.table.admits(s):
                raise TableMismatchError("matrix entry not admitted by generator table")

    @classmethod
    def from_upper(
        cls,
        n: int,
        upper: Mapping[tuple[int, int], GroupScalar],
        table: GeneratorTable | None = None,
    ) -> "QMatrix":
        return cls(n, dict(upper), table)

    @classmethod
    def ones(cls, n: int, modulus: int = 2) -> "QMatrix":
        one = GroupScalar.one(modulus)
        upper = {
            (i, j): one for i in range(n + 1) for j in range(i + 1, n + 1)
        }
        return cls(n, upper, GeneratorTable((), modulus))

    def entry(self, i: int, j: int) -> GroupScalar:
        """q_ij, completing the stored triangle by q_ii = 1, q_ji = q_ij^-1."""
        if not (0 <= i <= self.n and 0 <= j <= self.n):
            raise IndexError(f"index out of range for dimension {self.n}")
        if i == j:
            return self.table.one()
        if i < j:
            return self.upper[(i, j)]
        return self.upper[(j, i)].inverse()

    def b(self, t: Triple) -> GroupScalar:
        """The obstruction scalar q_ij * q_jk * q_ik^-1 of a triple.

        It equals 1 exactly when the principal 3x3 block at (i, j, k) has
        rank one, i.e. when the corresponding coordinate plane lies in the
        point variety.
        """
        i, j, k = check_triple(t, self.n)
        return self.entry(i, j) * self.entry(j, k) * self.entry(i, k).inverse()

    def substitute(self, images: Mapping[str, GroupScalar]) -> "QMatrix":
        upper = {p: s.substitute(images) for p, s in self.upper.items()}
        return QMatrix(self.n, upper)

    def conjugate(self, perm: tuple[int, ...]) -> "QMatrix":
        """Relabeled matrix R with R[i][j] = Q[perm(i)][perm(j)]."""
        upper = {
            (i, j): self.entry(perm[i], perm[j])
            for i in range(self.n + 1)
            for j in range(i + 1, self.n + 1)
        }
        return QMatrix(self.n, upper, self.table)

    def instantiate(
        self, assignment: Mapping[str, Fraction | int]
    ) -> list[list[Fraction]]:
        """Exact rational matrix under a full generator assignment.

        Requires torsion modulus <= 2; the root of unity becomes -1.  The
        result retains multiplicative antisymmetry and is the numeric oracle
        for every symbolic computation in this package.
        """
        if self.table.torsion_modulus > 2:
            raise ScalarError("cannot instantiate: torsion modulus exceeds 2")
        missing = [g for g in self.table.names if g not in assignment]
        if missing:
            raise ScalarError(f"missing assignment for generators {missing}")
        size = self.n + 1
        return [
            [self.entry(i, j).evaluate(assignment) for j in range(size)]
            for i in range(size)
        ]

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "torsion_modulus": self.table.torsion_modulus,
            "generators": list(self.table.names),
            "upper": {
                f"{i},{j}": {
                    "torsion": s.torsion,
                    "exponents": {g: e for g, e in s.exponents},
                }
                for (i, j), s in sorted(self.upper.items())
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True)

    def __str__(self) -> str:
        rows = []
        for i in range(self.n + 1):
            rows.append("  ".join(str(self.entry(i, j)) for j in range(self.n + 1)))
        return "\n".join(rows)


class MatrixFormatError(ValueError):
    """Matrix JSON is structurally malformed."""


def qmatrix_from_json_dict(data: Mapping) -> QMatrix:
    try:
        n = int(data["n"])
        modulus = int(data.get("torsion_modulus", 2))
        names = tuple(str(g) for g in data.get("generators", ()))
        raw_upper = data["upper"]
    except (KeyError, TypeError, ValueError) as exc:
        raise MatrixFormatError(f"bad matrix JSON: {exc}") from exc
    upper: dict[tuple[int, int], GroupScalar] = {}
    for key, value in raw_upper.items():
        try:
            i_str, j_str = str(key).split(",")
            pair = (int(i_str), int(j_str))
        except ValueError as exc:
            raise MatrixFormatError(f"bad pair key {key!r}") from exc
        if isinstance(value, str):
            upper[pair] = parse_scalar(value, modulus)
        else:
            try:
                upper[pair] = GroupScalar.from_dict(
                    {str(g): int(e) for g, e in value.get("exponents", {}).items()},
                    int(value.get("torsion", 0)),
                    modulus,
                )
            except (AttributeError, TypeError, ValueError) as exc:
                raise MatrixFormatError(f"bad scalar for pair {key!r}: {exc}") from exc
    table = GeneratorTable(names, modulus) if names else None
    return QMatrix(n, upper, table)


def qmatrix_from_json(text: str) -> QMatrix:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixFormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise MatrixFormatError("matrix JSON must be an object")
    return qmatrix_from_json_dict(data)


def q_entry(Q: QMatrix, i: int, j: int) -> GroupScalar:
    return Q.entry(i, j)


def b_scalar(Q: QMatrix, t: Triple) -> GroupScalar:
    return Q.b(t)


def rational_b(matrix: list[list[Fraction]], t: Triple) -> Fraction:
    """b-value of an instantiated rational matrix (numeric oracle)."""
    i, j, k = t
    return matrix[i][j] * matrix[j][k] / matrix[i][k]


def scalar_power_product(
    scalars: Iterable[GroupScalar], powers: Iterable[int], modulus: int
) -> GroupScalar:
    out = GroupScalar.one(modulus)
    for s, p in zip(scalars, powers):
        if p:
            out = out * s ** p
    return out
