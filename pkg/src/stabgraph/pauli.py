"""Tensor products of single-qubit Pauli operators."""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

from .errors import LengthMismatch

LETTERS = "IXYZ"


@dataclass(frozen=True)
class PauliProduct:
    """Pauli product written as one letter per qubit, qubit 0 first.

    >>> PauliProduct("IZZZ").support
    (1, 2, 3)
    """

    letters: str

    def __post_init__(self):
        letters = "".join(self.letters).upper()
        bad = set(letters) - set(LETTERS)
        if bad:
            raise ValueError(f"invalid Pauli letters {sorted(bad)} in {self.letters!r}")
        if not letters:
            raise ValueError("a Pauli product needs at least one qubit")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def single(cls, n: int, j: int, letter: str) -> PauliProduct:
        out = ["I"] * n
        out[j] = letter
        return cls("".join(out))

    @classmethod
    def from_support(cls, n: int, nodes: Iterable[int], letter: str = "Z") -> PauliProduct:
        out = ["I"] * n
        for j in nodes:
            out[j] = letter
        return cls("".join(out))

    def __len__(self) -> int:
        return len(self.letters)

    def __getitem__(self, j: int) -> str:
        return self.letters[j]

    def __str__(self) -> str:
        return self.letters

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(j for j, c in enumerate(self.letters) if c != "I")

    @property
    def is_trivial(self) -> bool:
        return not self.support

    @property
    def is_z_type(self) -> bool:
        return set(self.letters) <= {"I", "Z"}

    def check_length(self, n: int) -> None:
        if len(self) != n:
            raise LengthMismatch(f"Pauli product has {len(self)} letters, expected {n}")
