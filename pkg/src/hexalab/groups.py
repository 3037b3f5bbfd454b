"""Small finite groups with an explicit multiplication table."""

from __future__ import annotations

import itertools
from functools import cached_property

import numpy as np


class FiniteGroup:
    """A finite group given by its elements and a binary operation.

    Elements are hashable tuples. ``table[i, j]`` is the index of
    ``elements[i] * elements[j]``.
    """

    name = "group"

    def __init__(self, elements, op, identity):
        self.elements = list(elements)
        self._op = op
        self.identity = identity
        self._index = {e: i for i, e in enumerate(self.elements)}

    def __len__(self):
        return len(self.elements)

    def index(self, element) -> int:
        return self._index[self.normalize(element)]

    def normalize(self, element):
        return tuple(element)

    def mul(self, a, b):
        return self._op(a, b)

    @cached_property
    def table(self) -> np.ndarray:
        n = len(self.elements)
        out = np.empty((n, n), dtype=np.int64)
        for i, a in enumerate(self.elements):
            for j, b in enumerate(self.elements):
                out[i, j] = self._index[self._op(a, b)]
        return out

    @cached_property
    def inverse_index(self) -> np.ndarray:
        e = self._index[self.identity]
        inv = np.empty(len(self), dtype=np.int64)
        rows, cols = np.nonzero(self.table == e)
        inv[rows] = cols
        return inv

    def inv(self, a):
        return self.elements[self.inverse_index[self.index(a)]]

    def label(self, element) -> str:
        return ",".join(str(x) for x in element)

    @property
    def labels(self) -> list[str]:
        return [self.label(e) for e in self.elements]

    def parse(self, text: str):
        """Element from its label, e.g. ``"1,0"``."""
        return self.normalize(tuple(int(x) for x in text.split(",")))


class CyclicProduct(FiniteGroup):
    """``Z/n1 x ... x Z/nk`` under componentwise addition."""

    def __init__(self, moduli):
        self.moduli = tuple(int(m) for m in moduli)
        if not self.moduli or any(m < 1 for m in self.moduli):
            raise ValueError(f"invalid moduli {moduli!r}")
        elements = list(itertools.product(*(range(m) for m in self.moduli)))

        def add(a, b):
            return tuple((x + y) % m for x, y, m in zip(a, b, self.moduli))

        super().__init__(elements, add, tuple(0 for _ in self.moduli))
        self.name = " x ".join(f"Z/{m}" for m in self.moduli)

    def normalize(self, element):
        if isinstance(element, (int, np.integer)):
            element = (element,)
        return tuple(int(x) % m for x, m in zip(element, self.moduli))

    def __repr__(self):
        return f"CyclicProduct({self.moduli})"


class SymmetricGroup(FiniteGroup):
    """Permutations of ``range(n)``; ``(a * b)(i) = a(b(i))``."""

    MAX_DEGREE = 6

    def __init__(self, degree: int):
        if not 1 <= degree <= self.MAX_DEGREE:
            raise ValueError(f"symmetric groups are supported for 1 <= n <= {self.MAX_DEGREE}, got {degree}")
        self.degree = degree
        elements = list(itertools.permutations(range(degree)))

        def compose(a, b):
            return tuple(a[i] for i in b)

        super().__init__(elements, compose, tuple(range(degree)))
        self.name = f"S({degree})"

    def label(self, element) -> str:
        return "".join(str(x) for x in element)

    def parse(self, text: str):
        text = text.replace(",", "")
        return tuple(int(c) for c in text)

    def transpositions(self) -> list[tuple[int, ...]]:
        out = []
        for i, j in itertools.combinations(range(self.degree), 2):
            p = list(range(self.degree))
            p[i], p[j] = p[j], p[i]
            out.append(tuple(p))
        return out

    def __repr__(self):
        return f"SymmetricGroup({self.degree})"
