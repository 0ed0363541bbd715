"""Fixed-width subsets of a carrier 0..n-1 stored as an integer bitmask."""

from dataclasses import dataclass
from typing import Iterable, Iterator, List

import numpy as np


@dataclass(frozen=True)
class ElementSet:
    """
    Immutable subset of {0, ..., carrier_order - 1}.

    Bit i of `bits` is set iff i is a member. Equality and hashing compare the
    carrier order and the mask, so sets can be deduplicated in dicts.
    """

    carrier_order: int
    bits: int = 0

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.carrier_order:
            raise ValueError(f"bits {self.bits:b} exceed carrier of order {self.carrier_order}")

    @classmethod
    def from_iterable(cls, carrier_order: int, members: Iterable[int]) -> 'ElementSet':
        bits = 0
        for m in members:
            m = int(m)
            if not 0 <= m < carrier_order:
                raise ValueError(f"element {m} outside carrier of order {carrier_order}")
            bits |= 1 << m
        return cls(carrier_order, bits)

    @classmethod
    def from_mask(cls, mask: np.ndarray) -> 'ElementSet':
        return cls.from_iterable(len(mask), np.flatnonzero(mask))

    @classmethod
    def full(cls, carrier_order: int) -> 'ElementSet':
        return cls(carrier_order, (1 << carrier_order) - 1)

    @classmethod
    def empty(cls, carrier_order: int) -> 'ElementSet':
        return cls(carrier_order, 0)

    def __contains__(self, x) -> bool:
        x = int(x)
        return 0 <= x < self.carrier_order and bool(self.bits >> x & 1)

    def __iter__(self) -> Iterator[int]:
        bits = self.bits
        i = 0
        while bits:
            if bits & 1:
                yield i
            bits >>= 1
            i += 1

    def __len__(self) -> int:
        return bin(self.bits).count('1')

    def __repr__(self) -> str:
        return f"ElementSet({self.to_list()})"

    def _check(self, other: 'ElementSet'):
        if self.carrier_order != other.carrier_order:
            raise ValueError("element sets over different carriers")

    def __or__(self, other: 'ElementSet') -> 'ElementSet':
        self._check(other)
        return ElementSet(self.carrier_order, self.bits | other.bits)

    def __and__(self, other: 'ElementSet') -> 'ElementSet':
        self._check(other)
        return ElementSet(self.carrier_order, self.bits & other.bits)

    def __sub__(self, other: 'ElementSet') -> 'ElementSet':
        self._check(other)
        return ElementSet(self.carrier_order, self.bits & ~other.bits)

    def __le__(self, other: 'ElementSet') -> bool:
        self._check(other)
        return self.bits & ~other.bits == 0

    def __ge__(self, other: 'ElementSet') -> bool:
        return other <= self

    def complement(self) -> 'ElementSet':
        return ElementSet.full(self.carrier_order) - self

    def is_full(self) -> bool:
        return self.bits == (1 << self.carrier_order) - 1

    def to_list(self) -> List[int]:
        return list(self)

    def as_array(self) -> np.ndarray:
        return np.fromiter(self, dtype=np.int64)

    def as_mask(self) -> np.ndarray:
        mask = np.zeros(self.carrier_order, dtype=bool)
        mask[self.as_array()] = True
        return mask
