"""
Exact arithmetic in GF(p^e).

Elements are galois FieldArray scalars. The integer value of an element is its
code: digit i in base p is the coefficient of X^i in the residue polynomial,
which is exactly how galois represents extension-field elements.
"""

import enum
import functools
import logging
import operator
from dataclasses import dataclass

import galois
import numpy as np

from .exceptions import (
    FieldDomainError,
    FieldMismatchError,
    InvalidModulusError,
    NotPrimeError,
)

logger = logging.getLogger(__name__)

MAX_ORDER = 2 ** 20


def find_modulus(p, e):
    """Smallest monic irreducible polynomial of degree e over GF(p).

    Coefficients are little-endian; 'smallest' compares the coefficient list read
    as a base-p integer, which is the order galois uses for ``method='min'``.
    """
    if not galois.is_prime(p):
        raise NotPrimeError(f'{p} is not prime')
    if e < 1:
        raise InvalidModulusError(f'extension degree must be >= 1, got {e}')
    if e == 1:
        return (0, 1)
    poly = galois.irreducible_poly(p, e, method='min')
    return tuple(int(c) for c in poly.coeffs[::-1])


@functools.lru_cache(maxsize=None)
def _galois_field(p, e, modulus):
    if e == 1:
        return galois.GF(p)
    poly = galois.Poly(list(reversed(modulus)), field=galois.GF(p))
    return galois.GF(p ** e, irreducible_poly=poly)


@dataclass(frozen=True)
class FieldSpec:
    p: int
    e: int = 1
    modulus: tuple = ()

    def __post_init__(self):
        if not galois.is_prime(self.p):
            raise NotPrimeError(f'{self.p} is not prime')
        if self.e < 1:
            raise InvalidModulusError(f'extension degree must be >= 1, got {self.e}')
        if self.p ** self.e > MAX_ORDER:
            raise InvalidModulusError(f'GF({self.p}^{self.e}) is larger than 2^20')
        if not self.modulus:
            object.__setattr__(self, 'modulus', find_modulus(self.p, self.e))
            return
        modulus = tuple(int(c) for c in self.modulus)
        if len(modulus) != self.e + 1 or modulus[-1] != 1:
            raise InvalidModulusError(f'modulus {list(modulus)} is not monic of degree {self.e}')
        if any(not 0 <= c < self.p for c in modulus):
            raise InvalidModulusError(f'modulus coefficients must lie in [0, {self.p})')
        if self.e == 1:
            # the degree-one modulus carries no information
            modulus = (0, 1)
        elif not galois.Poly(list(reversed(modulus)), field=galois.GF(self.p)).is_irreducible():
            raise InvalidModulusError(f'modulus {list(modulus)} is reducible over GF({self.p})')
        object.__setattr__(self, 'modulus', modulus)

    @classmethod
    def from_order(cls, q, modulus=()):
        if q < 2 or not galois.is_prime_power(q):
            raise NotPrimeError(f'{q} is not a prime power')
        primes, exponents = galois.factors(q)
        return cls(p=int(primes[0]), e=int(exponents[0]), modulus=tuple(modulus or ()))

    @property
    def q(self):
        return self.p ** self.e

    @property
    def GF(self):
        return _galois_field(self.p, self.e, self.modulus)

    @property
    def is_odd(self):
        return self.p != 2

    def element(self, code):
        code = int(code)
        if not 0 <= code < self.q:
            raise FieldMismatchError(f'code {code} is not an element of {self}')
        return self.GF(code)

    def array(self, codes):
        return self.GF(np.asarray(codes, dtype=np.int64))

    def to_dict(self):
        return {'p': self.p, 'e': self.e, 'modulus': list(self.modulus)}

    def __str__(self):
        return f'GF({self.q})'


class FieldOp(enum.Enum):
    ADD = 'add'
    SUB = 'sub'
    MUL = 'mul'
    DIV = 'div'
    NEG = 'neg'
    INV = 'inv'
    POW = 'pow'


_BINARY = {
    FieldOp.ADD: operator.add,
    FieldOp.SUB: operator.sub,
    FieldOp.MUL: operator.mul,
    FieldOp.DIV: operator.truediv,
}


def field_arith(a, b, op):
    """Apply ``op`` to field elements. ``b`` is ignored for neg/inv and is an int for pow."""
    op = FieldOp(op)
    if not isinstance(a, galois.FieldArray):
        raise FieldMismatchError('left operand is not a field element')
    if op is FieldOp.NEG:
        return -a
    if op is FieldOp.INV:
        if a == 0:
            raise FieldDomainError('zero has no inverse')
        return np.reciprocal(a)
    if op is FieldOp.POW:
        exponent = int(b)
        if exponent < 0 and a == 0:
            raise FieldDomainError('negative power of zero')
        return a ** exponent
    if type(a) is not type(b):
        raise FieldMismatchError(f'operands belong to different fields: {type(a).name} and {type(b).name}')
    if op is FieldOp.DIV and b == 0:
        raise FieldDomainError('division by zero')
    return _BINARY[op](a, b)


def enumerate_elements(spec):
    return spec.GF.Range(0, spec.q)


def codes(values):
    """Plain Python ints (nested lists for arrays) for a FieldArray."""
    if isinstance(values, galois.FieldArray):
        return values.view(np.ndarray).tolist()
    return int(values)


def product(values, spec):
    """Product of a 1-D FieldArray; the empty product is 1."""
    result = spec.GF(1)
    for value in values:
        result = result * value
    return result
