"""Exact arithmetic in the finite fields GF(p^f).

Elements are length-f coefficient vectors over GF(p) in the polynomial
basis 1, x, ..., x^(f-1), reduced modulo a fixed monic irreducible
polynomial of degree f.  The modulus is chosen deterministically: the
lexicographically least monic irreducible of degree f, comparing
coefficient vectors from the constant term upward.  Irreducibility is
certified at construction by trial division against every monic
polynomial of degree at most f/2.

All arithmetic is exact; there is no floating point anywhere in this
module.  `FieldSpec` and `FieldElement` are immutable after construction
and safe to share between threads.  Fields small enough to enumerate
(q <= 512) carry dense index-based operation tables used by the group
layer; larger fields fall back to direct polynomial arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from ._ints import is_prime
from .errors import MixedFieldError

_TABLE_LIMIT = 512


def _poly_trim(c: list[int]) -> tuple[int, ...]:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)


def _poly_divmod(a, b, p):
    """Quotient and remainder of coefficient-tuple polynomials over GF(p)."""
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    inv_lb = pow(lb, p - 2, p)
    q = [0] * max(len(a) - db, 0)
    while len(a) - 1 >= db and any(a):
        da = len(a) - 1
        if a[-1] == 0:
            a.pop()
            continue
        coef = a[-1] * inv_lb % p
        q[da - db] = coef
        for i in range(db + 1):
            a[da - db + i] = (a[da - db + i] - coef * b[i]) % p
        a.pop()
    return _poly_trim(q), _poly_trim(a)


class FieldSpec:
    """A concrete field GF(p^f) with a fixed irreducible modulus.

    Instances are interned: `make_field(p, f)` always returns the same
    object, so element operations may require identical specs.
    """

    def __init__(self, p: int, f: int, modulus: tuple[int, ...]):
        self.p = p
        self.f = f
        self.q = p**f
        self.modulus = modulus
        # reduction table: x^(f+k) mod modulus for k = 0..f-2, as length-f rows
        red: list[tuple[int, ...]] = []
        if f > 1:
            base = [(-m) % p for m in modulus[:-1]]  # x^f reduced
            cur = list(base)
            red.append(tuple(cur))
            for _ in range(f - 2):
                carry = cur[-1]
                cur = [0] + cur[:-1]
                if carry:
                    cur = [(cur[i] + carry * base[i]) % p for i in range(f)]
                red.append(tuple(cur))
        self._reduction = red
        self._elements: tuple[FieldElement, ...] | None = None
        self._sqrt: dict[tuple[int, ...], tuple[int, ...]] | None = None
        self._tables = None

    # -- representation ------------------------------------------------

    def __repr__(self):
        return f"GF({self.q})"

    def element(self, coeffs) -> FieldElement:
        if isinstance(coeffs, int):
            c = [0] * self.f
            c[0] = coeffs % self.p
            return FieldElement(self, tuple(c))
        c = tuple(x % self.p for x in coeffs)
        if len(c) != self.f:
            raise ValueError(f"expected {self.f} coefficients")
        return FieldElement(self, c)

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, (0,) * self.f)

    @property
    def one(self) -> FieldElement:
        return self.element(1)

    def index_of(self, coeffs: tuple[int, ...]) -> int:
        """Position of an element in the enumeration order (c0 most significant)."""
        idx = 0
        for c in coeffs:
            idx = idx * self.p + c
        return idx

    def from_index(self, idx: int) -> tuple[int, ...]:
        c = []
        for _ in range(self.f):
            c.append(idx % self.p)
            idx //= self.p
        return tuple(reversed(c))

    # -- tuple-level arithmetic -----------------------------------------

    def add_t(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub_t(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg_t(self, a):
        p = self.p
        return tuple((-x) % p for x in a)

    def mul_t(self, a, b):
        p, f = self.p, self.f
        if f == 1:
            return (a[0] * b[0] % p,)
        raw = [0] * (2 * f - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    raw[i + j] += ai * bj
        out = [c % p for c in raw[:f]]
        for k in range(f, 2 * f - 1):
            c = raw[k] % p
            if c:
                row = self._reduction[k - f]
                for i in range(f):
                    out[i] = (out[i] + c * row[i]) % p
        return tuple(out)

    def pow_t(self, a, n: int):
        result = (1,) + (0,) * (self.f - 1)
        base = a
        while n:
            if n & 1:
                result = self.mul_t(result, base)
            base = self.mul_t(base, base)
            n >>= 1
        return result

    def inv_t(self, a):
        if not any(a):
            raise ZeroDivisionError("division by zero field element")
        return self.pow_t(a, self.q - 2)

    def is_zero_t(self, a) -> bool:
        return not any(a)

    def sqrt_t(self, a):
        """Some square root of a, or None.  Deterministic (first in
        enumeration order whose square is a)."""
        if self._sqrt is None:
            table: dict[tuple[int, ...], tuple[int, ...]] = {}
            for e in self.enumerate():
                sq = self.mul_t(e.coeffs, e.coeffs)
                table.setdefault(sq, e.coeffs)
            self._sqrt = table
        return self._sqrt.get(a)

    def enumerate(self) -> tuple[FieldElement, ...]:
        if self._elements is None:
            self._elements = tuple(
                FieldElement(self, c) for c in product(range(self.p), repeat=self.f)
            )
        return self._elements

    def int_tables(self):
        """Dense index-based op tables (ADD, MUL, NEG, INV, SQRT) for q <= 512.

        INV[0] = -1 and SQRT[i] = -1 marks "undefined"/"non-square".
        """
        if self._tables is None:
            if self.q > _TABLE_LIMIT:
                raise ValueError(f"no dense tables for q = {self.q} > {_TABLE_LIMIT}")
            els = [e.coeffs for e in self.enumerate()]
            n = self.q
            idx = self.index_of
            add = [[0] * n for _ in range(n)]
            mul = [[0] * n for _ in range(n)]
            for i, a in enumerate(els):
                for j, b in enumerate(els):
                    add[i][j] = idx(self.add_t(a, b))
                    mul[i][j] = idx(self.mul_t(a, b))
            neg = [idx(self.neg_t(a)) for a in els]
            inv = [-1] + [idx(self.inv_t(a)) for a in els[1:]]
            sqrt = []
            for a in els:
                r = self.sqrt_t(a)
                sqrt.append(idx(r) if r is not None else -1)
            self._tables = (add, mul, neg, inv, sqrt)
        return self._tables


@dataclass(frozen=True)
class FieldElement:
    """An element of a FieldSpec; immutable, compares by coefficient vector."""

    spec: FieldSpec
    coeffs: tuple[int, ...]

    def __post_init__(self):
        assert len(self.coeffs) == self.spec.f

    @property
    def index(self) -> int:
        return self.spec.index_of(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _check(self, other) -> "FieldElement":
        if not isinstance(other, FieldElement):
            other = self.spec.element(other)
        if other.spec is not self.spec:
            raise MixedFieldError("operands belong to different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        return FieldElement(self.spec, self.spec.add_t(self.coeffs, other.coeffs))

    def __sub__(self, other):
        other = self._check(other)
        return FieldElement(self.spec, self.spec.sub_t(self.coeffs, other.coeffs))

    def __neg__(self):
        return FieldElement(self.spec, self.spec.neg_t(self.coeffs))

    def __mul__(self, other):
        other = self._check(other)
        return FieldElement(self.spec, self.spec.mul_t(self.coeffs, other.coeffs))

    def __truediv__(self, other):
        other = self._check(other)
        return FieldElement(
            self.spec, self.spec.mul_t(self.coeffs, self.spec.inv_t(other.coeffs))
        )

    def __pow__(self, n: int):
        if n < 0:
            return FieldElement(self.spec, self.spec.pow_t(self.spec.inv_t(self.coeffs), -n))
        return FieldElement(self.spec, self.spec.pow_t(self.coeffs, n))

    def __eq__(self, other):
        if isinstance(other, int):
            return self.coeffs == self.spec.element(other).coeffs
        return (
            isinstance(other, FieldElement)
            and other.spec is self.spec
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        return hash((id(self.spec), self.coeffs))

    def __repr__(self):
        return f"{self.spec!r}:{list(self.coeffs)}"


def _is_irreducible(poly: tuple[int, ...], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    deg = len(poly) - 1
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for tail in product(range(p), repeat=d):
            divisor = tuple(tail) + (1,)
            _, rem = _poly_divmod(poly, divisor, p)
            if not rem:
                return False
    return True


@lru_cache(maxsize=None)
def make_field(p: int, f: int) -> FieldSpec:
    """Build GF(p^f) with the lexicographically least irreducible modulus.

    Interned: repeated calls return the same FieldSpec object.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if f < 1:
        raise ValueError("extension degree must be >= 1")
    for tail in product(range(p), repeat=f):
        candidate = tuple(tail) + (1,)
        if _is_irreducible(candidate, p):
            return FieldSpec(p, f, candidate)
    raise RuntimeError("irreducibility search exhausted")  # unreachable


def arith(a: FieldElement, b: FieldElement, kind: str) -> FieldElement:
    """Field arithmetic dispatch: kind in {'add','sub','mul','div'}."""
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "div":
        return a / b
    raise ValueError(f"unknown arithmetic kind {kind!r}")


def is_square(a: FieldElement) -> bool:
    """Euler criterion: a = b^2 for some b.  Requires a != 0; in even
    characteristic every element is a square."""
    if a.is_zero():
        raise ValueError("squareness of zero is undefined here")
    spec = a.spec
    if spec.p == 2:
        return True
    return spec.pow_t(a.coeffs, (spec.q - 1) // 2) == spec.one.coeffs


def enumerate_field(spec: FieldSpec) -> list[FieldElement]:
    """All q elements in coefficient-lexicographic order (zero first)."""
    return list(spec.enumerate())
