"""Group arithmetic in PSL(2,q) and PGL(2,q).

Elements are 2x2 matrices over GF(q) stored in a unique canonical
projective form, so equality of canonical forms is equality in the group:

* PGL: scale so the first nonzero entry in reading order (a,b,c,d) is 1.
* PSL: scale to determinant 1 (the determinant must be a square in the
  field, otherwise the matrix lies in PGL \\ PSL), then pick the
  lexicographically smaller of M and -M under the field enumeration order.

Two modes are available everywhere, mirroring the dual style of the case
analysis: closed-form class sizes and centralizer types for arbitrary q,
and full element enumeration (within a configurable budget) used to
verify every formula at small q.  Entries are stored as field-element
indices; fields small enough to enumerate carry dense op tables, so the
hot paths are pure integer table lookups.

All values are immutable after construction and safe to share across
scan workers.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ._ints import prime_power
from .errors import BudgetExceededError, MixedFieldError, PslMembershipError
from .gfq import FieldElement, FieldSpec, make_field

DEFAULT_BUDGET = 10_000_000
_CAYLEY_LIMIT = 2500


def resolve_budget(budget: int | None = None) -> int:
    """Explicit budget, else the QF_BUDGET environment override, else default."""
    if budget is not None:
        return budget
    env = os.environ.get("QF_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


class GroupSpec:
    """PSL(2,q) or PGL(2,q) over a fixed FieldSpec.  Interned via psl()/pgl()."""

    def __init__(self, field: FieldSpec, kind: str):
        if kind not in ("PSL", "PGL"):
            raise ValueError("kind must be 'PSL' or 'PGL'")
        q = field.q
        if q < 3:
            raise ValueError("q >= 3 required")
        if kind == "PSL" and q < 4:
            raise ValueError("PSL(2,q) supported for q >= 4")
        self.field = field
        self.kind = kind
        self.q = q
        g = 2 if q % 2 else 1
        self.order = q * (q * q - 1) // (g if kind == "PSL" else 1)
        # field ops on element indices
        if q <= 512:
            add, mul, neg, inv, sqrt = field.int_tables()
            self._fadd = lambda i, j: add[i][j]
            self._fmul = lambda i, j: mul[i][j]
            self._fneg = lambda i: neg[i]
            self._finv = lambda i: inv[i]
            self._fsqrt = lambda i: sqrt[i]
        else:
            dec, enc = field.from_index, field.index_of
            self._fadd = lambda i, j: enc(field.add_t(dec(i), dec(j)))
            self._fmul = lambda i, j: enc(field.mul_t(dec(i), dec(j)))
            self._fneg = lambda i: enc(field.neg_t(dec(i)))
            self._finv = lambda i: enc(field.inv_t(dec(i)))
            self._fsqrt = lambda i: (
                -1 if (r := field.sqrt_t(dec(i))) is None else enc(r)
            )
        self._one = field.index_of(field.one.coeffs)
        self.identity_t = (self._one, 0, 0, self._one)
        self._elements_t: list[tuple[int, int, int, int]] | None = None

    def __repr__(self):
        return f"{self.kind}(2,{self.q})"

    # -- canonical-form arithmetic on index 4-tuples ---------------------

    def det_t(self, t):
        a, b, c, d = t
        return self._fadd(self._fmul(a, d), self._fneg(self._fmul(b, c)))

    def canonicalize_t(self, t):
        a, b, c, d = t
        det = self.det_t(t)
        if det == 0:
            raise ValueError("singular matrix")
        if self.kind == "PGL":
            lead = a if a else b
            s = self._finv(lead)
            fm = self._fmul
            return (fm(a, s), fm(b, s), fm(c, s), fm(d, s))
        root = self._fsqrt(det)
        if root == -1:
            raise PslMembershipError(
                "determinant is not a square: element lies in PGL \\ PSL"
            )
        s = self._finv(root)
        fm = self._fmul
        m = (fm(a, s), fm(b, s), fm(c, s), fm(d, s))
        if self.q % 2 == 0:
            return m
        fn = self._fneg
        return min(m, (fn(m[0]), fn(m[1]), fn(m[2]), fn(m[3])))

    def mul_t(self, g, h):
        a, b, c, d = g
        e, f_, i, j = h
        fm, fa = self._fmul, self._fadd
        return self.canonicalize_t(
            (
                fa(fm(a, e), fm(b, i)),
                fa(fm(a, f_), fm(b, j)),
                fa(fm(c, e), fm(d, i)),
                fa(fm(c, f_), fm(d, j)),
            )
        )

    def inv_t(self, g):
        a, b, c, d = g
        fn = self._fneg
        return self.canonicalize_t((d, fn(b), fn(c), a))

    def order_t(self, g) -> int:
        n = 1
        cur = g
        while cur != self.identity_t:
            cur = self.mul_t(cur, g)
            n += 1
        return n

    def wrap(self, t) -> "GroupElement":
        return GroupElement(self, t)

    # -- enumeration ------------------------------------------------------

    def elements_t(self, budget: int | None = None) -> list[tuple[int, int, int, int]]:
        if self._elements_t is None:
            if self.order > resolve_budget(budget):
                raise BudgetExceededError(
                    f"|{self!r}| = {self.order} exceeds the enumeration budget: "
                    "formula-only mode required"
                )
            q = self.q
            out: set[tuple[int, int, int, int]] = set()
            canon = self.canonicalize_t
            if self.kind == "PSL":
                fm, fa, fi, fn = self._fmul, self._fadd, self._finv, self._fneg
                one = self._one
                for a in range(1, q):
                    ia = fi(a)
                    for b in range(q):
                        for c in range(q):
                            d = fm(fa(one, fm(b, c)), ia)
                            out.add(canon((a, b, c, d)))
                for b in range(1, q):
                    c = fn(fi(b))
                    for d in range(q):
                        out.add(canon((0, b, c, d)))
            else:
                for b in range(q):
                    for c in range(q):
                        for d in range(q):
                            t = (self._one, b, c, d)
                            if self.det_t(t) != 0:
                                out.add(canon(t))
                for c in range(1, q):
                    for d in range(q):
                        out.add(canon((0, self._one, c, d)))
            els = sorted(out)
            assert len(els) == self.order
            self._elements_t = els
        return self._elements_t


@dataclass(frozen=True)
class GroupElement:
    """Canonical projective representative of a 2x2 matrix, tagged PSL or PGL."""

    group: GroupSpec
    t: tuple[int, int, int, int]

    @property
    def matrix(self) -> tuple[FieldElement, FieldElement, FieldElement, FieldElement]:
        fld = self.group.field
        return tuple(FieldElement(fld, fld.from_index(i)) for i in self.t)

    def __eq__(self, other):
        return (
            isinstance(other, GroupElement)
            and other.group is self.group
            and other.t == self.t
        )

    def __lt__(self, other):
        return self.t < other.t

    def __hash__(self):
        return hash((id(self.group), self.t))

    def __repr__(self):
        a, b, c, d = (list(e.coeffs) for e in self.matrix)
        return f"{self.group!r}[{a},{b};{c},{d}]"


@lru_cache(maxsize=None)
def _group(field: FieldSpec, kind: str) -> GroupSpec:
    return GroupSpec(field, kind)


def psl(q: int) -> GroupSpec:
    pf = prime_power(q)
    if pf is None:
        raise ValueError(f"{q} is not a prime power")
    return _group(make_field(*pf), "PSL")


def pgl(q: int) -> GroupSpec:
    pf = prime_power(q)
    if pf is None:
        raise ValueError(f"{q} is not a prime power")
    return _group(make_field(*pf), "PGL")


def _as_t(matrix, spec: GroupSpec) -> tuple[int, int, int, int]:
    flat = []
    for row in matrix:
        if isinstance(row, FieldElement):
            flat.append(row)
        else:
            flat.extend(row)
    if len(flat) != 4:
        raise ValueError("expected a 2x2 matrix")
    out = []
    for e in flat:
        if isinstance(e, FieldElement):
            if e.spec is not spec.field:
                raise MixedFieldError("matrix entries from a different field")
            out.append(e.index)
        else:
            out.append(spec.field.element(e).index)
    return tuple(out)


def canonicalize(matrix, kind: str, field: FieldSpec | None = None) -> GroupElement:
    """Canonical projective representative of `matrix` in PSL or PGL.

    The field may be omitted when the entries are FieldElements."""
    if field is None:
        flat = [e for row in matrix for e in (row if not isinstance(row, FieldElement) else [row])]
        field = next(e.spec for e in flat if isinstance(e, FieldElement))
    spec = _group(field, kind)
    return spec.wrap(spec.canonicalize_t(_as_t(matrix, spec)))


def _same_group(g: GroupElement, h: GroupElement):
    if g.group is not h.group:
        raise MixedFieldError("elements of different groups")


def mul(g: GroupElement, h: GroupElement) -> GroupElement:
    _same_group(g, h)
    return g.group.wrap(g.group.mul_t(g.t, h.t))


def inv(g: GroupElement) -> GroupElement:
    return g.group.wrap(g.group.inv_t(g.t))


def element_order(g: GroupElement) -> int:
    return g.group.order_t(g.t)


def enumerate_group(spec: GroupSpec, budget: int | None = None) -> list[GroupElement]:
    """All canonical elements, each exactly once, in a fixed sorted order."""
    return [spec.wrap(t) for t in spec.elements_t(budget)]


def is_psl_member(g: GroupElement) -> bool:
    """For a PGL element over odd q: does it lie in the PSL subgroup?

    The square class of the determinant is invariant under projective
    scaling, so this is well-defined on canonical representatives.
    """
    spec = g.group
    if spec.q % 2 == 0:
        return True
    det = spec.det_t(g.t)
    return spec._fsqrt(det) != -1


# -- conjugacy data ---------------------------------------------------------


def involution_class(spec: GroupSpec) -> tuple[GroupElement, int]:
    """The single conjugacy class of involutions of PSL(2,q): (rep, size).

    Size is q^2-1 for even q and q(q+eps)/2 for odd q = eps (mod 4).
    """
    if spec.kind != "PSL":
        raise ValueError("involution class formulas apply to PSL(2,q)")
    q = spec.q
    fld = spec.field
    one = fld.one
    if q % 2 == 0:
        rep = canonicalize((fld.zero, one, one, fld.zero), "PSL", fld)
        size = q * q - 1
    else:
        rep = canonicalize((fld.zero, one, -one, fld.zero), "PSL", fld)
        eps = 1 if q % 4 == 1 else -1
        size = q * (q + eps) // 2
    return rep, size


def order3_class(spec: GroupSpec) -> tuple[GroupElement, int]:
    """The single conjugacy class of order-3 elements for characteristic > 5."""
    if spec.kind != "PSL":
        raise ValueError("order-3 class formulas apply to PSL(2,q)")
    p = spec.field.p
    if p <= 5:
        raise ValueError(
            "single-class property for order-3 elements requires characteristic > 5"
        )
    q = spec.q
    fld = spec.field
    rep = canonicalize((fld.zero, -fld.one, fld.one, -fld.one), "PSL", fld)
    size = q * (q - 1) if q % 3 == 2 else q * (q + 1)
    return rep, size


def centralizer(g: GroupElement, spec: GroupSpec | None = None, budget: int | None = None):
    """Centralizer {x : xg = gx} as a SubgroupHandle with a recognized type."""
    from . import subgroups  # deferred: subgroups builds on this module

    spec = spec or g.group
    els = spec.elements_t(budget)
    gt = g.t
    members = [t for t in els if spec.mul_t(t, gt) == spec.mul_t(gt, t)]
    return subgroups.handle_from_elements(spec, members)


# -- projective line --------------------------------------------------------


@dataclass(frozen=True)
class ProjectivePoint:
    """Point (x:y) of PG(1,q), normalized so the last nonzero coordinate is 1."""

    x: FieldElement
    y: FieldElement

    @staticmethod
    def of(x: FieldElement, y: FieldElement) -> "ProjectivePoint":
        if not y.is_zero():
            return ProjectivePoint(x / y, y.spec.one)
        if x.is_zero():
            raise ValueError("(0:0) is not a projective point")
        return ProjectivePoint(x.spec.one, y)

    def __repr__(self):
        return f"({list(self.x.coeffs)}:{list(self.y.coeffs)})"


def projective_line(field: FieldSpec) -> list[ProjectivePoint]:
    """The q+1 points of PG(1,q): (x:1) in field order, then (1:0)."""
    pts = [ProjectivePoint(x, field.one) for x in field.enumerate()]
    pts.append(ProjectivePoint(field.one, field.zero))
    return pts


def act_on_line(g: GroupElement, pt: ProjectivePoint) -> ProjectivePoint:
    """Natural right action of the group on PG(1,q): (x,y) -> (x,y)M."""
    a, b, c, d = g.matrix
    return ProjectivePoint.of(pt.x * a + pt.y * c, pt.x * b + pt.y * d)


# -- indexed enumeration (fast internal core) -------------------------------


class IndexedGroup:
    """Fully enumerated group with integer element ids.

    Carries the faithful permutation action on PG(1,q); products are
    matrix products resolved back to ids, and the dense Cayley table
    (when requested and affordable) is built in bulk from the permutation
    action.  Shared, read-only once constructed.
    """

    def __init__(self, spec: GroupSpec, budget: int | None = None):
        self.spec = spec
        els = spec.elements_t(budget)
        self.elements = els
        self.n = len(els)
        self.index = {t: i for i, t in enumerate(els)}
        self.e = self.index[spec.identity_t]
        q = spec.q
        # encode PG(1,q) points: (x,1) for x in field order gets id x, (1:0) gets id q
        fone = spec._one
        npts = q + 1
        perms = np.empty((self.n, npts), dtype=np.int32)
        fmul, fadd, finv = spec._fmul, spec._fadd, spec._finv
        for i, (a, b, c, d) in enumerate(els):
            row = perms[i]
            for xp in range(npts):
                if xp < q:
                    nx = fadd(fmul(xp, a), c)  # (x:1) -> (xa+c : xb+d)
                    ny = fadd(fmul(xp, b), d)
                else:
                    nx, ny = a, b  # (1:0) -> (a : b)
                row[xp] = q if ny == 0 else fmul(nx, finv(ny))
        self.perms = perms
        self._inv: list[int] | None = None
        self._orders: list[int] | None = None
        self._cayley: np.ndarray | None = None
        self._gen_pair: tuple[int, int] | None = None

    # -- basic ops --

    def mul_idx(self, i: int, j: int) -> int:
        return self.index[self.spec.mul_t(self.elements[i], self.elements[j])]

    def inv_idx(self, i: int) -> int:
        if self._inv is None:
            self._inv = [self.index[self.spec.inv_t(t)] for t in self.elements]
        return self._inv[i]

    def conj_idx(self, x: int, g: int) -> int:
        return self.mul_idx(self.mul_idx(self.inv_idx(g), x), g)

    def order_idx(self, i: int) -> int:
        return self.orders()[i]

    def orders(self) -> list[int]:
        if self._orders is None:
            orders = [0] * self.n
            orders[self.e] = 1
            for i in range(self.n):
                if orders[i]:
                    continue
                # walk the cyclic group once, assigning orders to all powers
                path = [i]
                cur = i
                while True:
                    cur = self.mul_idx(cur, i)
                    if cur == self.e:
                        break
                    path.append(cur)
                m = len(path) + 1
                orders[i] = m
                for k, idx in enumerate(path[1:], start=2):
                    if not orders[idx]:
                        orders[idx] = m // math.gcd(k, m)
            self._orders = orders
        return self._orders

    def cayley(self) -> np.ndarray:
        """Dense n x n product table cay[i, j] = index of element_i * element_j."""
        if self._cayley is None:
            if self.n > _CAYLEY_LIMIT:
                raise BudgetExceededError(f"cayley table too large for n = {self.n}")
            P = self.perms
            perm_index = {P[i].tobytes(): i for i in range(self.n)}
            cay = np.empty((self.n, self.n), dtype=np.int32)
            for i in range(self.n):
                block = P[:, P[i]]
                row = cay[i]
                for j in range(self.n):
                    row[j] = perm_index[block[j].tobytes()]
            self._cayley = cay
        return self._cayley

    # -- closures and classes --

    def closure_idx(self, gens, seed=None) -> tuple[int, ...]:
        """Subgroup generated by `gens` (BFS over right multiplication)."""
        known = bytearray(self.n)
        known[self.e] = 1
        frontier = [self.e]
        if seed:
            for s in seed:
                if not known[s]:
                    known[s] = 1
                    frontier.append(s)
        gens = list(gens)
        out = list(frontier)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.mul_idx(x, g)
                    if not known[y]:
                        known[y] = 1
                        nxt.append(y)
                        out.append(y)
            frontier = nxt
        out.sort()
        return tuple(out)

    def generating_pair(self) -> tuple[int, int]:
        """First (i, j) in element order with <i, j> the whole group."""
        if self._gen_pair is None:
            for i in range(self.n):
                if i == self.e:
                    continue
                for j in range(i + 1, self.n):
                    if len(self.closure_idx((i, j))) == self.n:
                        self._gen_pair = (i, j)
                        return self._gen_pair
            raise RuntimeError("no generating pair found")  # never for PSL/PGL
        return self._gen_pair

    def conjugacy_class(self, i: int) -> tuple[int, ...]:
        """Conjugation orbit of element i under the whole group."""
        g1, g2 = self.generating_pair()
        known = bytearray(self.n)
        known[i] = 1
        frontier = [i]
        out = [i]
        while frontier:
            nxt = []
            for x in frontier:
                for g in (g1, g2):
                    y = self.conj_idx(x, g)
                    if not known[y]:
                        known[y] = 1
                        nxt.append(y)
                        out.append(y)
            frontier = nxt
        out.sort()
        return tuple(out)

    def all_classes(self) -> list[tuple[int, ...]]:
        seen = bytearray(self.n)
        classes = []
        for i in range(self.n):
            if not seen[i]:
                cls = self.conjugacy_class(i)
                for x in cls:
                    seen[x] = 1
                classes.append(cls)
        return classes

    def coset_labels(self, sub_idxs) -> tuple[list[int], list[int]]:
        """Right cosets H\\G as labels: labels[g] = coset id, reps[id] = min element."""
        labels = [-1] * self.n
        reps: list[int] = []
        for g in range(self.n):
            if labels[g] >= 0:
                continue
            cid = len(reps)
            reps.append(g)
            for m in sub_idxs:
                labels[self.mul_idx(m, g)] = cid
        return labels, reps


_INDEXED: dict[tuple[int, str], IndexedGroup] = {}


def indexed_group(spec: GroupSpec, budget: int | None = None) -> IndexedGroup:
    key = (spec.q, spec.kind)
    ig = _INDEXED.get(key)
    if ig is None:
        ig = IndexedGroup(spec, budget)
        _INDEXED[key] = ig
    return ig
