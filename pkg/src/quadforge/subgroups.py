"""Maximal-subgroup constructors and recognition for PSL(2,q).

Covers the nine maximal-subgroup families (Borel, subfield PGL/PSL,
A4/S4/A5, and the two dihedral normalizers of tori), the ten sporadic
(G, M, M0) triples where M0 is not maximal in the socle, and the
classical catalog of subgroups of PGL(2,q) for odd q used as a verified
reference at small q.

Constructions are explicit element sets: subfield cases enumerate
matrices with subfield entries, A4/S4/A5 come from a deterministic
generator-pair search (first witness in canonical element order), and
the dihedral cases take a maximal-order torus element together with an
inverting involution.  Subgroup equality is set equality of canonical
element sets.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field as dc_field

import numpy as np

from ._ints import prime_power
from .errors import BudgetExceededError
from .psl2 import GroupElement, GroupSpec, IndexedGroup, indexed_group, resolve_budget


# ---------------------------------------------------------------------------
# descriptors and handles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SubgroupDescriptor:
    """Structural claim about a subgroup: which family, with what index."""

    case_id: int | str | None
    claimed_type: str
    claimed_index: int
    q0: int | None = None
    r: int | None = None


@dataclass
class SubgroupHandle:
    """Explicit subgroup: descriptor plus canonical element set."""

    group: GroupSpec
    descriptor: SubgroupDescriptor
    elements: tuple[GroupElement, ...]
    generators: tuple[GroupElement, ...] | None = None
    _t_set: frozenset | None = dc_field(default=None, repr=False)

    def __len__(self):
        return len(self.elements)

    @property
    def t_set(self) -> frozenset:
        if self._t_set is None:
            self._t_set = frozenset(g.t for g in self.elements)
        return self._t_set

    def __contains__(self, g: GroupElement) -> bool:
        return g.t in self.t_set

    def idx_set(self, ig: IndexedGroup) -> tuple[int, ...]:
        return tuple(sorted(ig.index[g.t] for g in self.elements))

    def ensure_generators(self) -> tuple[GroupElement, ...]:
        """A small generating set (2 elements where possible), found
        deterministically; verified by closure."""
        if self.generators is None:
            spec = self.group
            ts = sorted(self.t_set)
            target = len(ts)
            found = None
            for i, x in enumerate(ts):
                for y in ts[i:]:
                    if len(_closure_t(spec, (x, y))) == target:
                        found = (spec.wrap(x), spec.wrap(y))
                        break
                if found:
                    break
            if found is None:  # not 2-generated; fall back to everything
                found = self.elements
            self.generators = found
        return self.generators

    def __repr__(self):
        return (
            f"<{self.descriptor.claimed_type} of order {len(self)} "
            f"in {self.group!r}, index {self.descriptor.claimed_index}>"
        )


def handle_from_elements(spec, ts, descriptor=None, generators=None) -> SubgroupHandle:
    ts = sorted(set(ts))
    if descriptor is None:
        if spec.order % len(ts):
            raise ValueError("element count does not divide the group order")
        handle = SubgroupHandle(spec, None, tuple(spec.wrap(t) for t in ts), generators)
        handle.descriptor = SubgroupDescriptor(
            None, recognize(handle), spec.order // len(ts)
        )
        return handle
    return SubgroupHandle(spec, descriptor, tuple(spec.wrap(t) for t in ts), generators)


def whole_group_handle(spec: GroupSpec, budget=None) -> SubgroupHandle:
    desc = SubgroupDescriptor(None, repr(spec), 1)
    return SubgroupHandle(spec, desc, tuple(spec.wrap(t) for t in spec.elements_t(budget)))


# ---------------------------------------------------------------------------
# the sporadic (G, M, M0) triples
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SporadicTriple:
    group: str
    m0_type: str
    m_type: str
    index: int | None  # None for the parametric final row
    condition: str = ""

    def index_value(self, p: int | None = None) -> int:
        if self.index is not None:
            return self.index
        if p is None:
            raise ValueError("the A4 < S4 row needs a prime p")
        if p % 40 not in (11, 19, 21, 29):
            raise ValueError("condition p = +-11, +-19 (mod 40) violated")
        return p * (p * p - 1) // 24


_SPORADIC = (
    SporadicTriple("PGL(2,7)", "D_6", "D_12", 28),
    SporadicTriple("PGL(2,7)", "D_8", "D_16", 21),
    SporadicTriple("PGL(2,9)", "D_10", "D_20", 36),
    SporadicTriple("PGL(2,9)", "D_8", "D_16", 45),
    SporadicTriple("M_10", "D_10", "C_5:C_4", 36),
    SporadicTriple("M_10", "D_8", "C_8:C_2", 45),
    SporadicTriple("PGammaL(2,9)", "D_10", "C_10:C_4", 36),
    SporadicTriple("PGammaL(2,9)", "D_8", "C_8.Aut(C_8)", 45),
    SporadicTriple("PGL(2,11)", "D_10", "D_20", 66),
    SporadicTriple(
        "PGL(2,p)", "A_4", "S_4", None, condition="q = p = +-11, +-19 (mod 40)"
    ),
)


def sporadic_table() -> tuple[SporadicTriple, ...]:
    """The ten (G, M0, M) triples with M maximal in G but M0 not maximal
    in the socle, with the index of M in G."""
    return _SPORADIC


# ---------------------------------------------------------------------------
# the nine maximal families: conditions and index formulas
# ---------------------------------------------------------------------------


def case_condition(case_id: int, q: int, q0: int | None = None, r: int | None = None) -> bool:
    """Does (case_id, q) satisfy the admissibility condition of the family?

    Cases 2, 6, 7 are parametrized by (q0, r); passing them checks the
    specific decomposition, otherwise any valid decomposition counts.
    """
    pf = prime_power(q)
    if pf is None or q < 4:
        return False
    p, f = pf
    if case_id == 1:
        return True
    if case_id == 2:
        if q % 2 == 0 or f % 2:
            return False
        want = p ** (f // 2)
        return q0 in (None, want)
    if case_id == 3:
        return (f == 1 and q % 10 in (1, 9)) or (f == 2 and p % 10 in (3, 7))
    if case_id == 4:
        return f == 1 and q % 8 in (3, 5) and q % 10 not in (1, 9)
    if case_id == 5:
        return f == 1 and q % 8 in (1, 7)
    if case_id == 6:
        if q % 2 == 0:
            return False
        opts = [rr for rr in _prime_divisors(f) if rr % 2]
        if r is not None:
            return r in opts and (q0 is None or q0 == p ** (f // r))
        return bool(opts)
    if case_id == 7:
        if p != 2:
            return False
        opts = [rr for rr in _prime_divisors(f) if f // rr >= 2]
        if r is not None:
            return r in opts and (q0 is None or q0 == 2 ** (f // r))
        return bool(opts)
    if case_id == 8:
        return q not in (5, 7, 9, 11)
    if case_id == 9:
        return q not in (7, 9)
    raise ValueError(f"unknown case {case_id}")


def _prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def case_params(case_id: int, q: int) -> list[dict]:
    """All admissible parameter choices for (case_id, q): [] if the case
    does not apply, [{}] for unparametrized cases, else one {'q0','r'} per
    valid decomposition q = q0^r."""
    if not case_condition(case_id, q):
        return []
    p, f = prime_power(q)
    if case_id == 2:
        return [{"q0": p ** (f // 2), "r": 2}]
    if case_id == 6:
        return [
            {"q0": p ** (f // r), "r": r} for r in _prime_divisors(f) if r % 2
        ]
    if case_id == 7:
        return [
            {"q0": 2 ** (f // r), "r": r}
            for r in _prime_divisors(f)
            if f // r >= 2
        ]
    return [{}]


def index_formula(case_id: int, q: int, q0: int | None = None, r: int | None = None) -> int:
    """Exact index in PSL(2,q) of the case's maximal subgroup."""
    if not case_condition(case_id, q, q0=q0, r=r):
        raise ValueError(f"case {case_id} condition violated at q = {q}")
    if case_id == 1:
        return q + 1
    if case_id == 2:
        q0 = q0 or prime_power(q)[0] ** (prime_power(q)[1] // 2)
        return q0 * (q0 * q0 + 1) // 2
    if case_id == 3:
        return q * (q * q - 1) // 120
    if case_id == 4:
        return q * (q * q - 1) // 24
    if case_id == 5:
        return q * (q * q - 1) // 48
    if case_id in (6, 7):
        if q0 is None or r is None:
            params = case_params(case_id, q)
            if len(params) != 1:
                raise ValueError("ambiguous (q0, r); pass them explicitly")
            q0, r = params[0]["q0"], params[0]["r"]
        return q0 ** (r - 1) * (q0 ** (2 * r) - 1) // (q0 * q0 - 1)
    if case_id == 8:
        return q * (q + 1) // 2
    if case_id == 9:
        return q * (q - 1) // 2
    raise ValueError(f"unknown case {case_id}")


def case_type_name(case_id: int, q: int, q0: int | None = None) -> str:
    p, f = prime_power(q)
    g = 2 if q % 2 else 1
    if case_id == 1:
        return f"C_{p}^{f}:C_{(q - 1) // g}"
    if case_id == 2:
        return f"PGL(2,{q0})"
    if case_id == 3:
        return "A_5"
    if case_id == 4:
        return "A_4"
    if case_id == 5:
        return "S_4"
    if case_id == 6:
        return f"PSL(2,{q0})"
    if case_id == 7:
        return f"PGL(2,{q0})"
    if case_id == 8:
        return f"D_{2 * (q - 1) // g}"
    if case_id == 9:
        return f"D_{2 * (q + 1) // g}"
    raise ValueError(f"unknown case {case_id}")


def make_descriptor(case_id: int, q: int, q0: int | None = None, r: int | None = None) -> SubgroupDescriptor:
    if case_id in (2, 6, 7) and q0 is None:
        params = case_params(case_id, q)
        if len(params) != 1:
            raise ValueError("ambiguous (q0, r); pass them explicitly")
        q0, r = params[0]["q0"], params[0]["r"]
    return SubgroupDescriptor(
        case_id,
        case_type_name(case_id, q, q0),
        index_formula(case_id, q, q0=q0, r=r),
        q0=q0,
        r=r,
    )


# ---------------------------------------------------------------------------
# explicit constructions
# ---------------------------------------------------------------------------


def subfield_indices(fld, q0: int) -> list[int]:
    """Element indices of the subfield of order q0 (fixed points of x -> x^q0)."""
    out = []
    for e in fld.enumerate():
        if fld.pow_t(e.coeffs, q0) == e.coeffs:
            out.append(fld.index_of(e.coeffs))
    assert len(out) == q0
    return out


def _closure_t(spec: GroupSpec, gen_ts, budget: int | None = None) -> set:
    known = {spec.identity_t}
    frontier = [spec.identity_t]
    gen_ts = list(gen_ts)
    cap = budget or spec.order
    while frontier:
        nxt = []
        for x in frontier:
            for g in gen_ts:
                y = spec.mul_t(x, g)
                if y not in known:
                    known.add(y)
                    nxt.append(y)
        if len(known) > cap:
            raise BudgetExceededError("closure exceeded the element budget")
        frontier = nxt
    return known


def closure(generators, spec: GroupSpec | None = None, budget: int | None = None):
    """Smallest subgroup containing `generators` (breadth-first closure)."""
    gens = list(generators)
    if spec is None:
        spec = gens[0].group
    ts = _closure_t(spec, [g.t for g in gens], budget)
    return tuple(spec.wrap(t) for t in sorted(ts))


def _build_borel(spec: GroupSpec) -> set:
    q = spec.q
    out = set()
    fi = spec._finv
    for a in range(1, q):
        ia = fi(a)
        for b in range(q):
            out.add(spec.canonicalize_t((a, b, 0, ia)))
    return out


def _build_subfield(spec: GroupSpec, q0: int, want_pgl: bool) -> set:
    """All subfield-entry matrices: full PGL(2,q0) (any nonzero determinant,
    legitimate inside PSL(2,q0^2) since subfield scalars are squares there)
    or just the PSL(2,q0) image (determinant 1)."""
    sub = subfield_indices(spec.field, q0)
    out = set()
    if want_pgl:
        for a in sub:
            for b in sub:
                for c in sub:
                    for d in sub:
                        t = (a, b, c, d)
                        if spec.det_t(t) != 0:
                            out.add(spec.canonicalize_t(t))
    else:
        one = spec._one
        fm, fa, fi, fn = spec._fmul, spec._fadd, spec._finv, spec._fneg
        nz = [s for s in sub if s != 0]
        for a in nz:
            ia = fi(a)
            for b in sub:
                for c in sub:
                    d = fm(fa(one, fm(b, c)), ia)
                    out.add(spec.canonicalize_t((a, b, c, d)))
        for b in nz:
            c = fn(fi(b))
            for d in sub:
                out.add(spec.canonicalize_t((0, b, c, d)))
    return out


_TRIANGLE_TARGET = {3: (5, 60), 4: (3, 12), 5: (4, 24)}  # case -> (|xy|, |subgroup|)


def _build_triangle(spec: GroupSpec, case_id: int):
    """A4 / S4 / A5 by deterministic generator search: the first pair
    (x, y) in canonical order with |x| = 2, |y| = 3, |xy| as required and
    closure of the right size."""
    ig = indexed_group(spec)
    orders = ig.orders()
    prod_order, size = _TRIANGLE_TARGET[case_id]
    invs = [i for i in range(ig.n) if orders[i] == 2]
    threes = [i for i in range(ig.n) if orders[i] == 3]
    for x in invs:
        for y in threes:
            if orders[ig.mul_idx(x, y)] != prod_order:
                continue
            ts = _closure_t(spec, (ig.elements[x], ig.elements[y]))
            if len(ts) == size:
                return ts, (ig.elements[x], ig.elements[y])
    raise RuntimeError("generator search exhausted")  # the subgroup exists


def _build_dihedral(spec: GroupSpec, case_id: int):
    """Normalizer of a torus: cyclic part by element-order search, inverting
    involution by search."""
    q = spec.q
    g = 2 if q % 2 else 1
    m = (q - 1) // g if case_id == 8 else (q + 1) // g
    ig = indexed_group(spec)
    orders = ig.orders()
    x = next(i for i in range(ig.n) if orders[i] == m)
    cyc = [ig.e]
    cur = x
    while cur != ig.e:
        cyc.append(cur)
        cur = ig.mul_idx(cur, x)
    xin = ig.inv_idx(x)
    cset = set(cyc)
    for y in range(ig.n):
        if orders[y] != 2:
            continue
        if y in cset and m != 2:
            continue
        if ig.mul_idx(ig.mul_idx(ig.inv_idx(y), x), y) == xin:
            members = set(cyc)
            for cidx in cyc:
                members.add(ig.mul_idx(cidx, y))
            return (
                {ig.elements[i] for i in members},
                (ig.elements[x], ig.elements[y]),
            )
    raise RuntimeError("no inverting involution found")  # exists by structure


def build_subgroup(descriptor: SubgroupDescriptor, spec: GroupSpec, budget: int | None = None) -> SubgroupHandle:
    """Explicit subgroup of PSL(2,q) for a Table-family descriptor."""
    if spec.kind != "PSL":
        raise ValueError("family constructors target the socle PSL(2,q)")
    case = descriptor.case_id
    q = spec.q
    if not case_condition(case, q, q0=descriptor.q0, r=descriptor.r):
        raise ValueError(f"case {case} condition violated at q = {q}")
    if spec.order > resolve_budget(budget):
        raise BudgetExceededError("group too large to enumerate")
    gens = None
    if case == 1:
        ts = _build_borel(spec)
    elif case == 2:
        ts = _build_subfield(spec, descriptor.q0, want_pgl=True)
    elif case in (3, 4, 5):
        ts, gens = _build_triangle(spec, case)
    elif case in (6, 7):
        ts = _build_subfield(spec, descriptor.q0, want_pgl=False)
    elif case in (8, 9):
        ts, gens = _build_dihedral(spec, case)
    else:
        raise ValueError(f"unknown case {case}")
    handle = SubgroupHandle(
        spec,
        descriptor,
        tuple(spec.wrap(t) for t in sorted(ts)),
        tuple(spec.wrap(t) for t in gens) if gens else None,
    )
    if len(handle) * descriptor.claimed_index != spec.order:
        raise RuntimeError(
            f"constructed order {len(handle)} inconsistent with claimed index"
        )
    return handle


def build_case(case_id: int, spec: GroupSpec, q0: int | None = None, r: int | None = None, budget=None) -> SubgroupHandle:
    return build_subgroup(make_descriptor(case_id, spec.q, q0=q0, r=r), spec, budget)


# ---------------------------------------------------------------------------
# set-level operations
# ---------------------------------------------------------------------------


def conjugate(handle: SubgroupHandle, g: GroupElement) -> SubgroupHandle:
    spec = handle.group
    gi = spec.inv_t(g.t)
    ts = sorted(spec.mul_t(spec.mul_t(gi, h), g.t) for h in handle.t_set)
    gens = None
    if handle.generators:
        gens = tuple(
            spec.wrap(spec.mul_t(spec.mul_t(gi, x.t), g.t)) for x in handle.generators
        )
    return SubgroupHandle(
        spec, handle.descriptor, tuple(spec.wrap(t) for t in ts), gens
    )


def normalizer(handle: SubgroupHandle, spec: GroupSpec | None = None, budget=None) -> SubgroupHandle:
    """Set-level normalizer {g : H^g = H}."""
    spec = spec or handle.group
    gens = handle.ensure_generators()
    hset = handle.t_set
    members = []
    for t in spec.elements_t(budget):
        ti = spec.inv_t(t)
        if all(spec.mul_t(spec.mul_t(ti, x.t), t) in hset for x in gens):
            members.append(t)
    return handle_from_elements(spec, members)


def subgroup_classes(type_name: str, spec: GroupSpec, budget=None) -> list[list[SubgroupHandle]]:
    """All subgroups of the named small type, partitioned by conjugacy.

    Copies are found by closing generator pairs with the type's signature
    element orders over the whole group; this finds every copy because
    each of these groups contains such a generating pair.
    """
    registry = {
        "A4": (12, 2, 3),
        "PSL(2,3)": (12, 2, 3),
        "S4": (24, 2, 4),
        "PGL(2,3)": (24, 2, 4),
        "A5": (60, 2, 5),
        "PSL(2,4)": (60, 2, 5),
        "PSL(2,5)": (60, 2, 5),
    }
    if type_name not in registry:
        raise ValueError(f"no search signature for type {type_name!r}")
    size, o1, o2 = registry[type_name]
    ig = indexed_group(spec, budget)
    orders = ig.orders()
    xs = [i for i in range(ig.n) if orders[i] == o1]
    ys = [i for i in range(ig.n) if orders[i] == o2]
    found: dict[frozenset, tuple[int, ...]] = {}
    for x in xs:
        for y in ys:
            idxs = ig.closure_idx((x, y))
            if len(idxs) == size:
                found.setdefault(frozenset(idxs), idxs)
    # partition by conjugacy via orbit closure under group generators
    g1, g2 = ig.generating_pair()
    unassigned = dict(found)
    classes: list[list[SubgroupHandle]] = []
    while unassigned:
        start = min(unassigned.values())
        orbit = {frozenset(start)}
        frontier = [start]
        while frontier:
            nxt = []
            for sub in frontier:
                for g in (g1, g2):
                    conj = frozenset(ig.conj_idx(x, g) for x in sub)
                    if conj not in orbit:
                        orbit.add(conj)
                        nxt.append(tuple(sorted(conj)))
            frontier = nxt
        cls = []
        for fs in orbit:
            unassigned.pop(fs, None)
            cls.append(
                handle_from_elements(spec, [ig.elements[i] for i in fs])
            )
        cls.sort(key=lambda h: h.elements)
        classes.append(cls)
    classes.sort(key=lambda c: c[0].elements)
    return classes


def small_index_subgroups(spec: GroupSpec, bound: int, budget=None) -> list[SubgroupHandle]:
    """Every subgroup of index <= bound, by exhaustive closure of all
    generator sets of size <= 2.

    Pairs are deduplicated through the cyclic subgroups of their members:
    <x, y> depends only on (<x>, <y>), so one closure per pair of distinct
    cyclic subgroups is exhaustive.  Closures run over the dense Cayley
    table with a vectorized breadth-first sweep.
    """
    ig = indexed_group(spec, budget)
    n = ig.n
    cay = ig.cayley()
    cayT = np.ascontiguousarray(cay.T)
    # cyclic subgroup of every element
    cyc_key: dict[tuple[int, ...], int] = {}
    cyc_members: list[np.ndarray] = []
    cyc_gen: list[int] = []
    cyc_of = [0] * n
    for i in range(n):
        powers = [ig.e]
        cur = i
        while cur != ig.e:
            powers.append(cur)
            cur = int(cay[cur, i])
        key = tuple(sorted(powers))
        cid = cyc_key.get(key)
        if cid is None:
            cid = len(cyc_members)
            cyc_key[key] = cid
            cyc_members.append(np.array(key, dtype=np.int64))
            cyc_gen.append(i)
        cyc_of[i] = cid
    k = len(cyc_members)
    found: dict[bytes, np.ndarray] = {}

    def record(member_mask):
        size = int(member_mask.sum())
        if n % size == 0 and n // size <= bound:
            key = member_mask.tobytes()
            if key not in found:
                found[key] = np.flatnonzero(member_mask)

    for ci in range(k):
        mask = np.zeros(n, dtype=bool)
        mask[cyc_members[ci]] = True
        record(mask)
    for ci in range(k):
        arr_i = cyc_members[ci]
        gi = cyc_gen[ci]
        col_i = cayT[gi]
        for cj in range(ci + 1, k):
            member = np.zeros(n, dtype=bool)
            seed = np.union1d(arr_i, cyc_members[cj])
            member[seed] = True
            frontier = seed
            col_j = cayT[cyc_gen[cj]]
            while frontier.size:
                nxt = np.concatenate((col_i[frontier], col_j[frontier]))
                nxt = nxt[~member[nxt]]
                if nxt.size == 0:
                    break
                nxt = np.unique(nxt)
                member[nxt] = True
                frontier = nxt
            record(member)
    handles = [
        handle_from_elements(spec, [ig.elements[i] for i in idxs])
        for idxs in found.values()
    ]
    handles.sort(key=lambda h: (-len(h), h.elements))
    return handles


# ---------------------------------------------------------------------------
# structure recognition
# ---------------------------------------------------------------------------


def two_generated_abelian_subgroups(spec: GroupSpec, budget=None) -> list[SubgroupHandle]:
    """Every subgroup generated by a commuting pair (hence every abelian
    subgroup whose rank is at most 2, which covers all abelian subgroups
    of PSL(2,q) for f <= 2)."""
    ig = indexed_group(spec, budget)
    cay = ig.cayley()
    sym = cay == cay.T
    found: dict[frozenset, tuple[int, ...]] = {}
    n = ig.n
    for i in range(n):
        row = sym[i]
        for j in range(i, n):
            if row[j]:
                idxs = ig.closure_idx((i, j))
                found.setdefault(frozenset(idxs), idxs)
    handles = [
        handle_from_elements(spec, [ig.elements[k] for k in idxs])
        for idxs in found.values()
    ]
    handles.sort(key=lambda h: (len(h), h.elements))
    return handles


def order_profile(handle: SubgroupHandle) -> Counter:
    spec = handle.group
    return Counter(spec.order_t(t) for t in handle.t_set)


def is_abelian(handle: SubgroupHandle) -> bool:
    spec = handle.group
    ts = sorted(handle.t_set)
    return all(
        spec.mul_t(a, b) == spec.mul_t(b, a)
        for i, a in enumerate(ts)
        for b in ts[i + 1 :]
    )


def is_cyclic(handle: SubgroupHandle) -> bool:
    return max(order_profile(handle)) == len(handle)


def is_elementary_abelian(handle: SubgroupHandle) -> bool:
    n = len(handle)
    if n == 1:
        return True
    pf = prime_power(n)
    if pf is None:
        return False
    p = pf[0]
    prof = order_profile(handle)
    return set(prof) == {1, p} and is_abelian(handle)


def is_dihedral(handle: SubgroupHandle) -> bool:
    """Dihedral of order 2m, m >= 2 (the Klein group counts as D_4)."""
    spec = handle.group
    n = len(handle)
    if n % 2 or n < 4:
        return False
    m = n // 2
    prof = order_profile(handle)
    if prof.get(m, 0) == 0:
        return False
    ts = sorted(handle.t_set)
    x = next(t for t in ts if spec.order_t(t) == m)
    cyc = {spec.identity_t}
    cur = x
    while cur != spec.identity_t:
        cyc.add(cur)
        cur = spec.mul_t(cur, x)
    xin = spec.inv_t(x)
    for y in ts:
        if y in cyc or spec.order_t(y) != 2:
            continue
        if spec.mul_t(spec.mul_t(spec.inv_t(y), x), y) == xin:
            return True
    return False


_PROFILES = {
    "A_4": Counter({1: 1, 2: 3, 3: 8}),
    "S_4": Counter({1: 1, 2: 9, 3: 8, 4: 6}),
    "A_5": Counter({1: 1, 2: 15, 3: 20, 5: 24}),
}


def recognize(handle: SubgroupHandle) -> str:
    """Structural name: cyclic, dihedral, elementary abelian, the three
    triangle groups, PSL/PGL(2,q0) by order, or a generic order label."""
    n = len(handle)
    if n == 1:
        return "1"
    prof = order_profile(handle)
    for name, ref in _PROFILES.items():
        if n == sum(ref.values()) and prof == ref:
            return name
    if is_cyclic(handle):
        return f"C_{n}"
    if is_elementary_abelian(handle):
        p = prime_power(n)[0]
        m = prime_power(n)[1]
        return f"C_{p}^{m}"
    if is_dihedral(handle):
        return f"D_{n}"
    for q0 in range(3, 100):
        if prime_power(q0) is None:
            continue
        if q0 % 2 and n == q0 * (q0 * q0 - 1) // 2:
            return f"PSL(2,{q0})"
        if n == q0 * (q0 * q0 - 1):
            return f"PGL(2,{q0})"
    return f"order-{n}"


# ---------------------------------------------------------------------------
# the classical subgroup catalog of PGL(2,q), q odd
# ---------------------------------------------------------------------------


def catalog_family(handle: SubgroupHandle, q: int) -> str | None:
    """Which family of the classical subgroup catalog of PGL(2,q), q >= 5
    odd, contains this subgroup; None if none matches."""
    n = len(handle)
    p, f = prime_power(q)
    if n == 1:
        return "trivial"
    if is_cyclic(handle):
        if n == 2:
            return "(i) C_2"
        if n > 2 and ((q - 1) % n == 0 or (q + 1) % n == 0):
            return "(ii) C_d, d | q+-1"
        if n == p:
            return "(ix) elementary abelian"
    if is_elementary_abelian(handle):
        pf = prime_power(n)
        if pf and pf[0] == p and pf[1] <= f:
            return "(ix) elementary abelian"
        if n == 4:
            return "(iii) D_4"
    if is_dihedral(handle):
        d = n // 2
        if n == 4:
            return "(iii) D_4"
        if d > 2:
            for sign in (-1, 1):
                m = q + sign
                if m % 2 == 0 and (m // 2) % d == 0:
                    return "(iv) D_2d, d | (q+-1)/2"
            for sign in (-1, 1):
                m = q + sign
                if m % d == 0 and (m // d) % 2 == 1:
                    return "(v) D_2d, (q+-1)/d odd"
        # dihedral groups over the unipotent radical fall through to (x)
    prof = order_profile(handle)
    if prof == _PROFILES["A_4"]:
        return "(vi) A_4"
    if prof == _PROFILES["S_4"]:
        return "(vi) S_4"
    if prof == _PROFILES["A_5"] and q % 10 in (1, 9):
        return "(vi) A_5"
    for m in range(1, f + 1):
        if f % m == 0:
            qm = p**m
            if qm % 2 and n == qm * (qm * qm - 1) // 2 and qm >= 5:
                return f"(vii) PSL(2,{qm})"
            if n == qm * (qm * qm - 1):
                return f"(viii) PGL(2,{qm})"
    # (x): elementary abelian p-group extended by a cyclic group
    spec = handle.group
    ts = sorted(handle.t_set)
    unipotent = [t for t in ts if spec.order_t(t) in (1, p)]
    u = set(unipotent)
    pf = prime_power(len(u)) if len(u) > 1 else None
    if pf and pf[0] == p and pf[1] <= f and n % len(u) == 0:
        closed = all(spec.mul_t(a, b) in u for a in u for b in u)
        normal = closed and all(
            spec.mul_t(spec.mul_t(spec.inv_t(t), x), t) in u for t in ts for x in u
        )
        if closed and normal:
            d = n // len(u)
            if d > 1 and math.gcd(q - 1, p ** pf[1] - 1) % d == 0:
                # quotient must be cyclic: some h with h^k hitting every coset
                for h in ts:
                    kk = 1
                    cur = h
                    while cur not in u:
                        cur = spec.mul_t(cur, h)
                        kk += 1
                    if kk == d:
                        return "(x) E_{p^m}:C_d"
    return None


def dihedral_involution_count(order: int) -> int:
    """Number of involutions in the dihedral group of the given order."""
    if order % 2 or order < 2:
        raise ValueError("dihedral groups have even order >= 2")
    m = order // 2
    if m == 1:
        return 1
    return m + 1 if m % 2 == 0 else m
