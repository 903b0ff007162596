"""Exact root-system data for the finite simple types.

Weights are tuples of coordinates in the fundamental-weight basis: integers
for `Weight`, Fractions for `RationalWeight`.  Ambient Bourbaki epsilon
coordinates appear only at the construction boundary (the simple-root tables)
and in the eps <-> fundamental converters for types B and C.

The inner product is normalized so short roots have squared length 2.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction as Q
from typing import Iterable, NamedTuple

from .errors import InputError, InvariantViolation
from .ratmat import Mat, inverse, mat, matvec

Weight = tuple[int, ...]
RationalWeight = tuple[Q, ...]

__all__ = [
    "Weight",
    "RationalWeight",
    "Root",
    "RootSystem",
    "OrbitPoset",
    "Cover",
    "build_root_system",
    "pairing",
    "reflect",
    "weyl_orbit_poset",
    "dual_weight",
    "weyl_orbit",
    "weyl_group_order",
    "weight_from_eps",
    "weight_to_eps",
]

_RANK_RANGE = {"A": (1, None), "B": (2, None), "C": (2, None), "D": (4, None),
               "E": (6, 8), "F": (4, 4), "G": (2, 2)}


def _simple_roots_ambient(series: str, rank: int) -> tuple[RationalWeight, ...]:
    """Bourbaki epsilon coordinates of the simple roots."""
    def e(i: int, dim: int, c=1) -> list[Q]:
        v = [Q(0)] * dim
        v[i] = Q(c)
        return v

    if series == "A":
        dim = rank + 1
        return tuple(tuple(Q(a) - Q(b) for a, b in zip(e(i, dim), e(i + 1, dim)))
                     for i in range(rank))
    if series in ("B", "C", "D"):
        dim = rank
        roots = [tuple(Q(x) - Q(y) for x, y in zip(e(i, dim), e(i + 1, dim)))
                 for i in range(rank - 1)]
        if series == "B":
            roots.append(tuple(e(rank - 1, dim)))
        elif series == "C":
            roots.append(tuple(e(rank - 1, dim, 2)))
        else:
            last = e(rank - 2, dim)
            last[rank - 1] = Q(1)
            roots.append(tuple(last))
        return tuple(roots)
    if series == "E":
        half = Q(1, 2)
        a1 = (half, -half, -half, -half, -half, -half, -half, half)
        a2 = (Q(1), Q(1), Q(0), Q(0), Q(0), Q(0), Q(0), Q(0))
        rows = [a1, a2]
        for k in range(1, 7):
            v = [Q(0)] * 8
            v[k] = Q(1)
            v[k - 1] = Q(-1)
            rows.append(tuple(v))
        return tuple(rows[:rank])
    if series == "F":
        h = Q(1, 2)
        return (
            (Q(0), Q(1), Q(-1), Q(0)),
            (Q(0), Q(0), Q(1), Q(-1)),
            (Q(0), Q(0), Q(0), Q(1)),
            (h, -h, -h, -h),
        )
    if series == "G":
        return ((Q(1), Q(-1), Q(0)), (Q(-2), Q(1), Q(1)))
    raise InputError(f"unknown series {series!r}")


def _dot(x: Iterable[Q], y: Iterable[Q]) -> Q:
    return sum(a * b for a, b in zip(x, y))


class Cover(NamedTuple):
    """One cover relation lower < upper in an orbit poset."""

    lower: int
    upper: int
    root: int
    m: int


@dataclass(frozen=True)
class Root:
    """A positive root with every representation the rest of the code needs.

    coeffs: expansion over the simple roots (nonnegative integers).
    fund:   fundamental-weight coordinates.
    coroot: pairing vector p with <w, root_v> = sum p[i] * w[i].
    ambient: Bourbaki epsilon coordinates.
    d:      half squared length under the short-root-is-2 normalization.
    """

    index: int
    coeffs: Weight
    fund: Weight
    coroot: Weight
    ambient: RationalWeight
    d: int


def _positive_roots_from_cartan(cartan: tuple[tuple[int, ...], ...]) -> list[Weight]:
    """Closure of the simple roots under root strings, in simple-root coords."""
    rank = len(cartan)
    simple = [tuple(1 if j == i else 0 for j in range(rank)) for i in range(rank)]
    known = set(simple)
    level = list(simple)
    out = list(simple)
    while level:
        nxt = []
        for beta in level:
            for i in range(rank):
                pair = sum(beta[k] * cartan[k][i] for k in range(rank))
                p = 0
                down = list(beta)
                while True:
                    down[i] -= 1
                    if down[i] < 0 or tuple(down) not in known:
                        break
                    p += 1
                if p - pair > 0:
                    up = list(beta)
                    up[i] += 1
                    cand = tuple(up)
                    if cand not in known:
                        known.add(cand)
                        nxt.append(cand)
        nxt.sort()
        out.extend(nxt)
        level = nxt
    return out


class RootSystem:
    """Immutable container for one simple type; build via build_root_system."""

    def __init__(self, label: str, series: str, rank: int):
        self.label = label
        self.series = series
        self.rank = rank
        amb = _simple_roots_ambient(series, rank)
        self.ambient_dim = len(amb[0])
        self.simple_roots: tuple[RationalWeight, ...] = amb
        cartan = tuple(
            tuple(int(Q(2) * _dot(amb[i], amb[j]) / _dot(amb[j], amb[j])) for j in range(rank))
            for i in range(rank)
        )
        self.cartan = cartan
        self.cartan_inv: Mat = inverse(mat(cartan))
        # normalize the form so the shortest root has squared length 2
        min_len = min(_dot(a, a) for a in amb)
        scale = Q(2) / min_len
        self._scale = scale
        lengths = [scale * _dot(a, a) / 2 for a in amb]
        if any(d.denominator != 1 for d in lengths):
            raise InvariantViolation(f"non-integral root lengths for {label}")
        self.simple_d = tuple(int(d) for d in lengths)

        roots: list[Root] = []
        for idx, coeffs in enumerate(_positive_roots_from_cartan(cartan)):
            fund = tuple(sum(coeffs[i] * cartan[i][j] for i in range(rank)) for j in range(rank))
            ambient = tuple(
                sum(Q(coeffs[i]) * amb[i][k] for i in range(rank))
                for k in range(self.ambient_dim)
            )
            dsq = scale * _dot(ambient, ambient) / 2
            if dsq.denominator != 1:
                raise InvariantViolation(f"non-integral length for root {coeffs} in {label}")
            d = int(dsq)
            coroot = []
            for i in range(rank):
                p = Q(coeffs[i] * self.simple_d[i], d)
                if p.denominator != 1:
                    raise InvariantViolation(f"non-integral coroot pairing in {label}")
                coroot.append(int(p))
            roots.append(Root(idx, coeffs, fund, tuple(coroot), ambient, d))
        self.positive_roots: tuple[Root, ...] = tuple(roots)
        self.root_by_fund = {r.fund: r.index for r in roots}
        # Gram matrix of the fundamental weights: G = A^{-1} D, D = diag(d_j)
        self.fund_gram: Mat = tuple(
            tuple(self.cartan_inv[i][j] * self.simple_d[j] for j in range(rank))
            for i in range(rank)
        )
        self.weyl_vector: Weight = (1,) * rank
        # columns: ambient coordinates of the fundamental weights
        self._amb_of_fund: Mat = tuple(
            tuple(
                sum(self.cartan_inv[i][k] * amb[k][row] for k in range(rank))
                for i in range(rank)
            )
            for row in range(self.ambient_dim)
        )
        self._sum_coroots = tuple(sum(r.coroot[i] for r in roots) for i in range(rank))
        self._orbit_cache: dict[Weight, "OrbitPoset"] = {}

    def __repr__(self) -> str:
        return f"RootSystem({self.label})"

    # plain identity semantics; instances are memoized singletons per label

    def pairing_root(self, w, root_index: int):
        """<w, alpha_v> for the indexed positive root."""
        p = self.positive_roots[root_index].coroot
        return sum(c * x for c, x in zip(p, w))

    def reflect_root(self, w, root_index: int):
        r = self.positive_roots[root_index]
        m = self.pairing_root(w, root_index)
        return tuple(x - m * a for x, a in zip(w, r.fund))

    def is_dominant(self, w) -> bool:
        return all(x >= 0 for x in w)

    def dominant_rep(self, w):
        """The dominant Weyl-orbit representative of w."""
        v = tuple(w)
        while True:
            i = next((k for k, x in enumerate(v) if x < 0), None)
            if i is None:
                return v
            v = self.reflect_root(v, i)

    def inner(self, x, y) -> Q:
        """Normalized W-invariant form on fundamental coordinates."""
        return sum(
            Q(x[i]) * self.fund_gram[i][j] * Q(y[j])
            for i in range(self.rank)
            for j in range(self.rank)
        )

    def to_ambient(self, w) -> RationalWeight:
        return matvec(self._amb_of_fund, w)

    def from_ambient(self, vec) -> RationalWeight:
        """Fundamental coordinates of an ambient vector in the root span."""
        out = []
        for a in self.simple_roots:
            out.append(Q(2) * _dot(vec, a) / _dot(a, a))
        return tuple(out)

    def height_functional(self, w) -> int:
        """Integer functional strictly increasing along the Bruhat order."""
        return sum(c * x for c, x in zip(self._sum_coroots, w))


_SYSTEMS: dict[str, RootSystem] = {}

_LABEL_RE = re.compile(r"^([A-Ga-g])[\s_]?(\d+)$")


def build_root_system(label: str) -> RootSystem:
    """Construct (memoized) the root system for a label like 'B2' or 'E7'."""
    m = _LABEL_RE.match(label.strip())
    if not m:
        raise InputError(f"cannot parse root-system label {label!r}")
    series = m.group(1).upper()
    rank = int(m.group(2))
    lo, hi = _RANK_RANGE[series]
    if rank < lo or (hi is not None and rank > hi):
        raise InputError(f"rank {rank} out of range for series {series}")
    key = f"{series}{rank}"
    if key not in _SYSTEMS:
        _SYSTEMS[key] = RootSystem(key, series, rank)
    return _SYSTEMS[key]


def pairing(R: RootSystem, w, root_index: int):
    """<w, alpha_v> for the positive root with this index."""
    if not 0 <= root_index < len(R.positive_roots):
        raise InputError(f"root index {root_index} out of range for {R.label}")
    return R.pairing_root(w, root_index)


def reflect(R: RootSystem, w, root_index: int):
    """Reflection of w in the hyperplane of the indexed positive root."""
    if not 0 <= root_index < len(R.positive_roots):
        raise InputError(f"root index {root_index} out of range for {R.label}")
    return R.reflect_root(w, root_index)


def dual_weight(R: RootSystem, w: Weight) -> Weight:
    """Highest weight of the dual representation: dominant rep of -w."""
    if not R.is_dominant(w):
        raise InputError(f"dual_weight expects a dominant weight, got {w}")
    return R.dominant_rep(tuple(-x for x in w))


def _check_weight(R: RootSystem, w) -> Weight:
    if len(w) != R.rank:
        raise InputError(f"weight {w} has wrong rank for {R.label}")
    if not all(isinstance(x, int) or (isinstance(x, Q) and x.denominator == 1) for x in w):
        raise InputError(f"weight {w} is not integral")
    return tuple(int(x) for x in w)


class OrbitPoset:
    """Weyl orbit of a dominant weight under the orbit Bruhat order.

    elements[0] is the dominant weight (the unique maximum).  covers hold
    labeled relations sigma_alpha(nu) < nu that admit no intermediate orbit
    element; cover pairings m = <upper, alpha_v> are positive integers.
    """

    def __init__(self, R: RootSystem, base: Weight):
        self.system = R
        self.base = base
        elements: list[Weight] = [base]
        index = {base: 0}
        frontier = [base]
        while frontier:
            nxt = set()
            for w in frontier:
                for i in range(R.rank):
                    if w[i] > 0:
                        child = R.reflect_root(w, i)
                        if child not in index:
                            nxt.add(child)
            frontier = sorted(nxt)
            for w in frontier:
                index[w] = len(elements)
                elements.append(w)
        self.elements = tuple(elements)
        self.index = index

        n = len(elements)
        relations: list[Cover] = []
        for up, w in enumerate(elements):
            for r in R.positive_roots:
                m = sum(c * x for c, x in zip(r.coroot, w))
                if m > 0:
                    low = index[tuple(x - m * a for x, a in zip(w, r.fund))]
                    relations.append(Cover(low, up, r.index, m))

        order = sorted(range(n), key=lambda i: R.height_functional(elements[i]))
        children: list[list[Cover]] = [[] for _ in range(n)]
        for rel in relations:
            children[rel.upper].append(rel)
        reach = [0] * n  # bitmask of elements strictly below
        for v in order:
            acc = 0
            for rel in children[v]:
                acc |= (1 << rel.lower) | reach[rel.lower]
            reach[v] = acc
        self._reach_all = reach

        covers = []
        for rel in relations:
            if not any(
                other.lower != rel.lower and (reach[other.lower] >> rel.lower) & 1
                for other in children[rel.upper]
            ):
                covers.append(rel)
        covers.sort()
        self.covers: tuple[Cover, ...] = tuple(covers)
        self.max_pairing = max((c.m for c in covers), default=0)
        self._cover_children: list[list[Cover]] = [[] for _ in range(n)]
        for c in covers:
            self._cover_children[c.upper].append(c)
        self._topo = order
        self._down_masks: dict[int, list[int]] = {}

    def __len__(self) -> int:
        return len(self.elements)

    def down_mask(self, denom: int) -> list[int]:
        """Strictly-below reachability through covers whose m is divisible by denom."""
        masks = self._down_masks.get(denom)
        if masks is None:
            masks = [0] * len(self.elements)
            for v in self._topo:
                acc = 0
                for rel in self._cover_children[v]:
                    if rel.m % denom == 0:
                        acc |= (1 << rel.lower) | masks[rel.lower]
                masks[v] = acc
            self._down_masks[denom] = masks
        return masks


def weyl_orbit_poset(R: RootSystem, mu) -> OrbitPoset:
    """Memoized orbit poset for a dominant integral weight."""
    w = _check_weight(R, mu)
    if not R.is_dominant(w):
        raise InputError(f"orbit poset expects a dominant weight, got {w}")
    poset = R._orbit_cache.get(w)
    if poset is None:
        poset = OrbitPoset(R, w)
        R._orbit_cache[w] = poset
    return poset


def weyl_orbit(R: RootSystem, mu) -> tuple[Weight, ...]:
    """The Weyl orbit of a dominant weight, without any order structure."""
    w = _check_weight(R, mu)
    if not R.is_dominant(w):
        raise InputError(f"weyl_orbit expects a dominant weight, got {w}")
    seen = {w}
    frontier = [w]
    while frontier:
        nxt = []
        for v in frontier:
            for i in range(R.rank):
                if v[i] > 0:
                    child = R.reflect_root(v, i)
                    if child not in seen:
                        seen.add(child)
                        nxt.append(child)
        frontier = nxt
    return tuple(sorted(seen))


_EXCEPTIONAL_WEYL = {"E6": 51840, "E7": 2903040, "E8": 696729600, "F4": 1152, "G2": 12}


def weyl_group_order(R: RootSystem | str) -> int:
    """|W| from the classical closed forms per series."""
    if isinstance(R, str):
        R = build_root_system(R)
    n = R.rank
    fact = 1
    for k in range(2, n + 1):
        fact *= k
    if R.series == "A":
        return fact * (n + 1)
    if R.series in ("B", "C"):
        return fact << n
    if R.series == "D":
        return fact << (n - 1)
    return _EXCEPTIONAL_WEYL[R.label]


def weight_from_eps(R: RootSystem, coords) -> Weight:
    """Fundamental coordinates of an epsilon-coordinate weight (types B, C).

    For B the admissible lattice is {sum a_i eps_i : a_i - a_j in Z}: all
    coordinates integral, or all half-odd-integral.  For C all coordinates
    must be integers.
    """
    if R.series not in ("B", "C"):
        raise InputError("eps coordinates are only supported for types B and C")
    v = tuple(Q(x) for x in coords)
    if len(v) != R.rank:
        raise InputError(f"expected {R.rank} eps coordinates, got {len(v)}")
    if R.series == "C":
        if any(x.denominator != 1 for x in v):
            raise InputError(f"{v} is not in the type C weight lattice")
    else:
        denoms = {x.denominator for x in v}
        if not (denoms <= {1} or denoms == {2}):
            raise InputError(f"{v} is not in the type B weight lattice")
        if denoms == {2} and any(x.denominator != 2 for x in v):
            raise InputError(f"{v} is not in the type B weight lattice")
    fund = R.from_ambient(v)
    if any(x.denominator != 1 for x in fund):
        raise InputError(f"{v} is not a weight of {R.label}")
    return tuple(int(x) for x in fund)


def weight_to_eps(R: RootSystem, w) -> RationalWeight:
    """Epsilon coordinates of a weight (types B, C)."""
    if R.series not in ("B", "C"):
        raise InputError("eps coordinates are only supported for types B and C")
    return R.to_ambient(w)
