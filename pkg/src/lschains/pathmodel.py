"""Lakshmibai-Seshadri chains and the chain-counting tensor decomposition.

A chain of shape mu is a strictly increasing sequence mu_0 < mu_1 < ... <
mu_l in the orbit Bruhat order together with rational cuts 0 < b_1 < ... <
b_l < 1, where each consecutive pair is comparable in the b_t-Bruhat order
(the suborder generated by covers whose pairing m satisfies b_t * m in Z).
Setting b_0 = 0 and b_{l+1} = 1, the partial sums

    delta_t = sum_{j<=t} (b_j - b_{j-1}) * mu_{j-1}

give the endpoint omega = delta_{l+1} and the depth, whose i-th fundamental
coordinate is min_t of the i-th coordinate of delta_t.  Both are integral;
non-integrality raises InvariantViolation.

Every admissible cut b, written in lowest terms a/d, must have d dividing
the pairing of each cover on some saturated chain, so d never exceeds the
maximum cover pairing D of the orbit poset.  Enumeration therefore draws
cuts from the Farey fractions of order D and is complete.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from functools import lru_cache

from .errors import InputError, InvariantViolation
from .rootsys import (
    OrbitPoset,
    RationalWeight,
    RootSystem,
    Weight,
    weyl_orbit_poset,
)

__all__ = [
    "LSChain",
    "TensorDecomposition",
    "b_order_leq",
    "enumerate_ls_chains",
    "delta_sequence",
    "chain_endpoint",
    "chain_depth",
    "tensor_multiplicity",
    "tensor_decompose",
    "chain_record",
]


@dataclass(frozen=True)
class LSChain:
    """One chain: steps mu_0 < ... < mu_l with interior cuts b_1 < ... < b_l."""

    shape: Weight
    steps: tuple[Weight, ...]
    cuts: tuple[Q, ...]

    def __post_init__(self):
        if len(self.cuts) != len(self.steps) - 1:
            raise InputError("cut count must be one less than step count")


def b_order_leq(P: OrbitPoset, x: Weight, y: Weight, b) -> bool:
    """True iff x < y in the b-Bruhat order on the orbit poset P.

    Equivalently: a saturated Bruhat chain from x up to y exists whose every
    cover pairing m satisfies b*m in Z.  b = 1 is plain Bruhat comparability.
    """
    b = Q(b)
    if b <= 0 or b > 1:
        raise InputError(f"b must lie in (0, 1], got {b}")
    xi = P.index.get(tuple(x))
    yi = P.index.get(tuple(y))
    if xi is None or yi is None:
        raise InputError("both weights must lie in the orbit")
    return bool((P.down_mask(b.denominator)[yi] >> xi) & 1)


def _farey(maxden: int) -> tuple[Q, ...]:
    vals = {Q(a, d) for d in range(2, maxden + 1) for a in range(1, d)}
    return tuple(sorted(vals))


_CHAIN_CACHE: dict[tuple[str, Weight], tuple[LSChain, ...]] = {}


def enumerate_ls_chains(R: RootSystem, mu) -> tuple[LSChain, ...]:
    """All LS chains of shape mu, in canonical (steps, cuts) order.

    Works downward: every orbit element is a valid top step mu_l, and each
    recursion prepends a lower first step x <_b mu_t with a cut below the
    current first cut.
    """
    mu = tuple(mu)
    key = (R.label, mu)
    cached = _CHAIN_CACHE.get(key)
    if cached is not None:
        return cached
    P = weyl_orbit_poset(R, mu)
    candidates = _farey(P.max_pairing)
    masks = {b.denominator: P.down_mask(b.denominator) for b in candidates}
    n = len(P.elements)
    found: list[tuple[tuple[int, ...], tuple[Q, ...]]] = []

    def extend(first: int, bound: Q, steps: tuple[int, ...], cuts: tuple[Q, ...]):
        found.append((steps, cuts))
        for b in candidates:
            if b >= bound:
                break
            mask = masks[b.denominator][first]
            while mask:
                low = mask & -mask
                y = low.bit_length() - 1
                mask ^= low
                extend(y, b, (y,) + steps, (b,) + cuts)

    one = Q(1)
    for top in range(n):
        extend(top, one, (top,), ())
    found.sort()
    chains = tuple(
        LSChain(mu, tuple(P.elements[i] for i in steps), cuts) for steps, cuts in found
    )
    for c in chains:
        chain_endpoint(c)
        chain_depth(c)
    _CHAIN_CACHE[key] = chains
    return chains


@lru_cache(maxsize=None)
def delta_sequence(chain: LSChain) -> tuple[RationalWeight, ...]:
    """Partial-sum weights delta_0 = 0, ..., delta_{l+1} = endpoint."""
    rank = len(chain.shape)
    out = [(Q(0),) * rank]
    prev_cut = Q(0)
    for step, cut in zip(chain.steps, chain.cuts + (Q(1),)):
        width = cut - prev_cut
        out.append(tuple(d + width * s for d, s in zip(out[-1], step)))
        prev_cut = cut
    return tuple(out)


def _integral(w: RationalWeight, what: str) -> Weight:
    if any(x.denominator != 1 for x in w):
        raise InvariantViolation(f"{what} {w} is not an integral weight")
    return tuple(int(x) for x in w)


def chain_endpoint(chain: LSChain) -> Weight:
    """omega(C) = delta_{l+1}, always integral."""
    return _integral(delta_sequence(chain)[-1], "chain endpoint")


def chain_depth(chain: LSChain) -> Weight:
    """Coordinatewise minimum of the delta sequence; integral by theory."""
    deltas = delta_sequence(chain)
    mins = tuple(min(d[i] for d in deltas) for i in range(len(chain.shape)))
    return _integral(mins, "chain depth")


_DECOMP_CACHE: dict[tuple[str, Weight, Weight], dict[Weight, int]] = {}


def _decompose_components(R: RootSystem, mu: Weight, nu: Weight) -> dict[Weight, int]:
    key = (R.label, mu, nu)
    comps = _DECOMP_CACHE.get(key)
    if comps is None:
        comps = {}
        for chain in enumerate_ls_chains(R, mu):
            depth = chain_depth(chain)
            if all(n + d >= 0 for n, d in zip(nu, depth)):
                lam = tuple(n + w for n, w in zip(nu, chain_endpoint(chain)))
                comps[lam] = comps.get(lam, 0) + 1
        _DECOMP_CACHE[key] = comps
    return comps


def _check_dominant(R: RootSystem, w, name: str) -> Weight:
    w = tuple(w)
    if len(w) != R.rank or not all(isinstance(x, int) for x in w):
        raise InputError(f"{name} {w} is not an integral weight of rank {R.rank}")
    if not R.is_dominant(w):
        raise InputError(f"{name} {w} is not dominant")
    return w


@dataclass
class TensorDecomposition:
    """Multiset of irreducible components of V(left) (x) V(right)."""

    left: Weight
    right: Weight
    components: dict[Weight, int]

    def multiplicity(self, lam: Weight) -> int:
        return self.components.get(tuple(lam), 0)


def tensor_multiplicity(R: RootSystem, lam, mu, nu) -> int:
    """Chains C of shape mu with nu + depth(C) dominant and nu + omega(C) = lam."""
    lam = _check_dominant(R, lam, "target weight")
    mu = _check_dominant(R, mu, "shape weight")
    nu = _check_dominant(R, nu, "second factor")
    return _decompose_components(R, mu, nu).get(lam, 0)


def tensor_decompose(R: RootSystem, mu, nu) -> TensorDecomposition:
    """Full decomposition of V(mu) (x) V(nu) by the chain-counting rule."""
    mu = _check_dominant(R, mu, "shape weight")
    nu = _check_dominant(R, nu, "second factor")
    comps = _decompose_components(R, mu, nu)
    return TensorDecomposition(mu, nu, dict(sorted(comps.items())))


def chain_record(chain: LSChain) -> dict:
    """JSON-ready record for one chain."""
    return {
        "shape": list(chain.shape),
        "steps": [list(s) for s in chain.steps],
        "cuts": [str(b) for b in chain.cuts],
        "omega": list(chain_endpoint(chain)),
        "delta": list(chain_depth(chain)),
    }
