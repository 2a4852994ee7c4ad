"""Built-in complexes and a generator of random valid complexes.

Poincaré sphere: the two irreducible flat connections are placed as beta in
degree 0 and alpha in degree 4, with v(beta) = 8 alpha and delta(alpha) = 1,
so delta_0 : HF^4 -> Z is an isomorphism and u : HF^0 -> HF^4 is
multiplication by 8 (the sign of 8 is a convention; +8 is used).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .complex import (
    ADMISSIBLE, HOMOLOGY_SPHERE, FloerComplex, build_complex, change_basis, direct_sum,
    relabel, reverse_orientation,
)


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    complex: FloerComplex
    description: str
    expected: Dict[str, object] = field(default_factory=dict)


def _s3():
    return build_complex(HOMOLOGY_SPHERE, [])


def _poincare():
    return build_complex(HOMOLOGY_SPHERE, [("beta", 0), ("alpha", 4)],
                         v={("beta", "alpha"): 8}, delta={"alpha": 1})


def _acyclic():
    return build_complex(HOMOLOGY_SPHERE, [("x", 2), ("y", 3)], d={("x", "y"): 1})


def _torsion():
    return build_complex(HOMOLOGY_SPHERE, [("x", 2), ("y", 3)], d={("x", "y"): 2})


def _torus(k: int = 0, flavor: str = ADMISSIBLE):
    return build_complex(flavor, [("a", k % 8), ("b", (k + 4) % 8)],
                         v={("a", "b"): 8, ("b", "a"): 8})


def _jordan():
    # u from degree 0 to 4 is A = [[8, 1], [0, 8]], from 4 to 0 is B = 8 I
    return build_complex(
        ADMISSIBLE, [("x1", 0), ("x2", 0), ("y1", 4), ("y2", 4)],
        v={("x1", "y1"): 8, ("x2", "y1"): 1, ("x2", "y2"): 8,
           ("y1", "x1"): 8, ("y2", "x2"): 8})


_EMPTY_HF = (0,) * 8

ENTRIES = {
    "s3": (_s3, "S^3: no irreducible flat connections",
           dict(hf_dims=_EMPTY_HF, h=0, chi=0, reduced_dims=_EMPTY_HF, nilpotency=0)),
    "poincare": (_poincare, "Poincaré sphere Σ(2,3,5): β in degree 0, α in degree 4, v(β) = 8α, δ(α) = 1",
                 dict(hf_dims=(1, 0, 0, 0, 1, 0, 0, 0), h=1, chi=2, reduced_dims=_EMPTY_HF,
                      nilpotency=0, u="u: HF^0 -> HF^4 is multiplication by 8")),
    "poincare_reversed": (lambda: reverse_orientation(_poincare()),
                          "orientation-reversed Poincaré sphere",
                          dict(hf_dims=(0, 1, 0, 0, 0, 1, 0, 0), h=-1, chi=-2,
                               reduced_dims=_EMPTY_HF, nilpotency=0)),
    "acyclic_block": (_acyclic, "x (deg 2), y (deg 3), dx = y",
                      dict(hf_dims=_EMPTY_HF, h=0, chi=0, reduced_dims=_EMPTY_HF, nilpotency=0)),
    "torsion_block": (_torsion, "x (deg 2), y (deg 3), dx = 2y: Z/2 in degree 3 over Z",
                      dict(hf_dims=_EMPTY_HF, h=0, chi=0, reduced_dims=_EMPTY_HF, nilpotency=0,
                           torsion_Z={3: (2,)})),
    "torus_model": (_torus, "admissible: a (deg 0), b (deg 4), v(a) = 8b, v(b) = 8a; u^2 = 64",
                    dict(hf_dims=(1, 0, 0, 0, 1, 0, 0, 0), chi=2, reduced_dims=(1, 0, 0, 0, 1, 0, 0, 0),
                         nilpotency=1, u="u = 8τ, u^2 = 64")),
    "jordan_block": (_jordan, "admissible: u = [[8,1],[0,8]] from degree 0 to 4, 8I back",
                     dict(hf_dims=(2, 0, 0, 0, 2, 0, 0, 0), chi=4, reduced_dims=(2, 0, 0, 0, 2, 0, 0, 0),
                          nilpotency=2)),
}

NAMES = tuple(ENTRIES)


def build(name: str) -> CorpusEntry:
    try:
        make, desc, expected = ENTRIES[name]
    except KeyError:
        raise KeyError(f"unknown corpus entry {name!r}; choose from {', '.join(NAMES)}") from None
    return CorpusEntry(name, make(), desc, dict(expected))


# ---------------------------------------------------------------- random complexes

# sphere-flavour blocks: name -> (constructor, h, side); side +1 needs delta' = 0,
# side -1 needs delta = 0 on the other blocks
_BLOCKS = {
    "poincare": (_poincare, 1, 1),
    "poincare_reversed": (lambda: reverse_orientation(_poincare()), -1, -1),
    "acyclic_block": (_acyclic, 0, 0),
    "torsion_block": (_torsion, 0, 0),
}
for _k in range(8):
    _BLOCKS[f"torus{_k}"] = (lambda k=_k: _torus(k, HOMOLOGY_SPHERE), 0, 0)

BLOCK_NAMES = tuple(_BLOCKS)


@dataclass(frozen=True)
class Profile:
    """Size parameters: an explicit block multiset or a random one."""

    blocks: Optional[Tuple[str, ...]] = None
    max_blocks: int = 4
    conjugate: bool = True


@dataclass(frozen=True)
class RandomComplex:
    complex: FloerComplex
    blocks: Tuple[str, ...]
    expected_h: int
    block_h_sum: int
    expected_hf_dims: Tuple[int, ...]
    expected_reduced_dims: Tuple[int, ...]


def _random_unimodular(rng: random.Random, n: int, steps: int = 6) -> List[List[int]]:
    M = [[int(i == j) for j in range(n)] for i in range(n)]
    if n == 0:
        return M
    for _ in range(steps):
        i, j = rng.randrange(n), rng.randrange(n)
        if n > 1 and i != j:
            c = rng.choice((-2, -1, 1, 2))
            M[i] = [a + c * b for a, b in zip(M[i], M[j])]
        if rng.random() < 0.3:
            k = rng.randrange(n)
            M[k] = [-a for a in M[k]]
    return M


def _block_dims(name: str) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    hf = [0] * 8
    red = [0] * 8
    if name == "poincare":
        hf[0] = hf[4] = 1
    elif name == "poincare_reversed":
        hf[1] = hf[5] = 1
    elif name.startswith("torus"):
        k = int(name[5:])
        for q in (k, k + 4):
            hf[q % 8] += 1
            red[q % 8] += 1
    return tuple(hf), tuple(red)


def random_valid(seed: int, profile: Profile = Profile()) -> RandomComplex:
    """Random direct sum of validated blocks under a random unimodular basis change.

    Deterministic in ``seed``.  Blocks with non-zero delta and blocks with
    non-zero delta' are never mixed, which keeps the sum valid.  Expected
    field invariants (h, HF and reduced dimensions over Q or F_p) are
    computed from the block multiset.  All Poincaré blocks share the same
    delta sequence, so the towers of the sum span one dimension per side:
    ``expected_h`` is +-1 when such a block is present, while
    ``block_h_sum`` is the plain sum of the block values.
    """
    rng = random.Random(seed)
    if profile.blocks is not None:
        names = list(profile.blocks)
    else:
        side = rng.choice((1, -1))
        pool = [b for b, (_, _, s) in _BLOCKS.items() if s in (0, side)]
        names = [rng.choice(pool) for _ in range(rng.randint(0, profile.max_blocks))]
    sides = {_BLOCKS[b][2] for b in names} - {0}
    if len(sides) > 1:
        raise ValueError("poincare and poincare_reversed blocks cannot be mixed in one complex")
    parts = [relabel(_BLOCKS[b][0](), f"b{i}_") for i, b in enumerate(names)]
    C = direct_sum(*parts, flavor=HOMOLOGY_SPHERE)
    if C.size > 64:
        raise ValueError("profile exceeds 64 generators")
    if profile.conjugate and C.size:
        blocks = {q: _random_unimodular(rng, len(C.in_degree(q))) for q in range(8)}
        C = change_basis(C, blocks)
    block_sum = sum(_BLOCKS[b][1] for b in names)
    h = (1 if "poincare" in names else 0) - (1 if "poincare_reversed" in names else 0)
    hf = [0] * 8
    red = [0] * 8
    for b in names:
        bh, br = _block_dims(b)
        hf = [x + y for x, y in zip(hf, bh)]
        red = [x + y for x, y in zip(red, br)]
    # one copy of the Poincaré tower is absorbed; the other copies survive
    for name, (lo, hi) in (("poincare", (0, 4)), ("poincare_reversed", (1, 5))):
        extra = names.count(name) - 1
        if extra > 0:
            red[lo] += extra
            red[hi] += extra
    return RandomComplex(C, tuple(names), h, block_sum, tuple(hf), tuple(red))
