"""The affine semigroup model attached to parameters (k, a, b).

The semigroup lives in Z^n with n = sum(b), coordinates indexed by pairs
(i, j) with 1 <= i <= k, 1 <= j <= b_i, ordered lexicographically.  Its
generators are the lattice points with block sums at most a_i and total
coordinate sum at least two.  From the generators we derive the group they
span, the cone they span with its facet list, and an independent geometric
facet oracle based on the double description method.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .lattice import (
    Sublattice,
    Vec,
    dot,
    integer_kernel,
    integer_rank,
    primitive,
    smith_normal_form,
    vscale,
    vsub,
)

GROUP_FULL = "full"          # the whole of Z^n
GROUP_BALANCED = "balanced"  # two blocks, equal block sums
GROUP_EVEN = "even"          # even total coordinate sum
GROUP_ZERO = "zero"          # the zero lattice

ORACLE_DIMENSION_CAP = 6


class OracleUnavailable(Exception):
    """Raised when a geometric oracle is asked beyond its dimension cap."""


@dataclass(frozen=True)
class SVParams:
    """Normalized parameters: k blocks with degrees a and sizes b.

    Pairs (a_i, b_i) are sorted lexicographically at construction, so the
    degree vector is ascending; the permutation taking the caller's order to
    the normalized one is kept for reporting but ignored by equality.
    """

    a: tuple[int, ...]
    b: tuple[int, ...]
    original_a: tuple[int, ...] = field(compare=False, default=())
    original_b: tuple[int, ...] = field(compare=False, default=())
    permutation: tuple[int, ...] = field(compare=False, default=())

    @classmethod
    def of(cls, a: Sequence[int], b: Sequence[int]) -> "SVParams":
        a, b = tuple(a), tuple(b)
        if len(a) != len(b) or not a:
            raise ValueError("a and b must be nonempty and of equal length")
        if any(not isinstance(x, int) or x < 1 for x in a + b):
            raise ValueError("all entries of a and b must be positive integers")
        order = sorted(range(len(a)), key=lambda i: (a[i], b[i]))
        return cls(
            a=tuple(a[i] for i in order),
            b=tuple(b[i] for i in order),
            original_a=a,
            original_b=b,
            permutation=tuple(order),
        )

    def __post_init__(self):
        if list(self.a) != sorted(self.a):
            raise ValueError("degree vector must be ascending; use SVParams.of")

    @property
    def k(self) -> int:
        return len(self.a)

    @property
    def n(self) -> int:
        return sum(self.b)

    def indices(self) -> list[tuple[int, int]]:
        """The coordinate index set [(i, j)] in lexicographic order."""
        return [(i, j) for i in range(1, self.k + 1) for j in range(1, self.b[i - 1] + 1)]

    def block_positions(self, i: int) -> range:
        """0-based coordinate positions of block i (1-based)."""
        start = sum(self.b[: i - 1])
        return range(start, start + self.b[i - 1])

    def position(self, i: int, j: int) -> int:
        return sum(self.b[: i - 1]) + (j - 1)

    def block_sum(self, v: Sequence[int], i: int) -> int:
        return sum(v[p] for p in self.block_positions(i))


def enumerate_generators(params: SVParams) -> tuple[Vec, ...]:
    """All lattice points with block sums <= a_i and total sum >= 2.

    Returned in graded lexicographic order (total sum, then lex).
    """
    block_vectors = []
    for ai, bi in zip(params.a, params.b):
        vecs = [v for v in itertools.product(range(ai + 1), repeat=bi) if sum(v) <= ai]
        block_vectors.append(vecs)
    gens = []
    for combo in itertools.product(*block_vectors):
        v = tuple(itertools.chain.from_iterable(combo))
        if sum(v) >= 2:
            gens.append(v)
    gens.sort(key=lambda v: (sum(v), v))
    return tuple(gens)


@dataclass(frozen=True)
class FacetId:
    """Identifier of a supporting hyperplane: a coordinate one (x_{i,j} = 0)
    or a balance one (block sum i equals the sum of the other blocks)."""

    kind: str  # "coord" | "balance"
    i: int
    j: int = 0

    def __post_init__(self):
        if self.kind not in ("coord", "balance"):
            raise ValueError("kind must be 'coord' or 'balance'")

    @property
    def sort_key(self):
        return (0 if self.kind == "coord" else 1, self.i, self.j)

    def __lt__(self, other: "FacetId") -> bool:
        return self.sort_key < other.sort_key

    def label(self) -> str:
        if self.kind == "coord":
            return f"F_{{{self.i},{self.j}}}"
        return f"F_{{{self.i}}}"


@dataclass(frozen=True)
class ConeHRep:
    """Half-space description: all coordinates nonnegative, plus one balance
    inequality per block of degree one."""

    params: SVParams
    balance_blocks: tuple[int, ...]

    def balance_value(self, v: Sequence[int], i: int) -> int:
        return sum(v) - 2 * self.params.block_sum(v, i)

    def contains(self, v: Sequence[int]) -> bool:
        if any(x < 0 for x in v):
            return False
        return all(self.balance_value(v, i) >= 0 for i in self.balance_blocks)


def facet_value(params: SVParams, f: FacetId, v: Sequence[int]) -> int:
    """Value of the facet's supporting functional at v (nonnegative on the cone)."""
    if f.kind == "coord":
        return v[params.position(f.i, f.j)]
    return sum(v) - 2 * params.block_sum(v, f.i)


@dataclass(frozen=True)
class AffineSemigroup:
    params: SVParams
    generators: tuple[Vec, ...]
    group: Sublattice
    group_tag: str
    cone: ConeHRep
    facets: tuple[FacetId, ...]

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def rank(self) -> int:
        return self.group.rank

    def facet_generators(self, f: FacetId) -> tuple[Vec, ...]:
        return tuple(g for g in self.generators if facet_value(self.params, f, g) == 0)

    def group_member(self, v: Sequence[int]) -> bool:
        # Fast closed-form check; the tag is verified against the generator
        # lattice when the model is built.
        if self.group_tag == GROUP_FULL:
            return True
        if self.group_tag == GROUP_EVEN:
            return sum(v) % 2 == 0
        if self.group_tag == GROUP_BALANCED:
            return self.params.block_sum(v, 1) == self.params.block_sum(v, 2)
        return not any(v)

    def max_generator_coordinate(self) -> int:
        return max((max(g) for g in self.generators), default=0)

    def to_dict(self) -> dict:
        """JSON form of the model for report embedding; vectors are arrays
        in the lexicographic index order."""
        return {
            "params": {"k": self.params.k, "a": list(self.params.a), "b": list(self.params.b)},
            "indices": [list(ij) for ij in self.params.indices()],
            "generators": [list(g) for g in self.generators],
            "group": {
                "rank": self.group.rank,
                "tag": self.group_tag,
                "basis": [list(row) for row in self.group.basis],
            },
            "cone": {"balance_blocks": list(self.cone.balance_blocks)},
            "facets": [f.label() for f in self.facets],
        }


def closed_form_group(params: SVParams) -> tuple[str, Sublattice]:
    """The group spanned by the generators, in closed form.

    It is all of Z^n except in three cases: two blocks of degree one (equal
    block sums), one block of degree two (even coordinate sum), one block of
    degree one (zero).
    """
    n = params.n
    if params.k == 1 and params.a[0] == 1:
        return GROUP_ZERO, Sublattice(n, ())
    if params.k == 1 and params.a[0] == 2:
        rows = []
        for j in range(n - 1):
            row = [0] * n
            row[j], row[j + 1] = 1, -1
            rows.append(tuple(row))
        row = [0] * n
        row[n - 1] = 2
        rows.append(tuple(row))
        return GROUP_EVEN, Sublattice.from_generators(rows, n)
    if params.k == 2 and params.a == (1, 1):
        rows = []
        anchor = params.position(2, 1)
        for p in range(n):
            if p == anchor:
                continue
            row = [0] * n
            row[p] = 1
            row[anchor] = 1 if p in params.block_positions(1) else -1
            rows.append(tuple(row))
        return GROUP_BALANCED, Sublattice.from_generators(rows, n)
    rows = [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
    return GROUP_FULL, Sublattice.from_generators(rows, n)


def facet_list(
    params: SVParams, generators: Sequence[Vec], group: Sublattice
) -> tuple[FacetId, ...]:
    """Facet identifiers of the cone spanned by the generators.

    A candidate hyperplane (coordinate, or balance for blocks of degree one)
    survives iff the generators lying on it span a space of dimension
    rank - 1; candidates cutting the same face are reported once, first in
    the canonical order.  A hyperplane containing the whole cone is never a
    facet.
    """
    r = group.rank
    if r == 0:
        return ()
    candidates = [FacetId("coord", i, j) for (i, j) in params.indices()]
    candidates += [
        FacetId("balance", i) for i in range(1, params.k + 1) if params.a[i - 1] == 1
    ]
    seen_faces: set[frozenset] = set()
    out = []
    for f in candidates:
        on_face = [g for g in generators if facet_value(params, f, g) == 0]
        if len(on_face) == len(generators):
            continue  # hyperplane contains the whole cone
        face_rank = integer_rank(on_face, params.n) if on_face else 0
        if face_rank != r - 1:
            continue
        key = frozenset(on_face)
        if key in seen_faces:
            continue
        seen_faces.add(key)
        out.append(f)
    return tuple(sorted(out))


def build_semigroup(a: Sequence[int], b: Sequence[int]) -> AffineSemigroup:
    return build_semigroup_from_params(SVParams.of(a, b))


def build_semigroup_from_params(params: SVParams) -> AffineSemigroup:
    gens = enumerate_generators(params)
    group = Sublattice.from_generators(gens, params.n)
    tag, expected = closed_form_group(params)
    if group != expected:
        raise RuntimeError(f"generator lattice does not match its closed form for {params}")
    cone = ConeHRep(
        params,
        tuple(i for i in range(1, params.k + 1) if params.a[i - 1] == 1),
    )
    facets = facet_list(params, gens, group)
    return AffineSemigroup(params, gens, group, tag, cone, facets)


# ---------------------------------------------------------------------------
# Geometric facet oracle (double description in the span of the cone)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OracleFacet:
    """A facet found geometrically: the primitive inner normal expressed in
    the coordinates of the span basis, plus the set of generators on it."""

    normal_in_span: Vec
    zero_generators: frozenset


def _span_coordinates(s: AffineSemigroup) -> list[Vec]:
    coords = []
    for g in s.generators:
        c = s.group.coordinates_of(g)
        if c is None:
            raise RuntimeError("generator outside its own group")
        coords.append(c)
    return coords


def _initial_simplicial_rays(constraints: list[Vec], r: int) -> tuple[list[int], list[Vec]]:
    """Indices of r independent constraints plus the rays of their dual basis."""
    chosen: list[int] = []
    for idx, c in enumerate(constraints):
        if integer_rank([constraints[i] for i in chosen] + [c], r) > len(chosen):
            chosen.append(idx)
        if len(chosen) == r:
            break
    if len(chosen) < r:
        raise RuntimeError("constraint set does not span the dual space")
    rays = []
    for pos in range(r):
        others = [constraints[chosen[t]] for t in range(r) if t != pos]
        if others:
            ker = integer_kernel(others, r)
        else:
            ker = Sublattice.from_generators(
                [tuple(1 if i == j else 0 for j in range(r)) for i in range(r)], r
            )
        if ker.rank != 1:
            raise RuntimeError("degenerate initial cone in double description")
        ray = ker.basis[0]
        if dot(ray, constraints[chosen[pos]]) < 0:
            ray = vscale(-1, ray)
        rays.append(primitive(ray))
    return chosen, rays


def facet_oracle(
    s: AffineSemigroup, dimension_cap: int = ORACLE_DIMENSION_CAP
) -> list[OracleFacet]:
    """Facets of the conic hull of the generators, via double description.

    Works dually: facet normals are the extreme rays of the cone of
    functionals (in span coordinates) that are nonnegative on every
    generator.  Exponential in bad cases, hence the dimension cap.
    """
    if s.n > dimension_cap:
        raise OracleUnavailable(f"dimension {s.n} exceeds oracle cap {dimension_cap}")
    r = s.rank
    if r == 0:
        return []
    constraints = _span_coordinates(s)  # generator g imposes <normal, g> >= 0
    if r == 1:
        sign = 1 if constraints[0][0] > 0 else -1
        return [
            OracleFacet(
                normal_in_span=(sign,),
                zero_generators=frozenset(
                    g for g, c in zip(s.generators, constraints) if c[0] == 0
                ),
            )
        ]
    chosen, rays = _initial_simplicial_rays(constraints, r)
    processed = [constraints[i] for i in chosen]

    for idx, c in enumerate(constraints):
        if idx in chosen:
            continue
        vals = [dot(ray, c) for ray in rays]
        if all(v >= 0 for v in vals):
            processed.append(c)
            continue
        zsets = [
            frozenset(t for t, pc in enumerate(processed) if dot(ray, pc) == 0)
            for ray in rays
        ]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        zero = [i for i, v in enumerate(vals) if v == 0]
        new_rays = [rays[i] for i in pos + zero]
        for ip, im in itertools.product(pos, neg):
            common = zsets[ip] & zsets[im]
            # Adjacency: no third ray vanishes on everything both vanish on.
            adjacent = True
            for other in range(len(rays)):
                if other in (ip, im):
                    continue
                if common <= zsets[other]:
                    adjacent = False
                    break
            if not adjacent:
                continue
            combo = vsub(vscale(vals[ip], rays[im]), vscale(vals[im], rays[ip]))
            new_rays.append(primitive(combo))
        processed.append(c)
        rays = []
        seen = set()
        for ray in new_rays:
            if ray not in seen:
                seen.add(ray)
                rays.append(ray)
    out = []
    for ray in rays:
        zero_gens = frozenset(
            g for g, c in zip(s.generators, constraints) if dot(ray, c) == 0
        )
        out.append(OracleFacet(primitive(ray), zero_gens))
    out.sort(key=lambda f: f.normal_in_span)
    return out


def extreme_rays(
    s: AffineSemigroup, dimension_cap: int = ORACLE_DIMENSION_CAP
) -> tuple[Vec, ...]:
    """Primitive generators (primitive inside the group) of the extreme rays."""
    if s.n > dimension_cap:
        raise OracleUnavailable(f"dimension {s.n} exceeds oracle cap {dimension_cap}")
    r = s.rank
    if r == 0:
        return ()
    if r == 1:
        return (_primitive_in_group(s, s.generators[0]),)
    facets = facet_oracle(s, dimension_cap)
    rays = set()
    for g in s.generators:
        incident = [f for f in facets if g in f.zero_generators]
        if not incident:
            continue
        common = set.intersection(*(set(f.zero_generators) for f in incident))
        if integer_rank(sorted(common), s.n) == 1:
            rays.add(_primitive_in_group(s, g))
    return tuple(sorted(rays))


def _primitive_in_group(s: AffineSemigroup, v: Vec) -> Vec:
    p = primitive(v)
    bound = 1
    if s.group.rank:
        # The scaling factor divides the largest invariant factor of the group.
        for d in smith_normal_form([list(row) for row in s.group.basis]):
            bound = max(bound, d)
    for t in range(1, bound + 1):
        cand = vscale(t, p)
        if s.group.member(cand):
            return cand
    raise RuntimeError("no small multiple of the ray direction lies in the group")
