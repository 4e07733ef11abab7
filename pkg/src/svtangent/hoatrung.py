"""The facet criterion for the Cohen-Macaulay and Gorenstein properties of
the semigroup ring.

For a facet F of the cone, the localized set S_F collects the group elements
x that land in the semigroup after adding some semigroup element lying on F.
The ring is Cohen-Macaulay iff the intersection of all S_F equals the
semigroup and, for every proper nonempty facet subset J, the difference
region G_J is empty or the incidence complex pi_J is acyclic.  It is
Gorenstein iff additionally the complement G_F of all the S_F is a single
shifted copy x0 - S of the semigroup.

Two routes decide S_F membership:

* `sf_member` is the literal bounded search: candidates y are sums of the
  generators lying on F.  If any y of coordinate sum <= B works, then so
  does N * y0, where y0 is the sum of all facet generators and N is the
  largest multiplicity in y (at most B/2), because the surplus N * y0 - y is
  again a sum of facet generators.  Scanning multiples of y0 is therefore
  complete up to the bound and usually finds members at tiny N.

* `facet_profile` is a closed form for S_F obtained from the same ray
  argument pushed to its limit.  Writing Z for the coordinates vanishing on
  the whole facet and f for the facet functional, membership in S_F is
  equivalent to: x in the group, x nonnegative on Z, f(x) >= 0, plus a
  parity condition when every generator on F has even coordinate sum (an
  even total, or some odd-sum generator g with g <= x on Z and f(g) <=
  f(x)).  For the facets arising here Z is the facet's own coordinate (or
  empty for balance facets), so both extra conditions collapse to a single
  threshold on the facet value.  The test suite checks the two routes
  against each other point by point on every small instance.

All region scans are exact within the reported window.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .lattice import Vec, vadd, vsub
from .membership import (
    SemigroupMembership,
    Window,
    default_bound,
    default_window,
    find_holes,
    structurally_normal_family,
)
from .model import AffineSemigroup, FacetId, facet_value
from .regions import EngineOverflow, Region
from .simplicial import AbstractComplex

DIRECT_SCAN_BUDGET = 400_000
SUBSET_CAP = 14
FACE_COUNT_CAP = 200_000


# ---------------------------------------------------------------------------
# Facet profiles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FacetProfile:
    """Closed-form description of the localized set S_F (see module doc)."""

    facet: FacetId
    face_gens: tuple[Vec, ...]
    y0: Vec
    mode: str  # "semigroup" (no facet generators, S_F = S) | "closed"
    parity_free: bool  # some facet generator has odd coordinate sum
    odd_threshold: Optional[int]  # min facet value over odd-sum generators


def facet_profile(s: AffineSemigroup, f: FacetId) -> FacetProfile:
    face_gens = s.facet_generators(f)
    n = s.n
    if not face_gens:
        return FacetProfile(f, (), (0,) * n, "semigroup", False, None)
    y0 = tuple(sum(g[p] for g in face_gens) for p in range(n))
    zero_positions = {p for p in range(n) if y0[p] == 0}
    expected = {s.params.position(f.i, f.j)} if f.kind == "coord" else set()
    if zero_positions != expected:
        raise RuntimeError(
            f"facet {f.label()} has unexpected vanishing coordinates; "
            "the closed form does not apply"
        )
    parity_free = sum(y0) % 2 == 1
    odd_vals = [facet_value(s.params, f, g) for g in s.generators if sum(g) % 2 == 1]
    odd_threshold = min(odd_vals) if odd_vals else None
    return FacetProfile(f, face_gens, y0, "closed", parity_free, odd_threshold)


def build_profiles(s: AffineSemigroup) -> dict[FacetId, FacetProfile]:
    return {f: facet_profile(s, f) for f in s.facets}


def profile_member(
    s: AffineSemigroup,
    membership: SemigroupMembership,
    profile: FacetProfile,
    x: Sequence[int],
) -> bool:
    """Exact S_F membership for x in the group, via the closed form."""
    if profile.mode == "semigroup":
        return membership.member(x)
    value = facet_value(s.params, profile.facet, x)
    if value < 0:
        return False
    if profile.parity_free or sum(x) % 2 == 0:
        return True
    if profile.odd_threshold is None:
        return False
    return value >= profile.odd_threshold


# ---------------------------------------------------------------------------
# Bounded localized membership (the literal search)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SFMembershipResult:
    facet: FacetId
    status: str  # "member" | "nonmember"
    witness: Optional[Vec] = None  # y on the facet with x + y in the semigroup
    bound: int = 0

    @property
    def is_member(self) -> bool:
        return self.status == "member"


def sf_member(
    s: AffineSemigroup,
    f: FacetId,
    x: Sequence[int],
    bound: int,
    membership: Optional[SemigroupMembership] = None,
) -> SFMembershipResult:
    """Bounded decision of x in S_F.

    A member answer is exact and carries the witness y in S cap F; a
    nonmember answer certifies that no y of coordinate sum <= bound works.
    """
    x = tuple(x)
    if not s.group_member(x):
        raise ValueError(f"{list(x)} is not in the group of the semigroup")
    membership = membership or SemigroupMembership(s)
    face_gens = s.facet_generators(f)
    if not face_gens:
        if membership.member(x):
            return SFMembershipResult(f, "member", (0,) * s.n, bound)
        return SFMembershipResult(f, "nonmember", None, bound)
    y0 = tuple(sum(g[p] for g in face_gens) for p in range(s.n))
    n_cap = (bound + 1) // 2
    y = (0,) * s.n
    for _ in range(n_cap + 1):
        if membership.member(vadd(x, y)):
            return SFMembershipResult(f, "member", y, bound)
        y = vadd(y, y0)
    return SFMembershipResult(f, "nonmember", None, bound)


# ---------------------------------------------------------------------------
# Region construction from profiles
# ---------------------------------------------------------------------------


def _apply_membership_atom(
    region: Region, s: AffineSemigroup, profile: FacetProfile, parity: int
) -> None:
    """Constrain the region to x in S_F, under the given total parity."""
    f = profile.facet
    if profile.mode == "semigroup":
        raise EngineOverflow("degenerate facet profile requires a direct scan")
    if profile.parity_free or parity == 0:
        threshold = 0
    elif profile.odd_threshold is None:
        region.mark_infeasible()
        return
    else:
        threshold = max(0, profile.odd_threshold)
    if f.kind == "coord":
        region.clamp_lo(s.params.position(f.i, f.j), threshold)
    else:
        region.clamp_balance_lo(f.i, threshold)


def _apply_nonmembership_atom(
    region: Region, s: AffineSemigroup, profile: FacetProfile, parity: int
) -> None:
    """Constrain the region to x not in S_F, under the given total parity."""
    f = profile.facet
    if profile.mode == "semigroup":
        raise EngineOverflow("degenerate facet profile requires a direct scan")
    if profile.parity_free or parity == 0:
        cutoff = -1
    elif profile.odd_threshold is None:
        return  # membership is impossible at odd parity: nothing to cut
    else:
        cutoff = max(0, profile.odd_threshold) - 1
    if f.kind == "coord":
        region.clamp_hi(s.params.position(f.i, f.j), cutoff)
    else:
        region.clamp_balance_hi(f.i, cutoff)


def _base_region(s: AffineSemigroup, radius: int, parity: Optional[int]) -> Region:
    n = s.n
    return Region(
        params=s.params,
        lo=[-radius] * n,
        hi=[radius] * n,
        group_tag=s.group_tag,
        total_parity=parity,
    )


def difference_regions(
    s: AffineSemigroup,
    profiles: dict[FacetId, FacetProfile],
    inside: Sequence[FacetId],
    outside: Sequence[FacetId],
    radius: int,
) -> list[Region]:
    """Regions (one per total parity) for the points of the box belonging to
    S_F for every F in `inside` and to no S_F with F in `outside`."""
    out = []
    for parity in (0, 1):
        region = _base_region(s, radius, parity)
        for f in inside:
            _apply_membership_atom(region, s, profiles[f], parity)
        for f in outside:
            _apply_nonmembership_atom(region, s, profiles[f], parity)
        out.append(region)
    return out


def _use_direct_scan(s: AffineSemigroup, profiles, radius: int) -> bool:
    if any(profiles[f].mode == "semigroup" for f in s.facets):
        return True  # degenerate profiles exist only in tiny dimensions
    return (2 * radius + 1) ** s.n <= DIRECT_SCAN_BUDGET


@dataclass
class _SigBucket:
    """All window points sharing one membership signature over the facets."""

    count: int = 0
    points: list = None  # first few points in scan order
    max_total: Optional[int] = None
    max_count: int = 0
    max_points: list = None
    sup: Optional[list] = None

    def add(self, v: Vec, keep: int = 24) -> None:
        self.count += 1
        if self.points is None:
            self.points = []
        if len(self.points) < keep:
            self.points.append(v)
        t = sum(v)
        if self.max_total is None or t > self.max_total:
            self.max_total, self.max_count, self.max_points = t, 1, [v]
        elif t == self.max_total:
            self.max_count += 1
            if len(self.max_points) < 4:
                self.max_points.append(v)
        if self.sup is None:
            self.sup = list(v)
        else:
            for i, x in enumerate(v):
                if x > self.sup[i]:
                    self.sup[i] = x


class _SignatureScanner:
    """Shared direct-scan state: one pass over the window box classifies every
    group point by the set of localized sets S_F containing it, so that every
    difference region afterwards is a dictionary lookup.

    A point lies in G_J exactly when its signature is the complement of J.
    """

    def __init__(self, s, membership, profiles, radius: int):
        self.s = s
        self.membership = membership
        self.profiles = profiles
        self.radius = radius
        self._table: Optional[dict[int, _SigBucket]] = None
        params = s.params
        self._evals = []
        for f in s.facets:
            p = profiles[f]
            if p.mode == "semigroup":
                self._evals.append(("semigroup", None, None, None))
                continue
            if f.kind == "coord":
                self._evals.append(
                    ("coord", params.position(f.i, f.j), p.parity_free, p.odd_threshold)
                )
            else:
                self._evals.append(
                    (
                        "balance",
                        tuple(params.block_positions(f.i)),
                        p.parity_free,
                        p.odd_threshold,
                    )
                )

    def signature(self, v: Vec) -> int:
        """Bitmask over the facet list of the S_F's containing v (v must be
        a group element)."""
        total = sum(v)
        even = total % 2 == 0
        sig = 0
        for t, (kind, where, parity_free, threshold) in enumerate(self._evals):
            if kind == "semigroup":
                if self.membership.member(v):
                    sig |= 1 << t
                continue
            value = v[where] if kind == "coord" else total - 2 * sum(
                v[q] for q in where
            )
            if value < 0:
                continue
            if parity_free or even:
                sig |= 1 << t
            elif threshold is not None and value >= threshold:
                sig |= 1 << t
        return sig

    def table(self) -> dict[int, _SigBucket]:
        if self._table is None:
            table: dict[int, _SigBucket] = {}
            r = self.radius
            group_member = self.s.group_member
            for v in itertools.product(range(-r, r + 1), repeat=self.s.n):
                if not group_member(v):
                    continue
                sig = self.signature(v)
                bucket = table.get(sig)
                if bucket is None:
                    bucket = table[sig] = _SigBucket()
                bucket.add(v)
            self._table = table
        return self._table


# ---------------------------------------------------------------------------
# The S' = S test
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SPrimeResult:
    status: str  # "holds" | "fails"
    witness: Optional[Vec] = None
    window_radius: int = 0
    bound: int = 0

    @property
    def holds(self) -> bool:
        return self.status == "holds"


def s_prime_equals_s(
    s: AffineSemigroup,
    window: Optional[Window] = None,
    bound: Optional[int] = None,
    membership: Optional[SemigroupMembership] = None,
    profiles: Optional[dict[FacetId, FacetProfile]] = None,
) -> SPrimeResult:
    """Does the intersection of all localized sets S_F equal the semigroup?

    Any element of that intersection lies in the cone and the group, so the
    scan runs over the window's holes; a fails answer is exact (the witness
    is re-verified by the bounded search on every facet), a holds answer is
    bounded by the scanned window.
    """
    window = window or default_window(s.params)
    bound = bound if bound is not None else default_bound(s.params, window)
    membership = membership or SemigroupMembership(s)
    profiles = profiles or build_profiles(s)

    def in_all(x: Vec) -> bool:
        return all(profile_member(s, membership, profiles[f], x) for f in s.facets)

    def verified(x: Vec) -> bool:
        return all(sf_member(s, f, x, bound, membership).is_member for f in s.facets)

    # Unit vectors first: the minimal witnesses live at coordinate sum one.
    params = s.params
    for i in range(params.k, 0, -1):
        for j in range(1, params.b[i - 1] + 1):
            e = tuple(1 if p == params.position(i, j) else 0 for p in range(params.n))
            if membership.member(e) or not s.group_member(e):
                continue
            if in_all(e):
                if not verified(e):
                    raise RuntimeError("closed form disagrees with bounded search")
                return SPrimeResult("fails", e, window.radius, bound)
    if structurally_normal_family(params) is not None:
        # The semigroup exhausts the cone points of its group, so there are
        # no holes to scan and the intersection cannot exceed the semigroup.
        return SPrimeResult("holds", None, window.radius, bound)
    holes = find_holes(s, window, membership)
    for x in holes.group:
        if in_all(x):
            if not verified(x):
                raise RuntimeError("closed form disagrees with bounded search")
            return SPrimeResult("fails", x, holes.window_radius, bound)
    return SPrimeResult("holds", None, holes.window_radius, bound)


# ---------------------------------------------------------------------------
# Facet-subset complexes
# ---------------------------------------------------------------------------


def _incidence_masks(s: AffineSemigroup) -> list[int]:
    masks = []
    for g in s.generators:
        m = 0
        for t, f in enumerate(s.facets):
            if facet_value(s.params, f, g) == 0:
                m |= 1 << t
        masks.append(m)
    return masks


def _maximal_masks(masks: Sequence[int], jmask: int) -> list[int]:
    cut = sorted({m & jmask for m in masks if m & jmask},
                 key=lambda m: -bin(m).count("1"))
    maximal: list[int] = []
    for m in cut:
        if not any(m & keep == m for keep in maximal):
            maximal.append(m)
    return maximal


def build_pi_j(s: AffineSemigroup, j_facets: Sequence[FacetId]) -> AbstractComplex:
    """The complex on J whose faces are the subsets of J supporting a common
    nonzero semigroup element.

    A nonzero semigroup element vanishes on a facet functional iff every
    generator in one of its decompositions does, so the face test reduces to
    a common generator.
    """
    j_facets = sorted(j_facets)
    faces = []
    for g in s.generators:
        incident = tuple(f for f in j_facets if facet_value(s.params, f, g) == 0)
        if incident:
            faces.append(incident)
    return AbstractComplex.from_faces(faces)


def _relabeled_key(maximal: list[int]) -> tuple[int, ...]:
    """Canonical form of the mask family under renaming vertices by their
    bit order; complexes with equal keys are equal after relabeling."""
    used = 0
    for m in maximal:
        used |= m
    mapping = {}
    dense = 0
    t = 0
    while used >> t:
        if used >> t & 1:
            mapping[t] = dense
            dense += 1
        t += 1
    out = []
    for m in maximal:
        r = 0
        for src, dst in mapping.items():
            if m >> src & 1:
                r |= 1 << dst
        out.append(r)
    return tuple(sorted(out))


def _acyclicity_from_masks(
    maximal: list[int],
    facet_order: Sequence[FacetId],
    cache: Optional[dict] = None,
) -> Optional[bool]:
    """Three-tier acyclicity: empty or coned complexes are acyclic; a nonzero
    reduced Euler characteristic certifies non-acyclicity; exact homology
    ranks decide the rest.  None means the complex was too large to expand
    (the caller then relies on the emptiness branch of the criterion)."""
    if not maximal:
        return True
    common = maximal[0]
    for m in maximal[1:]:
        common &= m
        if not common:
            break
    if common:
        return True  # a vertex in every maximal face cones the complex off
    key = _relabeled_key(maximal)
    if cache is not None and key in cache:
        return cache[key]
    if sum(1 << bin(m).count("1") for m in maximal) > FACE_COUNT_CAP:
        return None
    nbits = max(key).bit_length()
    faces = [tuple(t for t in range(nbits) if m >> t & 1) for m in key]
    complex_ = AbstractComplex.from_faces(faces)
    if complex_.euler_characteristic_reduced() != 0:
        result: Optional[bool] = False
    else:
        result = complex_.is_acyclic()
    if cache is not None:
        cache[key] = result
    return result


# ---------------------------------------------------------------------------
# Difference regions G_J
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GJResult:
    j_facets: tuple[FacetId, ...]
    status: str  # "empty" | "nonempty"
    points: tuple[Vec, ...] = ()
    window_radius: int = 0
    bound: int = 0

    @property
    def is_empty(self) -> bool:
        return self.status == "empty"


def _gj_scan(
    s: AffineSemigroup,
    membership: SemigroupMembership,
    profiles: dict[FacetId, FacetProfile],
    j_facets: Sequence[FacetId],
    window: Window,
    bound: int,
    limit: int,
    scanner: Optional[_SignatureScanner] = None,
) -> GJResult:
    j_set = set(j_facets)
    inside = [f for f in s.facets if f not in j_set]
    outside = sorted(j_set)
    radius = window.radius
    points: list[Vec] = []
    if _use_direct_scan(s, profiles, radius):
        if scanner is None or scanner.radius != radius:
            scanner = _SignatureScanner(s, membership, profiles, radius)
        jmask = sum(
            1 << t for t, f in enumerate(s.facets) if f in j_set
        )
        want = ((1 << len(s.facets)) - 1) ^ jmask
        bucket = scanner.table().get(want)
        if bucket is not None:
            points = list(bucket.points[:limit])
    else:
        for region in difference_regions(s, profiles, inside, outside, radius):
            points.extend(region.enumerate_points(limit - len(points)))
            if len(points) >= limit:
                break
        points = sorted(set(points))[:limit]
    if not points:
        return GJResult(tuple(sorted(j_facets)), "empty", (), radius, bound)
    _verify_gj_witness(s, membership, points[0], inside, outside, bound)
    return GJResult(tuple(sorted(j_facets)), "nonempty", tuple(points), radius, bound)


def _verify_gj_witness(s, membership, witness, inside, outside, bound) -> None:
    for f in inside:
        if not sf_member(s, f, witness, bound, membership).is_member:
            raise RuntimeError("difference-region witness fails bounded re-check")
    for f in outside:
        if sf_member(s, f, witness, bound, membership).is_member:
            raise RuntimeError("difference-region witness fails bounded re-check")


def gj_empty(
    s: AffineSemigroup,
    j_facets: Sequence[FacetId],
    window: Optional[Window] = None,
    bound: Optional[int] = None,
    membership: Optional[SemigroupMembership] = None,
    profiles: Optional[dict[FacetId, FacetProfile]] = None,
    limit: int = 24,
) -> GJResult:
    """Emptiness of G_J = (intersection of S_F, F outside J) minus (union of
    S_F, F in J), scanned exactly within the window."""
    j_facets = tuple(j_facets)
    if not j_facets or len(j_facets) >= len(s.facets):
        raise ValueError("J must be a proper nonempty subset of the facet set")
    if any(f not in s.facets for f in j_facets):
        raise ValueError("unknown facet in J")
    window = window or default_window(s.params)
    bound = bound if bound is not None else default_bound(s.params, window)
    membership = membership or SemigroupMembership(s)
    profiles = profiles or build_profiles(s)
    return _gj_scan(s, membership, profiles, j_facets, window, bound, limit)


# ---------------------------------------------------------------------------
# The Cohen-Macaulay verdict
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class JRecord:
    j_facets: tuple[FacetId, ...]
    acyclic: Optional[bool]
    gj: Optional[GJResult]
    pi_maximal: tuple[tuple[FacetId, ...], ...] = ()
    homology_ranks: Optional[tuple[int, ...]] = None

    def to_dict(self) -> dict:
        return {
            "J": [f.label() for f in self.j_facets],
            "pi_maximal_faces": [[f.label() for f in face] for face in self.pi_maximal],
            "homology_ranks": list(self.homology_ranks)
            if self.homology_ranks is not None
            else None,
            "acyclic": self.acyclic,
            "gj_status": self.gj.status if self.gj else None,
            "gj_points": [list(p) for p in self.gj.points] if self.gj else None,
        }


@dataclass(frozen=True)
class CMVerdict:
    status: str  # "cm" | "not-cm" | "undetermined"
    reason: str
    sprime: Optional[SPrimeResult] = None
    j_records: tuple[JRecord, ...] = ()
    window_radius: int = 0
    bound: int = 0

    @property
    def is_cm(self) -> bool:
        return self.status == "cm"


def cm_verdict(
    s: AffineSemigroup,
    window: Optional[Window] = None,
    bound: Optional[int] = None,
    membership: Optional[SemigroupMembership] = None,
    profiles: Optional[dict[FacetId, FacetProfile]] = None,
    subset_cap: int = SUBSET_CAP,
    full_evidence: bool = False,
) -> CMVerdict:
    """Cohen-Macaulay iff S' = S and every proper nonempty facet subset J has
    G_J empty or pi_J acyclic.

    Subsets are visited in mask order; the loop short-circuits on the first
    violated J unless full evidence is requested, in which case every J
    record carries both the acyclicity answer and the region scan.
    """
    window = window or default_window(s.params)
    bound = bound if bound is not None else default_bound(s.params, window)
    membership = membership or SemigroupMembership(s)
    if not s.generators:
        return CMVerdict(
            "cm", "zero semigroup: polynomial ring", None, (), window.radius, bound
        )
    profiles = profiles or build_profiles(s)
    sprime = s_prime_equals_s(s, window, bound, membership, profiles)
    if not sprime.holds:
        return CMVerdict(
            "not-cm",
            f"localized intersection exceeds the semigroup at {list(sprime.witness)}",
            sprime,
            (),
            window.radius,
            bound,
        )
    nf = len(s.facets)
    if nf > subset_cap:
        return CMVerdict(
            "undetermined",
            f"{nf} facets exceed the subset cap {subset_cap}",
            sprime,
            (),
            window.radius,
            bound,
        )
    facet_order = list(s.facets)
    masks = _incidence_masks(s)
    scanner = _SignatureScanner(s, membership, profiles, window.radius)
    acyclicity_cache: dict = {}
    records: list[JRecord] = []
    failure: Optional[JRecord] = None
    undetermined_reason: Optional[str] = None
    for jmask in range(1, (1 << nf) - 1):
        j_facets = tuple(f for t, f in enumerate(facet_order) if jmask >> t & 1)
        maximal = _maximal_masks(masks, jmask)
        acyclic = _acyclicity_from_masks(maximal, facet_order, acyclicity_cache)
        gj: Optional[GJResult] = None
        if acyclic is not True or full_evidence:
            try:
                gj = _gj_scan(
                    s, membership, profiles, j_facets, window, bound, limit=24,
                    scanner=scanner,
                )
            except EngineOverflow as err:
                return CMVerdict(
                    "undetermined",
                    f"region scan over budget for J="
                    f"{[f.label() for f in j_facets]}: {err}",
                    sprime,
                    tuple(records),
                    window.radius,
                    bound,
                )
        pi_maximal: tuple = ()
        ranks: Optional[tuple[int, ...]] = None
        if full_evidence:
            pi_maximal = tuple(
                tuple(f for t, f in enumerate(facet_order) if m >> t & 1)
                for m in maximal
            )
            if sum(1 << bin(m).count("1") for m in maximal) <= FACE_COUNT_CAP:
                ranks = tuple(
                    AbstractComplex.from_faces(pi_maximal).reduced_homology_ranks()
                )
        record = JRecord(j_facets, acyclic, gj, pi_maximal, ranks)
        if full_evidence:
            records.append(record)
        if gj is not None and not gj.is_empty:
            if acyclic is False and failure is None:
                failure = record
                if not full_evidence:
                    break
            elif acyclic is None and undetermined_reason is None:
                undetermined_reason = (
                    f"complex too large for J={[f.label() for f in j_facets]} "
                    "and its region is nonempty"
                )
                if not full_evidence:
                    break
    if failure is not None:
        return CMVerdict(
            "not-cm",
            f"J={[f.label() for f in failure.j_facets]} has a non-acyclic complex "
            f"and a nonempty region (witness {list(failure.gj.points[0])})",
            sprime,
            tuple(records) if full_evidence else (failure,),
            window.radius,
            bound,
        )
    if undetermined_reason is not None:
        return CMVerdict(
            "undetermined", undetermined_reason, sprime, tuple(records),
            window.radius, bound,
        )
    return CMVerdict(
        "cm",
        "localized intersection equals the semigroup and every facet subset "
        "is empty-or-acyclic",
        sprime,
        tuple(records),
        window.radius,
        bound,
    )


# ---------------------------------------------------------------------------
# The Gorenstein witness
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GorensteinResult:
    status: str  # "consistent" | "refuted" | "undetermined"
    x0: Optional[Vec] = None
    max_sum_points: tuple[Vec, ...] = ()
    coordwise_sup: Optional[Vec] = None
    sup_in_group: Optional[bool] = None
    counterexample: Optional[Vec] = None
    reason: str = ""
    window_radius: int = 0
    safe_radius: int = 0

    @property
    def is_consistent(self) -> bool:
        return self.status == "consistent"


def _gf_regions(
    s: AffineSemigroup, profiles: dict[FacetId, FacetProfile], radius: int
) -> list[Region]:
    return difference_regions(
        s, profiles, inside=[], outside=list(s.facets), radius=radius
    )


def _gf_member(s, membership, profiles, x) -> bool:
    return s.group_member(x) and not any(
        profile_member(s, membership, profiles[f], x) for f in s.facets
    )


def _gf_bucket(scanner: _SignatureScanner) -> Optional[_SigBucket]:
    return scanner.table().get(0)


def _branch_caps(s: AffineSemigroup, profiles, parity: int):
    """Upper bounds imposed by the G_F exclusions at one total parity.

    Returns (coordinate caps, balance caps): entry None means no finite cap
    from that facet at this parity.  Exclusion from S_F caps the facet value
    at -1 on the even branch (or always, for parity-free facets); on the odd
    branch the cap is the odd threshold minus one, or nothing when odd-sum
    membership is impossible anyway.
    """
    ub: dict[int, int] = {}
    eb: dict[int, int] = {}
    for f in s.facets:
        p = profiles[f]
        if p.parity_free or parity == 0:
            cap: Optional[int] = -1
        elif p.odd_threshold is None:
            cap = None
        else:
            cap = max(0, p.odd_threshold) - 1
        if cap is None:
            continue
        if f.kind == "coord":
            pos = s.params.position(f.i, f.j)
            ub[pos] = min(ub.get(pos, cap), cap)
        else:
            eb[f.i] = min(eb.get(f.i, cap), cap)
    return ub, eb


def _branch_infeasible(s: AffineSemigroup, parity: int) -> bool:
    from .model import GROUP_BALANCED, GROUP_EVEN

    if parity == 1 and s.group_tag in (GROUP_BALANCED, GROUP_EVEN):
        return True  # those groups only contain even coordinate sums
    return False


def _gorenstein_rank_one(
    s: AffineSemigroup,
    membership: SemigroupMembership,
    window: Window,
) -> GorensteinResult:
    """Gorenstein witness for one-dimensional semigroups.

    The single facet is the origin, so the complement is the whole group
    minus the semigroup, a set of multiples of the primitive direction u.
    The multiples in the semigroup form a numerical semigroup whose gaps are
    bounded by the square of the largest generator multiple, so the largest
    gap is found exactly and uniqueness is automatic on a line.
    """
    from .model import _primitive_in_group

    u = _primitive_in_group(s, s.generators[0])
    step = sum(u)
    multiples = sorted({sum(g) // step for g in s.generators})
    t_cap = multiples[-1] ** 2 + multiples[-1] + 2
    in_sg = {t: membership.member(tuple(t * c for c in u)) for t in range(t_cap + 1)}
    gaps = [t for t in range(t_cap + 1) if not in_sg[t]]
    t_star = max(gaps) if gaps else -1
    x0 = tuple(t_star * c for c in u)
    for t in range(-t_cap - abs(t_star) - 2, t_cap + 1):
        in_gf = not membership.member(tuple(t * c for c in u))
        shifted = membership.member(tuple((t_star - t) * c for c in u))
        if in_gf != shifted:
            return GorensteinResult(
                "refuted",
                x0,
                (x0,),
                counterexample=tuple(t * c for c in u),
                reason="the complement is not the shifted semigroup at the witness",
                window_radius=window.radius,
                safe_radius=t_cap,
            )
    return GorensteinResult(
        "consistent", x0, (x0,),
        reason="complement equals the shifted semigroup along the line",
        window_radius=window.radius, safe_radius=t_cap,
    )


def _gf_branch_certified(
    s: AffineSemigroup, profiles, parity: int, m: int, radius: int
) -> bool:
    """Certificate that the parity branch of G_F has no element of
    coordinate sum >= m outside the open box of the given radius.

    Builds an upper bound U on the sum over the unboxed branch from the
    exclusion caps (coordinate caps summed per block; balance caps combined
    through the identities tying balances to the total), then per-coordinate
    lower bounds for any point of sum >= m.  When every lower bound clears
    the box, the boxed extremal data is the global extremal data.
    """
    if _branch_infeasible(s, parity):
        return True
    params = s.params
    ub, eb = _branch_caps(s, profiles, parity)
    k = params.k
    su: list[Optional[int]] = []
    for i in range(1, k + 1):
        caps = [ub.get(q) for q in params.block_positions(i)]
        su.append(sum(caps) if all(c is not None for c in caps) else None)
    candidates: list[int] = []
    if all(x is not None for x in su):
        candidates.append(sum(su))
    if k >= 3 and all(i in eb for i in range(1, k + 1)):
        candidates.append(sum(eb.values()) // (k - 2))
    from .model import GROUP_BALANCED

    if s.group_tag == GROUP_BALANCED:
        for x in su:
            if x is not None:
                candidates.append(2 * x)
    for i in range(1, k + 1):
        if i in eb and su[i - 1] is not None:
            candidates.append(eb[i] + 2 * su[i - 1])
    if not candidates:
        return False
    u_bound = min(candidates)
    if u_bound < m:
        return True  # no branch point reaches sum m at all
    for i in range(1, k + 1):
        lows: list[int] = []
        if all(su[l] is not None for l in range(k) if l != i - 1):
            lows.append(m - sum(su[l] for l in range(k) if l != i - 1))
        if i in eb:
            lows.append(-((eb[i] - m) // 2))  # ceil((m - e) / 2)
        if s.group_tag == GROUP_BALANCED:
            lows.append(-((-m) // 2))  # block sums are half the total
        if not lows:
            return False
        sl = max(lows)
        positions = list(params.block_positions(i))
        for q in positions:
            other_caps = [ub.get(t) for t in positions if t != q]
            if any(c is None for c in other_caps):
                return False
            if sl - sum(other_caps) <= -radius:
                return False
    return True


def _gf_extremal(
    s: AffineSemigroup,
    membership: SemigroupMembership,
    profiles,
    radius: int,
) -> tuple[Optional[int], int, list[Vec], bool]:
    """Boxed extremal data of G_F plus a flag telling whether the box
    provably contains every global extremal element."""
    if _use_direct_scan(s, profiles, radius):
        scanner = _SignatureScanner(s, membership, profiles, radius)
        bucket = _gf_bucket(scanner)
        if bucket is None:
            best, count, points = None, 0, []
        else:
            best, count, points = bucket.max_total, bucket.max_count, list(bucket.max_points)
    else:
        best, count, points = None, 0, []
        for region in _gf_regions(s, profiles, radius):
            t, c, pts = region.max_total(point_limit=4)
            if t is None:
                continue
            if best is None or t > best:
                best, count, points = t, c, list(pts)
            elif t == best:
                count += c
                points.extend(pts)
    if best is None:
        return None, 0, [], False
    certified = all(
        _gf_branch_certified(s, profiles, parity, best, radius) for parity in (0, 1)
    )
    return best, count, points, certified


def gorenstein_witness(
    s: AffineSemigroup,
    window: Optional[Window] = None,
    bound: Optional[int] = None,
    membership: Optional[SemigroupMembership] = None,
    profiles: Optional[dict[FacetId, FacetProfile]] = None,
) -> GorensteinResult:
    """Search for x0 with G_F = x0 - S (callers must have checked CM).

    Since zero is the unique semigroup element of minimal coordinate sum, a
    valid x0 is the unique element of G_F of maximal coordinate sum; a tie
    refutes, with the componentwise supremum of G_F reported as evidence.  A
    unique candidate is then checked against the shifted semigroup over the
    safe sub-box (shrunk by the largest generator coordinate so that x0 - z
    never escapes scanned territory).
    """
    window = window or default_window(s.params)
    bound = bound if bound is not None else default_bound(s.params, window)
    membership = membership or SemigroupMembership(s)
    radius = window.radius
    if not s.facets:
        zero = (0,) * s.n
        return GorensteinResult(
            "consistent", zero, (zero,), zero, True,
            reason="zero semigroup: the model is a point",
            window_radius=radius, safe_radius=radius,
        )
    profiles = profiles or build_profiles(s)
    if s.rank <= 1:
        return _gorenstein_rank_one(s, membership, window)
    best = None
    count, points = 0, []
    for attempt in range(3):
        scan_radius = radius * (2 ** attempt)
        try:
            best, count, points, certified = _gf_extremal(
                s, membership, profiles, scan_radius
            )
        except EngineOverflow as err:
            return GorensteinResult(
                "undetermined", reason=f"region scan over budget: {err}",
                window_radius=scan_radius,
            )
        if best is not None and certified:
            radius = scan_radius
            break
    else:
        reason = (
            "no extremal element inside the window"
            if best is None
            else "extremal elements could not be certified inside any window"
        )
        return GorensteinResult("undetermined", reason=reason, window_radius=radius)
    scanner = _SignatureScanner(s, membership, profiles, radius)
    points = sorted(set(points))
    if count != 1:
        sup = _coordwise_sup(s, membership, profiles, radius, scanner)
        return GorensteinResult(
            "refuted",
            None,
            tuple(points[:4]),
            sup,
            s.group.member(sup) if sup is not None else None,
            reason=f"{count} extremal elements share the maximal coordinate sum",
            window_radius=radius,
        )
    x0 = points[0]
    safe = radius - s.max_generator_coordinate()
    if safe < 1:
        return GorensteinResult(
            "undetermined", x0, (x0,), reason="window too small for the shifted check",
            window_radius=radius, safe_radius=safe,
        )
    try:
        counterexample = _consistency_counterexample(
            s, membership, profiles, x0, safe, scanner
        )
    except EngineOverflow as err:
        return GorensteinResult(
            "undetermined", x0, (x0,),
            reason=f"shifted check over budget: {err}",
            window_radius=radius, safe_radius=safe,
        )
    if counterexample == "undetermined":
        return GorensteinResult(
            "undetermined", x0, (x0,),
            reason="shifted check out of reach at this dimension",
            window_radius=radius, safe_radius=safe,
        )
    if counterexample is not None:
        return GorensteinResult(
            "refuted",
            x0,
            (x0,),
            counterexample=counterexample,
            reason="the complement is not the shifted semigroup at the witness",
            window_radius=radius,
            safe_radius=safe,
        )
    return GorensteinResult(
        "consistent", x0, (x0,),
        reason="complement equals the shifted semigroup over the safe box",
        window_radius=radius, safe_radius=safe,
    )


def _coordwise_sup(
    s: AffineSemigroup,
    membership: SemigroupMembership,
    profiles: dict[FacetId, FacetProfile],
    radius: int,
    scanner: _SignatureScanner,
) -> Optional[Vec]:
    """Componentwise supremum of G_F over the window, when it is nonempty."""
    if _use_direct_scan(s, profiles, radius):
        bucket = _gf_bucket(scanner)
        return tuple(bucket.sup) if bucket is not None else None
    out = []
    for pos in range(s.n):
        best: Optional[int] = None
        for region in _gf_regions(s, profiles, radius):
            v = region.max_coordinate(pos)
            if v is not None and (best is None or v > best):
                best = v
        if best is None:
            return None
        out.append(best)
    return tuple(out)


def _consistency_counterexample(
    s: AffineSemigroup,
    membership: SemigroupMembership,
    profiles: dict[FacetId, FacetProfile],
    x0: Vec,
    safe: int,
    scanner: _SignatureScanner,
):
    """A z in the safe box witnessing G_F != x0 - S, None if there is none,
    or the string "undetermined" when the search cannot be completed."""
    if _use_direct_scan(s, profiles, safe):
        for z in itertools.product(range(-safe, safe + 1), repeat=s.n):
            if not s.group_member(z):
                continue
            in_gf = scanner.signature(z) == 0
            shifted = membership.member(vsub(x0, z))
            if in_gf != shifted:
                return z
        return None
    return _consistency_engine(s, membership, profiles, x0, safe)


def _consistency_engine(
    s: AffineSemigroup,
    membership: SemigroupMembership,
    profiles: dict[FacetId, FacetProfile],
    x0: Vec,
    safe: int,
):
    """Engine-based consistency check for large dimensions.

    Side (a) looks for z in G_F with x0 - z outside the semigroup: the
    failure is a negative coordinate of x0 - z, a violated balance
    inequality, or a parity hole; the first two are linear in z, and parity
    holes cannot occur for the structurally normal families (where the
    semigroup exhausts the cone points of its group) nor for semigroups
    without odd-sum generators.  Side (b) looks for z in some S_F with
    x0 - z in the semigroup; fixing the parity branch (and the reducing
    odd generator, if any) makes that linear in z as well.
    """
    params = s.params
    balance_blocks = s.cone.balance_blocks

    def balance_of(v: Sequence[int], i: int) -> int:
        return sum(v) - 2 * params.block_sum(v, i)

    # Side (a), negative coordinate of x0 - z.
    for pos in range(s.n):
        for region in _gf_regions(s, profiles, safe):
            region.clamp_lo(pos, x0[pos] + 1)
            z = region.find_point()
            if z is not None:
                if membership.member(vsub(x0, z)):
                    raise RuntimeError("consistency engine produced a bad witness")
                return z
    # Side (a), violated balance inequality of x0 - z.
    for i in balance_blocks:
        for region in _gf_regions(s, profiles, safe):
            region.clamp_balance_lo(i, balance_of(x0, i) + 1)
            z = region.find_point()
            if z is not None:
                if membership.member(vsub(x0, z)):
                    raise RuntimeError("consistency engine produced a bad witness")
                return z
    # Side (a), parity holes of x0 - z.
    has_odd_gens = any(sum(g) % 2 for g in s.generators)
    parity_hole_possible = structurally_normal_family(params) is None
    if parity_hole_possible and not has_odd_gens:
        # An odd-sum x0 - z is never a member here, so any z in G_F of the
        # complementary parity is a counterexample.
        target = (sum(x0) + 1) % 2
        for region in _gf_regions(s, profiles, safe):
            if region.total_parity == target:
                z = region.find_point()
                if z is not None:
                    if membership.member(vsub(x0, z)):
                        raise RuntimeError("consistency engine produced a bad witness")
                    return z
        parity_hole_possible = False
    # Side (b): z in some S_F with x0 - z in the semigroup.
    for f in s.facets:
        for parity_of_u in (0, 1):
            reducers: list[Optional[Vec]]
            if parity_of_u == 0:
                reducers = [None]
            else:
                reducers = [g for g in s.generators if sum(g) % 2]
            target_parity = (sum(x0) + parity_of_u) % 2
            for reducer in reducers:
                shift = reducer if reducer is not None else (0,) * s.n
                region = _base_region(s, safe, target_parity)
                _apply_membership_atom(region, s, profiles[f], target_parity)
                for pos in range(s.n):
                    region.clamp_hi(pos, x0[pos] - shift[pos])
                for i in balance_blocks:
                    region.clamp_balance_hi(
                        i, balance_of(x0, i) - balance_of(shift, i)
                    )
                z = region.find_point()
                if z is not None:
                    if _gf_member(s, membership, profiles, z) or not membership.member(
                        vsub(x0, z)
                    ):
                        raise RuntimeError("consistency engine produced a bad witness")
                    return z
    if parity_hole_possible and has_odd_gens:
        return "undetermined"
    return None
