import itertools

import pytest

from svtangent.membership import SemigroupMembership, Window
from svtangent.model import FacetId, build_semigroup
from svtangent.hoatrung import (
    build_pi_j,
    build_profiles,
    cm_verdict,
    gj_empty,
    gorenstein_witness,
    profile_member,
    s_prime_equals_s,
    sf_member,
)

F11 = FacetId("coord", 1, 1)
F12 = FacetId("coord", 1, 2)
F21 = FacetId("coord", 2, 1)
F22 = FacetId("coord", 2, 2)
B1 = FacetId("balance", 1)


def model(a, b):
    s = build_semigroup(a, b)
    return s, SemigroupMembership(s), build_profiles(s)


class TestFaceGenerators:
    def test_mixed_degree_facet(self):
        s = build_semigroup([1, 2], [1, 2])
        gens = s.facet_generators(F11)
        assert all(g[0] == 0 for g in gens)
        assert set(gens) == {(0, 2, 0), (0, 1, 1), (0, 0, 2)}

    def test_balance_facet_of_segre_point(self):
        s = build_semigroup([1, 1], [1, 1])
        # The single facet of this ray is the origin; its generator list is
        # empty and the balance hyperplanes contain the whole cone.
        assert s.facet_generators(s.facets[0]) == ()

    def test_balance_facet_mixed(self):
        s = build_semigroup([1, 2], [1, 1])
        assert s.facet_generators(B1) == ((1, 1),)

    def test_coordinate_facet_two_by_two(self):
        s = build_semigroup([2, 2], [1, 1])
        assert s.facet_generators(F21) == ((2, 0),)


class TestSfMember:
    def test_two_by_two_nonmember(self):
        s, m, _ = model([2, 2], [1, 1])
        r = sf_member(s, F11, (0, 1), bound=96, membership=m)
        assert not r.is_member

    def test_two_by_two_member(self):
        s, m, _ = model([2, 2], [1, 1])
        r = sf_member(s, F11, (1, -2), bound=96, membership=m)
        assert r.is_member
        assert m.member(tuple(a + b for a, b in zip((1, -2), r.witness)))

    def test_unit_vector_member_on_coordinate_facet(self):
        s, m, _ = model([2, 2], [1, 2])
        r = sf_member(s, F11, (1, 0, 0), bound=96, membership=m)
        assert r.is_member

    def test_domain_error_outside_group(self):
        s, m, _ = model([2], [2])
        with pytest.raises(ValueError):
            sf_member(s, F11, (1, 0), bound=10, membership=m)

    def test_witness_lies_on_facet(self):
        s, m, _ = model([1, 2], [1, 2])
        r = sf_member(s, F11, (-1, 1, 2), bound=96, membership=m)
        if r.is_member:
            assert r.witness[0] == 0


class TestProfilesMatchBoundedSearch:
    @pytest.mark.parametrize(
        "a,b",
        [
            ([2, 2], [1, 1]),
            ([1, 2], [1, 1]),
            ([1, 2], [1, 2]),
            ([2], [2]),
            ([2], [3]),
            ([3], [1]),
            ([3], [2]),
            ([1, 1], [1, 2]),
            ([1, 1], [2, 2]),
            ([1, 1, 1], [1, 1, 1]),
            ([2, 3], [1, 1]),
        ],
    )
    def test_closed_form_equals_ray_search(self, a, b):
        s, m, profiles = model(a, b)
        radius = 4
        bound = 6 * max(a) * 2 * (max(a) + 2)
        for f in s.facets:
            for v in itertools.product(range(-radius, radius + 1), repeat=s.n):
                if not s.group_member(v):
                    continue
                closed = profile_member(s, m, profiles[f], v)
                searched = sf_member(s, f, v, bound, m).is_member
                assert closed == searched, (f.label(), v)

    def test_reference_set_descriptions(self):
        # Worked case with blocks of degree (2, 2) on singleton factors: the
        # localized set of the first coordinate facet is the open halfplane
        # x11 > 0 together with the even points of the axis x11 = 0.
        s, m, profiles = model([2, 2], [1, 1])
        for v in itertools.product(range(-5, 6), repeat=2):
            expected = v[0] > 0 or (v[0] == 0 and v[1] % 2 == 0)
            assert profile_member(s, m, profiles[F11], v) == expected
            expected21 = v[1] > 0 or (v[1] == 0 and v[0] % 2 == 0)
            assert profile_member(s, m, profiles[F21], v) == expected21

    def test_mixed_degree_set_descriptions(self):
        # Degrees (1, 2) on singleton factors: S_{F11} as above and the
        # balance set is the halfplane x11 <= x21.
        s, m, profiles = model([1, 2], [1, 1])
        for v in itertools.product(range(-5, 6), repeat=2):
            assert profile_member(s, m, profiles[F11], v) == (
                v[0] > 0 or (v[0] == 0 and v[1] % 2 == 0)
            )
            assert profile_member(s, m, profiles[B1], v) == (v[0] <= v[1])

    def test_mixed_degree_triple_descriptions(self):
        # Degrees (1, 2) with b = (1, 2): the two coordinate facets of the
        # second block localize to the halfspaces x2j >= 0.
        s, m, profiles = model([1, 2], [1, 2])
        for v in itertools.product(range(-4, 5), repeat=3):
            assert profile_member(s, m, profiles[F21], v) == (v[1] >= 0)
            assert profile_member(s, m, profiles[F22], v) == (v[2] >= 0)
            assert profile_member(s, m, profiles[B1], v) == (v[0] <= v[1] + v[2])

    def test_even_lattice_descriptions(self):
        # Single block of degree two: inside the even lattice the localized
        # sets are plain halfspaces.
        s, m, profiles = model([2], [2])
        for v in itertools.product(range(-5, 6), repeat=2):
            if sum(v) % 2:
                continue
            assert profile_member(s, m, profiles[F11], v) == (v[0] >= 0)
            assert profile_member(s, m, profiles[F12], v) == (v[1] >= 0)

    def test_upward_closed_under_semigroup(self):
        s, m, profiles = model([1, 2], [1, 2])
        members = [
            v for v in itertools.product(range(3), repeat=3) if m.member(v)
        ]
        for f in s.facets:
            for v in itertools.product(range(-3, 4), repeat=3):
                if not profile_member(s, m, profiles[f], v):
                    continue
                for g in members[:6]:
                    w = tuple(x + y for x, y in zip(v, g))
                    assert profile_member(s, m, profiles[f], w)

    def test_semigroup_contained_in_every_localized_set(self):
        s, m, profiles = model([2, 2], [1, 1])
        for v in itertools.product(range(7), repeat=2):
            if m.member(v):
                for f in s.facets:
                    assert profile_member(s, m, profiles[f], v)


class TestSPrime:
    def test_fails_with_unit_witness(self):
        s, m, _ = model([2, 2], [1, 2])
        r = s_prime_equals_s(s, membership=m)
        assert not r.holds
        assert r.witness in ((1, 0, 0), (0, 1, 0), (0, 0, 1))

    def test_holds_for_two_by_two(self):
        s, m, _ = model([2, 2], [1, 1])
        assert s_prime_equals_s(s, membership=m).holds

    def test_degree_three_fails_off_the_line(self):
        s, m, _ = model([3], [2])
        r = s_prime_equals_s(s, membership=m)
        assert not r.holds
        assert sum(r.witness) == 1

    def test_degree_three_on_the_line_holds(self):
        s, m, _ = model([3], [1])
        assert s_prime_equals_s(s, membership=m).holds


class TestPiJ:
    def test_pair_full_simplex(self):
        s = build_semigroup([1, 2], [1, 2])
        c = build_pi_j(s, [F11, F21])
        assert frozenset({F11, F21}) in {frozenset(f) for f in c.faces}
        assert c.is_acyclic()

    def test_pair_two_points(self):
        s = build_semigroup([1, 2], [1, 2])
        for pair in ([F11, B1], [F21, F22]):
            c = build_pi_j(s, pair)
            faces = {frozenset(f) for f in c.faces}
            assert frozenset(pair) not in faces
            assert not c.is_acyclic()

    def test_monotone_in_j(self):
        s = build_semigroup([1, 2], [1, 2])
        small = build_pi_j(s, [F11, F21])
        large = build_pi_j(s, [F11, F21, F22])
        assert small.faces <= large.faces


class TestGJ:
    def test_nonempty_with_verified_points(self):
        s, m, profiles = model([1, 2], [1, 2])
        r = gj_empty(s, [F11, F21], membership=m, profiles=profiles)
        assert not r.is_empty
        assert r.points

    def test_reference_points_belong(self):
        s, m, profiles = model([1, 2], [1, 2])

        def in_gj(x, J):
            ins = [f for f in s.facets if f not in J]
            return all(profile_member(s, m, profiles[f], x) for f in ins) and not any(
                profile_member(s, m, profiles[f], x) for f in J
            )

        assert in_gj((-1, -1, 5), {F11, F21})
        assert in_gj((1, -1, -1), {F21, F22, B1})
        assert in_gj((-1, -1, 5), {F11, F21})

    def test_empty_cases(self):
        s, m, profiles = model([1, 2], [1, 2])
        assert gj_empty(s, [F11, B1], membership=m, profiles=profiles).is_empty
        assert gj_empty(s, [F21, F22], membership=m, profiles=profiles).is_empty

    def test_rejects_improper_subsets(self):
        s, m, profiles = model([1, 2], [1, 2])
        with pytest.raises(ValueError):
            gj_empty(s, [], membership=m)
        with pytest.raises(ValueError):
            gj_empty(s, list(s.facets), membership=m)

    def test_engine_agrees_with_direct_scan(self):
        # Same scans through the block-sum engine and the point-by-point
        # route must agree on emptiness for every proper subset.
        from svtangent.hoatrung import _gj_scan
        from svtangent.membership import default_bound, default_window

        for a, b in [([1, 2], [1, 2]), ([2, 2], [1, 1]), ([1, 1], [2, 2])]:
            s, m, profiles = model(a, b)
            w = default_window(s.params)
            bound = default_bound(s.params, w)
            nf = len(s.facets)
            for jmask in range(1, (1 << nf) - 1):
                j = [f for t, f in enumerate(s.facets) if jmask >> t & 1]
                direct = _gj_scan(s, m, profiles, j, w, bound, limit=4)
                regions_only = _gj_scan(
                    s, m, profiles, j, Window(w.radius), bound, limit=4
                )
                assert direct.status == regions_only.status
                # force the engine path as well
                from svtangent.hoatrung import difference_regions

                inside = [f for f in s.facets if f not in set(j)]
                pts = []
                for region in difference_regions(
                    s, profiles, inside, sorted(set(j)), w.radius
                ):
                    pts.extend(region.enumerate_points(4))
                assert bool(pts) == (direct.status == "nonempty")


class TestCMAndGorenstein:
    def test_cm_fixtures(self):
        assert cm_verdict(build_semigroup([2, 2], [1, 1])).is_cm
        assert not cm_verdict(build_semigroup([2, 2], [1, 2])).is_cm
        assert cm_verdict(build_semigroup([2], [3])).is_cm

    def test_short_circuit_matches_full_evidence(self):
        s = build_semigroup([1, 2], [1, 2])
        short = cm_verdict(s)
        full = cm_verdict(s, full_evidence=True)
        assert short.status == full.status == "cm"
        assert len(full.j_records) == 2 ** len(s.facets) - 2

    def test_gorenstein_fixtures(self):
        g = gorenstein_witness(build_semigroup([1, 2], [1, 1]))
        assert g.is_consistent and g.x0 == (0, -1)
        g = gorenstein_witness(build_semigroup([3], [1]))
        assert g.is_consistent and g.x0 == (1,)
        g = gorenstein_witness(build_semigroup([2], [2]))
        assert g.is_consistent and g.x0 == (-1, -1)

    def test_gorenstein_refuted_for_odd_veronese_block(self):
        g = gorenstein_witness(build_semigroup([2], [3]))
        assert g.status == "refuted"
        assert g.coordwise_sup == (-1, -1, -1)
        assert g.sup_in_group is False

    def test_consistent_witness_stays_in_gf(self):
        s, m, profiles = model([2], [2])
        g = gorenstein_witness(s, membership=m, profiles=profiles)
        assert g.is_consistent
        from svtangent.hoatrung import _gf_member

        assert _gf_member(s, m, profiles, g.x0)
        for gen in s.generators:
            shifted = tuple(x - y for x, y in zip(g.x0, gen))
            assert _gf_member(s, m, profiles, shifted)

    def test_subset_cap_yields_undetermined(self):
        s = build_semigroup([1, 2], [1, 2])
        v = cm_verdict(s, subset_cap=2)
        assert v.status == "undetermined"
