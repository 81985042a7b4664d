import pytest

from wqlat.order import (
    BallCapExceeded,
    ElementOutsideBall,
    JoinResult,
    check_weak_ql,
    oracle_join,
    verify_join,
)
from wqlat.presets import ACCEPTANCE_PRESETS

from conftest import ball_of, pres_of, table_of


class TestBallEnumeration:
    def test_free_radius_two(self):
        pres = pres_of("free:2")
        ball = ball_of("free:2", 2)
        names = {pres.canonical_str(x) for x in ball}
        assert names == {"e", "a", "b", "a^2", "a b", "b a", "b^2"}
        assert len(ball) == 7

    def test_scarparo_radius_two(self):
        pres = pres_of("scarparo")
        ball = ball_of("scarparo", 2)
        assert {pres.canonical_str(x) for x in ball} == {"e", "b", "b a", "b^2"}

    def test_radius_zero(self):
        for name in ("free:2", "bs:2,-3", "hnn-:x,y@x,y"):
            ball = ball_of(name, 0)
            assert list(ball) == [pres_of(name).identity()]

    def test_identity_at_index_zero(self):
        for name in ACCEPTANCE_PRESETS:
            ball = ball_of(name, 3)
            assert ball.position(pres_of(name).identity()) == 0

    def test_cap(self):
        with pytest.raises(BallCapExceeded):
            pres_of("free:2").enumerate_ball(7)
        pres_of("free:2").enumerate_ball(7, cap=7)


class TestLeq:
    def test_free_prefix_order(self):
        pres = pres_of("free:2")
        assert pres.leq(pres.parse("a"), pres.parse("a b"))
        assert not pres.leq(pres.parse("a b"), pres.parse("a"))

    def test_generic_route_is_quotient_positivity(self):
        for name in ("free:2", "bs:2,3", "hnn-:x,y@x,y"):
            pres = pres_of(name)
            ball = ball_of(name, 3)
            for x in ball:
                for y in ball:
                    assert pres.leq(x, y) == pres.is_positive(pres.mul(pres.inv(x), y))


class TestOracle:
    def test_prefix_pair(self):
        pres = pres_of("free:2")
        ball = ball_of("free:2", 4)
        r = oracle_join(pres, pres.parse("a"), pres.parse("a b"), ball)
        assert r == JoinResult.finite(pres.parse("a b"))

    def test_empty_candidate_set_is_inconclusive(self):
        pres = pres_of("free:2")
        ball = ball_of("free:2", 4)
        r = oracle_join(pres, pres.parse("a"), pres.parse("b"), ball)
        assert r.is_inconclusive and r.radius == 4

    def test_bs12_join_of_generators(self):
        pres = pres_of("bs:1,2")
        ball = ball_of("bs:1,2", 6)
        a, b = pres.parse("a"), pres.parse("b")
        r = oracle_join(pres, a, b, ball)
        assert r == JoinResult.finite(pres.parse("a b"))
        assert pres.parse("a b") == pres.parse("b^2 a")

    def test_element_outside_ball(self):
        pres = pres_of("free:2")
        ball = ball_of("free:2", 2)
        with pytest.raises(ElementOutsideBall):
            oracle_join(pres, pres.parse("a^3"), pres.parse("a"), ball)


class TestVerifyJoin:
    def test_accepts_true_join(self):
        pres = pres_of("free:2")
        ball = ball_of("free:2", 4)
        assert verify_join(pres, pres.parse("a"), pres.parse("a b"), pres.parse("a b"), ball)

    def test_rejects_non_minimal(self):
        pres = pres_of("free:2")
        ball = ball_of("free:2", 4)
        assert not verify_join(pres, pres.parse("a"), pres.parse("a b"), pres.parse("a b a"), ball)

    def test_bs12_generator_join(self):
        pres = pres_of("bs:1,2")
        ball = ball_of("bs:1,2", 6)
        assert verify_join(pres, pres.parse("a"), pres.parse("b"), pres.parse("a b"), ball)


class TestWeakQlScan:
    def test_quasi_lattices_are_clean(self):
        for name in ("free:2", "scarparo"):
            assert check_weak_ql(pres_of(name), ball_of(name, 4), table_of(name, 4)) == []

    def test_nonexample_reports_witness_pair(self):
        pres = pres_of("sd:nonexample")
        findings = check_weak_ql(pres, ball_of("sd:nonexample", 4))
        assert findings
        p, q = pres.metadata["witness_pair"]
        target = sorted([pres.canonical_str(p), pres.canonical_str(q)])
        hits = [f for f in findings if f["pair"] == target]
        assert len(hits) == 1
        bounds = sorted(pres.canonical_str(b) for b in pres.metadata["witness_bounds"])
        assert hits[0]["upper_bounds"] == bounds
        assert hits[0]["classification"] == "violation candidate within ball"


class TestSharedLaws:
    def test_partial_order_axioms_on_every_preset(self):
        import numpy as np

        for name in ACCEPTANCE_PRESETS:
            ball = ball_of(name, 4)
            table = table_of(name, 4)
            n = len(ball)
            rel = np.array([table.row(i) for i in range(n)])
            assert rel.diagonal().all(), name
            assert not (rel & rel.T & ~np.eye(n, dtype=bool)).any(), name
            closure = (rel.astype(int) @ rel.astype(int)) > 0
            assert not (closure & ~rel).any(), name

    def test_cone_meets_its_inverse_only_at_identity(self):
        for name in ACCEPTANCE_PRESETS:
            pres = pres_of(name)
            for x in ball_of(name, 4):
                if x != pres.identity():
                    assert not pres.is_positive(pres.inv(x)), name

    def test_left_invariance(self):
        for name in ("free:2", "scarparo", "bs:2,-3", "bs:2,3", "sd:swap2"):
            pres = pres_of(name)
            small = ball_of(name, 3)
            for x in small:
                for y in small:
                    if not pres.leq(x, y):
                        continue
                    for z in small:
                        assert pres.leq(pres.mul(z, x), pres.mul(z, y)), name

    def test_join_laws(self):
        for name in ACCEPTANCE_PRESETS:
            pres = pres_of(name)
            ball = ball_of(name, 3)
            big = ball_of(name, 5)
            table = table_of(name, 5)
            e = pres.identity()
            for x in ball:
                assert pres.join(x, x) == JoinResult.finite(x), name
                assert pres.join(e, x) == JoinResult.finite(x), name
                for y in ball:
                    r, r2 = pres.join(x, y), pres.join(y, x)
                    assert r == r2 or (r.is_inconclusive and r2.is_inconclusive), name
                    if r.is_finite:
                        assert pres.is_positive(r.value), name
                        assert verify_join(pres, x, y, r.value, big, table), name
