import pytest

from polaris.embed import arises_from, natural_embedding, universal_embedding
from polaris.errors import UsageError
from polaris.polar import PointSet, closure, is_hyperplane, rank_nd, rank_of
from polaris.verify import (
    SamplePlan,
    check_corollary2,
    check_corollary3,
    check_prop5,
    check_theorem1,
    explore_problem5,
    search_nonarising_rank1,
)


def report_tuple(r):
    return (r.check, r.space, r.mode, r.sampled, r.applicable, r.passed,
            r.failed, tuple(sorted(r.skipped.items())),
            tuple(tuple(sorted(w.items())) for w in r.witnesses),
            tuple(tuple(sorted(e.items())) for e in r.exhibits),
            tuple(sorted(r.info.items())))


# ---------------------------------------------------------------------------
# theorem1
# ---------------------------------------------------------------------------

def test_theorem1_exhaustive_q42(space):
    Q = space("Q4_2")
    r = check_theorem1(Q, natural_embedding(Q), SamplePlan(mode="exhaustive"))
    assert r.failed == 0
    assert r.consistent()
    assert r.mode == "exhaustive"
    # the ten grid sections are the only applicable subspaces
    assert r.applicable == 10
    assert r.skipped["improper"] == 1


def test_theorem1_refuses_quotient_embedding(space):
    W = space("W3_2")
    with pytest.raises(UsageError, match="quotient"):
        check_theorem1(W, natural_embedding(W), SamplePlan())


def test_theorem1_refuses_grid(space):
    G = space("Qp3_2")
    with pytest.raises(UsageError, match="grid"):
        check_theorem1(G, natural_embedding(G), SamplePlan())


def test_theorem1_sampled_h34(space):
    H = space("H3_4")
    r = check_theorem1(H, natural_embedding(H), SamplePlan(seed=0, samples=200,
                                                           mode="random"))
    assert r.failed == 0 and r.consistent()
    # no proper subquadrangles exist in a 4-dim hermitian quadrangle,
    # so no proper sampled subspace can reach the rank_nd threshold
    assert r.applicable == 0
    assert not r.witnesses


def test_theorem1_sampled_replay_is_identical(space):
    Q = space("Q4_3")
    plan = SamplePlan(seed=7, samples=60, mode="random")
    a = check_theorem1(Q, natural_embedding(Q), plan)
    b = check_theorem1(Q, natural_embedding(Q), plan)
    assert report_tuple(a) == report_tuple(b)
    c = check_theorem1(Q, natural_embedding(Q), SamplePlan(seed=8, samples=60,
                                                           mode="random"))
    assert report_tuple(a) != report_tuple(c)


def test_theorem1_hull_embedding_accepted(space):
    W = space("W3_2")
    r = check_theorem1(W, universal_embedding(W), SamplePlan(mode="exhaustive"))
    assert r.failed == 0 and r.applicable > 0


# ---------------------------------------------------------------------------
# corollary2 / corollary3
# ---------------------------------------------------------------------------

def test_corollary2_exhaustive_w32(space):
    W = space("W3_2")
    r = check_corollary2(W, SamplePlan(mode="exhaustive"))
    assert r.failed == 0 and r.consistent()
    # 15 singular hyperplanes plus 10 grids
    assert r.applicable == 25


def test_corollary2_exhaustive_q42(space):
    Q = space("Q4_2")
    r = check_corollary2(Q, SamplePlan(mode="exhaustive"))
    assert r.failed == 0
    assert r.applicable == 25


def test_corollary2_sampled_q62(space):
    Q = space("Q6_2")
    r = check_corollary2(Q, SamplePlan(seed=0, samples=25, mode="random"))
    assert r.failed == 0 and r.consistent()
    assert r.applicable > 0


def test_corollary3_q62(space):
    Q = space("Q6_2")
    r = check_corollary3(Q, SamplePlan(seed=0, samples=30, mode="random"))
    assert r.failed == 0 and r.consistent()
    hist = r.info["rank_histogram"]
    assert set(hist) <= {2, 3}
    assert hist.get(3, 0) >= 63  # every singular hyperplane has full rank
    assert hist.get(2, 0) >= 1   # elliptic sections appear among 30 samples


@pytest.mark.parametrize("name", ["Qp5_2", "W5_2"])
def test_corollary3_other_rank3_spaces(name, space):
    r = check_corollary3(space(name), SamplePlan(seed=0, samples=40, mode="random"))
    assert r.failed == 0 and r.consistent()
    assert set(r.info["rank_histogram"]) <= {2, 3}


def test_corollary3_rejects_rank2(space):
    with pytest.raises(UsageError):
        check_corollary3(space("Q4_2"), SamplePlan())


def test_corollary3_section_ranks(space):
    # direct spot checks: tangent, elliptic, and hyperbolic sections of Q(6,2)
    from polaris.embed import preimage
    from polaris import linalg
    Q = space("Q6_2")
    emb = natural_embedding(Q)
    F = Q.field
    tangent = PointSet(Q, Q.adj[0])
    assert rank_of(Q, tangent) == 3
    counts = {}
    for functional in linalg.projective_reps(F, 7):
        H = preimage(emb, linalg.right_kernel(F, (functional,), 7))
        counts.setdefault((len(H), rank_of(Q, H)), 0)
        counts[(len(H), rank_of(Q, H))] += 1
    # 63 tangent hyperplanes (31 points, rank 3), q^3(q^3-1)/2 = 28 elliptic
    # (27 points, rank 2), q^3(q^3+1)/2 = 36 hyperbolic (35 points, rank 3)
    assert counts == {(31, 3): 63, (27, 2): 28, (35, 3): 36}


# ---------------------------------------------------------------------------
# prop5
# ---------------------------------------------------------------------------

def test_prop5_h34(space):
    H = space("H3_4")
    r = check_prop5(H, SamplePlan(seed=0, samples=300, mode="random"))
    assert r.failed == 0 and r.consistent()
    assert r.applicable > 0


def test_prop5_rejects_q42(space):
    with pytest.raises(UsageError):
        check_prop5(space("Q4_2"), SamplePlan())


def test_prop5_h39_built_from_spec_text():
    from polaris.specfile import build_space_from_spec, parse_spec
    text = ("field p=3 k=2\n"
            "form kind=hermitian dim=4\n"
            "row 1 0 0 0\n"
            "row 0 1 0 0\n"
            "row 0 0 1 0\n"
            "row 0 0 0 1\n")
    H = build_space_from_spec(parse_spec(text), label="H3_9")
    assert len(H.points) == 280
    r = check_prop5(H, SamplePlan(seed=0, samples=150, mode="random"))
    assert r.failed == 0 and r.consistent()


def test_corollary2_sampled_200_q62(space):
    Q = space("Q6_2")
    r = check_corollary2(Q, SamplePlan(seed=0, samples=200, mode="random"))
    assert r.failed == 0 and r.consistent()
    assert r.applicable > 0


# ---------------------------------------------------------------------------
# searches (experimental)
# ---------------------------------------------------------------------------

def test_search_rank1_q42_exhibits(space):
    Q = space("Q4_2")
    r = search_nonarising_rank1(Q, natural_embedding(Q),
                                SamplePlan(seed=0, samples=50, mode="random"))
    assert r.experimental and r.failed == 0
    assert r.exhibits
    # no exhibit uses only three points: plane sections of this quadric
    # are conics or line pairs, so non-collinear triples always arise
    assert all(len(e["points"]) >= 4 for e in r.exhibits)
    # every 4-point exhibit completes to a 5-point ovoid
    for e in r.exhibits:
        if len(e["points"]) == 4:
            assert len(e["preimage"]) == 5
    # witnesses replay: the reported subspace really fails in isolation
    e = r.exhibits[0]
    S = PointSet.of(Q, e["points"])
    verdict = arises_from(natural_embedding(Q), S)
    assert not verdict.arises
    assert verdict.preimage.indices() == e["preimage"]


def test_search_never_exhibits_singular(space):
    W = space("Sp4_3")
    r = search_nonarising_rank1(W, natural_embedding(W),
                                SamplePlan(seed=1, samples=40, mode="random"))
    for e in r.exhibits:
        S = PointSet.of(W, e["points"])
        from polaris.polar import is_singular
        assert not is_singular(W, S)


def test_explore_problem5_w32(space):
    W = space("W3_2")
    r = explore_problem5(W, SamplePlan(mode="exhaustive"))
    assert r.experimental
    # the six ovoids are the maximal rank-1 subspaces, and all are hyperplanes
    assert r.info["ovoid_hyperplanes"] == 6
    assert r.info["non_hyperplane_maximals"] == 0
    assert r.applicable == 6


def test_explore_problem5_q42(space):
    Q = space("Q4_2")
    r = explore_problem5(Q, SamplePlan(mode="exhaustive"))
    assert r.info["ovoid_hyperplanes"] == 6
    assert r.info["non_hyperplane_maximals"] == 0


def test_explore_problem5_sampled(space):
    S = space("Sp4_3")
    r = explore_problem5(S, SamplePlan(seed=0, samples=30, mode="random"))
    assert r.experimental and r.consistent()
    for e in r.exhibits:
        assert not is_hyperplane(S, PointSet.of(S, e["points"]))


def test_explore_problem5_rejects_rank3(space):
    with pytest.raises(UsageError):
        explore_problem5(space("Q6_2"), SamplePlan())


# ---------------------------------------------------------------------------
# sampling contracts
# ---------------------------------------------------------------------------

def test_exhaustive_auto_selection(space):
    plan = SamplePlan(mode="auto")
    assert plan.resolved_mode(space("W3_2")) == "exhaustive"
    assert plan.resolved_mode(space("H3_4")) == "random"


def test_exhaustive_cost_guard(space):
    with pytest.raises(UsageError):
        SamplePlan(mode="exhaustive").resolved_mode(space("H3_4"))


def test_sampled_agrees_with_exhaustive_on_small_space(space):
    # every sampled verdict must match the exhaustive classification
    Q = space("Q4_2")
    emb = natural_embedding(Q)
    ex = check_theorem1(Q, emb, SamplePlan(mode="exhaustive"))
    assert ex.failed == 0
    sam = check_theorem1(Q, emb, SamplePlan(seed=3, samples=120, mode="random"))
    assert sam.failed == 0 and sam.consistent()


def test_skip_accounting(space):
    H = space("H3_4")
    r = check_theorem1(H, natural_embedding(H),
                       SamplePlan(seed=2, samples=90, mode="random"))
    assert r.sampled == 90
    assert r.consistent()
    assert set(r.skipped) <= {"improper", "singular", "rank_nd_lt_2", "duplicate"}
