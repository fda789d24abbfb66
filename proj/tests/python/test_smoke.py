import itertools
import random

import pytest

import dstrust


def brute_force(a, b):
    # Enumerate focal-set intersections over the two singletons and the full frame.
    sets = {"T": {"T"}, "N": {"N"}, "U": {"T", "N"}}
    out = {"T": 0.0, "N": 0.0, "U": 0.0}
    conflict = 0.0
    for (ka, va), (kb, vb) in itertools.product(zip("TNU", a), zip("TNU", b)):
        inter = sets[ka] & sets[kb]
        if not inter:
            conflict += va * vb
        else:
            out["U" if len(inter) == 2 else next(iter(inter))] += va * vb
    k = 1.0 - conflict
    return tuple(out[s] / k for s in "TNU")


def random_mass(rng):
    x, y = sorted((rng.random(), rng.random()))
    return (x, y - x, 1.0 - y)


def test_mass_and_round_example():
    a = dstrust.mass_from_recommendation("T", 0.8)
    assert a == pytest.approx((0.8, 0.0, 0.2))
    masses = [a, dstrust.mass_from_recommendation("T", 0.6), dstrust.mass_from_recommendation("N", 0.7)]
    beliefs = dstrust.combine_all(masses)
    assert beliefs == pytest.approx((0.7753, 0.1573, 0.0674), abs=1e-3)
    assert dstrust.decide(beliefs) == "T"
    assert dstrust.updated_credibility(0.7, "N", beliefs) == pytest.approx(0.5427, abs=1e-3)


def test_combine_matches_brute_force():
    rng = random.Random(7)
    for _ in range(200):
        a, b = random_mass(rng), random_mass(rng)
        assert dstrust.combine(a, b) == pytest.approx(brute_force(a, b), abs=1e-9)
        assert dstrust.combine(a, (0.0, 0.0, 1.0)) == a


def test_total_conflict_raises():
    with pytest.raises(dstrust.TotalConflict):
        dstrust.combine((1.0, 0.0, 0.0), (0.0, 1.0, 0.0))
    with pytest.raises(dstrust.EmptyEvidence):
        dstrust.combine_all([])


def test_replenishment_and_camouflage():
    assert dstrust.replenishment(3, 0.5) == 6
    assert dstrust.replenishment(0, 0.42) == 1
    assert dstrust.camouflage_verdict("T", 4, 5) == "T"
    assert dstrust.camouflage_verdict("T", 5, 5) == "N"


def test_tree_and_self_assessment():
    tree = dstrust.train_tree([[0.1], [0.2], [0.8], [0.9]], ["N", "N", "T", "T"], min_leaf=1)
    assert tree.depth == 1
    assert tree.predict([0.3]) == "N"
    assert tree.predict([0.7]) == "T"
    report = dstrust.self_assess([[i / 40] for i in range(40)], ["T" if i >= 20 else "N" for i in range(40)])
    assert report["accuracy"] >= 0.9
    assert report["participate"]


def test_scenario_is_deterministic():
    kwargs = dict(seed=42, attack="sybil", advisors=10, items=4, iterations=4)
    first = dstrust.run_scenario(**kwargs)
    second = dstrust.run_scenario(**kwargs)
    assert first["summary_text"] == second["summary_text"]
    assert first["series_text"] == second["series_text"]
    assert len(first["iterations"]) == 4
    with pytest.raises(ValueError):
        dstrust.run_scenario(seed=1, attack="collusion")
