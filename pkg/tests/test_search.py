import math
import random

import pytest

import smalldoubling.search as search
from smalldoubling.group import GroupContext, inverse, multiply, power
from smalldoubling.order import Order
from smalldoubling.search import (
    BoxSpec,
    BudgetExceeded,
    Counterexample,
    GridPoint,
    VerificationReport,
    constructed_family,
    construction_grid,
    enumerate_subsets,
    run_verification,
    sweep,
    verify_background_1_3,
    verify_lemma_2_1,
    verify_lemmas_2_3_2_4,
    verify_prop_2_2,
    verify_prop_3_3,
    verify_prop_3_4,
    verify_thm_2_5,
    verify_thm_3_2,
)
from smalldoubling.sumset import Subset

H = GroupContext(2)
x, y, z = H.generator(0), H.generator(1), H.basic_commutator(0, 1)


def S(*elems):
    return Subset.of(elems)


def zpow(m):
    return power(z, m)


# -- enumeration -----------------------------------------------------------------


@pytest.mark.parametrize("k, count", [(1, 27), (3, 2925), (4, 17550)])
def test_exhaustive_counts(k, count):
    subsets = list(enumerate_subsets(BoxSpec(1, 1, k)))
    assert len(subsets) == count == math.comb(27, k)
    assert len(set(subsets)) == count
    assert all(s.k == k for s in subsets)


def test_universe_size():
    for n, gb, cb in [(2, 1, 1), (2, 2, 3), (3, 1, 0), (1, 4, 9)]:
        box = BoxSpec(gb, cb, 1, n=n)
        assert len(box.universe()) == box.universe_size == len(set(box.universe()))


def test_budget_exceeded():
    with pytest.raises(BudgetExceeded):
        enumerate_subsets(BoxSpec(1, 1, 4, budget=17549))
    with pytest.raises(ValueError):
        BoxSpec(-1, 1, 3)
    with pytest.raises(ValueError):
        BoxSpec(1, 1, 3, budget=0)
    with pytest.raises(ValueError):
        enumerate_subsets(BoxSpec(1, 1, 3), "bogus")


def test_sampled_is_reproducible():
    box = BoxSpec(2, 2, 5, budget=200, seed=11)
    first = list(enumerate_subsets(box, "sampled"))
    assert first == list(enumerate_subsets(box, "sampled"))
    assert len(first) == 200 and all(s.k == 5 for s in first)
    other = list(enumerate_subsets(BoxSpec(2, 2, 5, budget=200, seed=12), "sampled"))
    assert other != first


def test_constructed_family_is_reproducible():
    box = BoxSpec(2, 2, 6, budget=90, seed=3)
    fam = list(constructed_family(box))
    assert fam == list(constructed_family(box))
    assert len(fam) == 90 and all(s.k == 6 for s in fam)


def test_construction_grid_size():
    box = BoxSpec(1, 1, 4)
    points = list(construction_grid(box))
    assert len(points) == 27 * 26 * 1 * 3  # one positive central ratio z
    assert len(list(construction_grid(box, j_zero=True))) == 27 * 26


# -- verifier examples --------------------------------------------------------------


def test_top_pair_growth_examples():
    r = verify_lemma_2_1([S(y, y * z, x)])
    assert r.hypothesis_hits == 1 and r.passed
    r = verify_lemma_2_1([S(y, y * z, power(y, 2))])
    assert r.hypothesis_hits == 0 and r.status == "vacuous"


def test_cna_bound_examples():
    assert verify_prop_2_2([S(x, y)]).passed
    assert verify_prop_2_2([S(x)]).passed
    assert verify_prop_2_2([S(x, y, z)]).status == "vacuous"


def test_general_formula_examples():
    r = verify_lemmas_2_3_2_4([GridPoint(y, x, z, 1, 1)])
    assert r.passed
    r = verify_lemmas_2_3_2_4([GridPoint(y, power(x, 2), z, 2, 0)], j_zero=True)
    assert r.passed
    r = verify_lemmas_2_3_2_4([GridPoint(y, power(x, 3), z, 1, 0)])
    assert r.status == "vacuous"


def test_progression_plus_point_examples():
    # k = 6, v = 2: |S^2| = 3k + v - 3 = 17 <= 4k - 6
    shaped = S(*(y * zpow(e) for e in range(5)), power(x, 2))
    r = verify_thm_2_5([shaped])
    assert r.passed and r.hypothesis_hits == 1
    # a gap still fits (|S^2| = 18); |S^2| = 19 = 4k - 5 is outside the hypothesis
    holes = S(*(y * zpow(e) for e in (0, 1, 2, 3, 5)), power(x, 2))
    assert verify_thm_2_5([holes]).passed
    wide = S(*(y * zpow(e) for e in (0, 1, 2, 4, 6)), power(x, 2))
    assert verify_thm_2_5([wide]).hypothesis_hits == 0
    assert verify_thm_2_5([S(y, y * z, y * zpow(2), x)]).passed


def test_extremal_examples():
    assert verify_thm_3_2([S(y, y * z, x, x * z)]).passed
    v2 = S(y, y * z, y * zpow(2), power(x, 2))
    r = verify_thm_3_2([v2])
    assert r.hypothesis_hits == 0


def test_k3_classification_examples():
    assert verify_prop_3_3([S(x, y, z)]).passed
    assert verify_prop_3_3([S(y, y * z, x)]).passed


def test_strict_plus_point_examples():
    assert verify_prop_3_4([S(y, y * z, y * zpow(2), x)]).passed
    assert verify_prop_3_4([S(y, y * z, x, x * z)]).status == "vacuous"


def test_abelian_threshold_examples():
    prog = S(*(y * zpow(e) for e in range(4)))
    assert verify_background_1_3([prog]).passed
    assert verify_background_1_3([S(x, y)]).status == "vacuous"


@pytest.mark.parametrize("k", [4, 5, 6, 7, 8])
def test_strict_plus_point_constructed(k):
    family = [S(*(y * zpow(e) for e in range(k - 1)), x), S(*(y * zpow(e) for e in range(k - 1)), inverse(x))]
    r = verify_prop_3_4(family)
    assert r.passed and r.hypothesis_hits == 2


# -- reports ----------------------------------------------------------------------------


def test_report_status_and_exit_codes():
    r = VerificationReport("P3_3")
    assert (r.status, r.exit_code) == ("vacuous", 3)
    r.hypothesis_hits = 5
    assert (r.status, r.exit_code) == ("pass", 0)
    r.counterexample_total = 1
    assert (r.status, r.exit_code) == ("fail", 1)
    d = r.to_dict()
    assert {"theorem_id", "instances_checked", "hypothesis_hits", "counterexamples", "elapsed"} <= set(d)
    assert r.csv_row(header=True).splitlines()[0].startswith("theorem_id,status")


def test_unknown_theorem():
    with pytest.raises(ValueError):
        sweep("X9_9", [])
    with pytest.raises(ValueError):
        run_verification("X9_9", BoxSpec())


def test_worker_count_does_not_change_report():
    box = BoxSpec(1, 1, 4)
    one = run_verification("T3_2", box, jobs=1)
    two = run_verification("T3_2", box, jobs=2)
    assert one.to_json(include_elapsed=False) == two.to_json(include_elapsed=False)
    sampled = BoxSpec(2, 2, 5, budget=3000, seed=5)
    one = run_verification("L2_1", sampled, "sampled", jobs=1)
    two = run_verification("L2_1", sampled, "sampled", jobs=3)
    assert one.to_json(include_elapsed=False) == two.to_json(include_elapsed=False)


def test_counterexamples_are_capped_and_sorted(monkeypatch):
    monkeypatch.setattr(search, "recognize_structure", lambda S: None)
    box = BoxSpec(1, 1, 4)
    one = sweep("T3_2", enumerate_subsets(box), jobs=1, chunk_size=100)
    two = sweep("T3_2", enumerate_subsets(box), jobs=1, chunk_size=5000)
    assert one.status == "fail" and one.exit_code == 1
    assert one.counterexample_total > search.COUNTEREXAMPLE_CAP
    assert len(one.counterexamples) == search.COUNTEREXAMPLE_CAP
    keys = [c.sort_key() for c in one.counterexamples]
    assert keys == sorted(keys)
    assert one.to_json(include_elapsed=False) == two.to_json(include_elapsed=False)


# -- mutation self-tests: broken components must be caught ----------------------------


def test_broken_recognizer_is_caught(monkeypatch):
    real = search.recognize_structure

    def off_by_one(S):
        d = real(S)
        return d if d is None or d.i + d.j < 2 else None

    monkeypatch.setattr(search, "recognize_structure", off_by_one)
    assert run_verification("T3_2", BoxSpec(1, 1, 4)).status == "fail"


def test_broken_plus_point_is_caught(monkeypatch):
    monkeypatch.setattr(search, "recognize_progression_plus_point", lambda S: None)
    assert run_verification("P3_4", BoxSpec(1, 1, 4)).status == "fail"
    assert run_verification("T2_5", BoxSpec(1, 1, 4)).status == "fail"


def test_broken_product_set_is_caught(monkeypatch):
    def lossy(S):
        elems = tuple(S)
        return frozenset(multiply(s, t) for s in elems for t in elems if s <= t)

    monkeypatch.setattr(search, "product_set", lossy)
    for theorem in ("L2_1", "P2_2", "BG_1_3", "P3_3"):
        assert run_verification(theorem, BoxSpec(1, 1, 3)).status == "fail", theorem


def test_broken_classifier_is_caught(monkeypatch):
    from smalldoubling.progressions import K3Case, K3Classification

    monkeypatch.setattr(search, "classify_k3", lambda S: K3Classification(K3Case.NOT_EXTREMAL))
    assert run_verification("P3_3", BoxSpec(1, 1, 3)).status == "fail"


# -- conjugation stability ------------------------------------------------------------


@pytest.mark.parametrize("theorem", ["T3_2", "P3_3", "P3_4", "BG_1_3", "P2_2"])
def test_checks_are_conjugation_stable(theorem):
    rng = random.Random(1)
    check = search.CHECKS[theorem]
    k = 3 if theorem == "P3_3" else 4
    for s in enumerate_subsets(BoxSpec(1, 1, k, budget=400, seed=2), "sampled"):
        g = H.element((rng.randint(-3, 3), rng.randint(-3, 3)), (rng.randint(-3, 3),))
        conj = Subset.of(multiply(multiply(inverse(g), t), g) for t in s)
        hit, cex = check(s, (Order.STANDARD,))
        hit2, cex2 = check(conj, (Order.STANDARD,))
        assert (hit, bool(cex)) == (hit2, bool(cex2))


def test_non_exhaustive_reports_carry_note():
    r = run_verification("T3_2", BoxSpec(2, 2, 6, budget=300, seed=1), "constructed")
    assert any("not proof" in note for note in r.notes)
    assert r.passed


def test_counterexample_to_dict():
    c = Counterexample((x, y), "standard", "why")
    assert c.to_dict() == {"subset": ["gens:1,0;comms:0", "gens:0,1;comms:0"], "order": "standard", "reason": "why"}
