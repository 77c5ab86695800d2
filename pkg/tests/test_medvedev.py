"""The subset frames, the decision wrapper, and the reproduced results."""

import json

import pytest

import zoo
from medlog.errors import VerificationError
from medlog.formula import Implies, Or, Var, bd, big_or, kp, lam, neg, parse, render, variables
from medlog.medvedev import (
    Countermodel,
    MedvedevFrame,
    Verdict,
    compactness_entailment,
    compactness_witness,
    decide,
    dp_failure_witness,
    edn_falsifier,
    edn_root_check,
    frame,
    separation_witness,
)
from medlog.poset import PosetError, max_pairwise_incompatible
from medlog.semantics import Model, Valuation, consequence, forces, valid_at


def test_frame_structure():
    F = frame(3)
    assert len(F) == 7
    assert F.root() == F.root_world == 0b111
    assert F.end_points() == (0b001, 0b010, 0b100)
    # reverse inclusion: below means superset
    worlds = list(F.elements)
    for x in worlds:
        for y in worlds:
            assert F.leq(x, y) == (x & y == y)
    assert F.longest_chain_from(F.root_world) == 3
    assert F.longest_chain_from(0b001) == 1


def test_frame_guards_and_cache():
    assert frame(2) is frame(2)
    with pytest.raises(ValueError):
        MedvedevFrame(0)
    with pytest.raises(ValueError):
        MedvedevFrame(20)
    with pytest.raises(PosetError):
        frame(2).index(0)
    with pytest.raises(PosetError):
        frame(2).index(0b100)


def test_labels_and_parse_world():
    F = frame(3)
    assert F.label(0b101) == "{0,2}"
    assert F.parse_world("{0,2}") == 0b101
    assert F.parse_world("2,1") == 0b110
    assert F.parse_world("{0}") == 0b001
    for bad in ("", "{}", "{3}", "{0,,1}", "x"):
        with pytest.raises(PosetError):
            F.parse_world(bad)


def test_covering_pairs_drop_one_element():
    F = frame(3)
    for below, above in F.covering_pairs():
        assert below & above == above
        assert (below ^ above).bit_count() == 1
    # the root covers the three two-element worlds
    roots = [pair for pair in F.covering_pairs() if pair[0] == 0b111]
    assert sorted(above for _, above in roots) == [0b011, 0b101, 0b110]


def test_decide_valid_axioms():
    for n in (1, 2, 3):
        assert decide(n, (), kp()).valid
        assert decide(n, (), bd(n)).valid
        v = decide(n + 1, (), bd(n))
        assert not v.valid


def test_decide_reports_witness_and_budget():
    v = decide(2, (), parse("~~p -> p"))
    assert not v.valid and v.budget > 0
    cm = v.witness
    assert cm.world == frame(2).root_world
    assert cm.model.valuation.up("p").members == {0b01, 0b10}
    m = cm.model
    assert not forces(m, cm.world, cm.conclusion)


def test_decide_with_premises():
    # detachment under a premise: p together with p -> q yields q
    v = decide(2, (parse("p"), parse("p -> q")), parse("q"))
    assert v.valid
    v = decide(2, (parse("~~p"),), parse("p"))
    assert not v.valid
    for g in v.witness.premises:
        assert forces(v.witness.model, v.witness.world, g)


def test_verdict_guard():
    with pytest.raises(ValueError):
        Verdict(True, Countermodel(
            Model(frame(1), Valuation(frame(1))), 0b1, (), parse("p")), 1)
    with pytest.raises(ValueError):
        Verdict(False, None, 1)


def test_verdict_serialization():
    v = decide(2, (), parse("~~p -> p"))
    data = v.to_json_dict()
    assert data["schema"] == "medlog.verdict/1"
    assert data["valid"] is False
    cm = data["countermodel"]
    assert cm["schema"] == "medlog.countermodel/1"
    assert cm["world"] == "{0,1}"
    assert cm["valuation"] == {"p": ["{0}", "{1}"]}
    assert json.dumps(data)  # serializable as-is
    text = v.to_text()
    assert text.startswith("invalid\n") and "valuation:" in text
    assert decide(2, (), kp()).to_text() == "valid\n"


def test_countermodel_dot():
    v = decide(2, (), parse("~~p -> p"))
    dot = v.witness.to_dot()
    assert "bold" in dot  # the falsifying world is marked
    assert dot.count('\\np"') + dot.count('\\np ') + dot.count('\\np') >= 2


def test_edn_on_frames():
    F = frame(3)
    assert edn_root_check(F, 3)
    assert not edn_root_check(F, 4)
    assert edn_falsifier(F, 3) is None
    got = edn_falsifier(F, 4)
    assert got is not None
    instance, val = got
    # the premise instance (alpha = ~bot, beta = bot) is root-valid while
    # the matching conclusion alpha -> beta fails under the same valuation
    assert instance.left == parse("~bot")
    assert valid_at(F, F.root_world, instance)
    conclusion = Implies(instance.left, parse("bot"))
    assert not forces(Model(F, val), F.root_world, conclusion)
    assert val.names() == []


def test_edn_needs_root():
    from medlog.poset import Poset

    anti = Poset.from_relation("uv", [])
    with pytest.raises(PosetError):
        edn_falsifier(anti, 1)


def test_edn_correspondence_small_zoo():
    # the rule holds at the root iff enough pairwise incompatible elements
    # exist iff the disjunction of negated lams is not root-valid
    for k in range(1, 6):
        for P in zoo.rooted_posets(k):
            root = P.root()
            mpi = max_pairwise_incompatible(P)
            for n in (1, 2, 3):
                names = [f"p{j}" for j in range(1, n + 1)]
                disj = big_or([neg(lam(i, n, names)) for i in range(1, n + 1)])
                assert valid_at(P, root, disj) == (mpi < n)
                assert edn_root_check(P, n) == (mpi >= n)
                assert (edn_falsifier(P, n) is None) == (mpi >= n)


def test_separation_witness():
    for n in (1, 2, 3):
        f = separation_witness(n)
        assert f == bd(n)
        assert decide(n, (), f).valid
        assert not decide(n + 1, (), f).valid


def test_dp_failure_witness():
    for n in (1, 2, 3):
        left, right = dp_failure_witness(n)
        assert decide(n, (), Or(left, right)).valid
        assert not decide(n, (), left).valid
        assert not decide(n, (), right).valid


def test_compactness_witness():
    for i in (1, 2, 3):
        model = compactness_witness(i)
        P = model.poset
        assert P.n == i + 1
        root = P.root_world
        for j in range(1, i + 1):
            assert forces(model, root, Implies(bd(j), Var("p0")))
        assert not forces(model, root, Var("p0"))
    with pytest.raises(ValueError):
        compactness_witness(0)


def test_compactness_finite_family_fails_semantically():
    # not just on the constructed model: no valuation rescue exists, the
    # finite family genuinely does not entail p0 on the next frame up
    for i in (1, 2):
        P = frame(i + 1)
        premises = [Implies(bd(j), Var("p0")) for j in range(1, i + 1)]
        assert not consequence(P, P.root_world, premises, Var("p0"))


def test_compactness_entailment():
    for n in (1, 2, 3):
        assert compactness_entailment(n)
