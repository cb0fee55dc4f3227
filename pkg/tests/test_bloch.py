import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from contextua import Effect, Povm, QubitState, UnbiasedObservable
from contextua.bloch import effect_is_psd, marginalize, outcome_labels, outcome_probability, povm_validate
from contextua.errors import ContextuaError, EmptyPovm, InvalidSharpness, MalformedLabels
from contextua.pairwise import build_pairwise_jm
from contextua.triplewise import build_triplewise_jm, trine

from oracles import min_eig

coord = st.floats(-1, 1, allow_nan=False)
vec = st.tuples(coord, coord, coord)


@pytest.mark.parametrize(
    "a, b, expected",
    [
        (0.5, (0, 0, 0), True),
        (0.25, (0, 0, 0.3), False),
        (0.25, (0.15, 0.20, 0), True),
    ],
)
def test_effect_is_psd_examples(a, b, expected):
    assert effect_is_psd(Effect(a, b)) is expected


def test_effect_is_psd_rejects_negative_tol():
    with pytest.raises(ValueError):
        effect_is_psd(Effect(0.5, (0, 0, 0)), tol=-1)


@given(st.floats(-1, 1), vec)
def test_psd_matches_matrix_eigenvalue(a, b):
    e = Effect(a, b)
    assert e.min_eigenvalue == pytest.approx(min_eig(a, b), abs=1e-12)
    assert effect_is_psd(e, 1e-10) == (a >= np.linalg.norm(b) - 1e-10)


def test_effect_matrix_and_roundtrip():
    e = Effect(0.3, (0.1, -0.2, 0.05))
    assert np.allclose(e.matrix(), e.matrix().conj().T)
    assert np.trace(e.matrix()).real == pytest.approx(0.6)
    back = Effect.from_dict(e.to_dict())
    assert back.a == e.a and np.array_equal(back.b, e.b)
    assert e.to_dict() == {"a": 0.3, "b": [0.1, -0.2, 0.05]}


def test_vectors_are_read_only_and_finite():
    e = Effect(0.5, [0, 0, 0.1])
    with pytest.raises(ValueError):
        e.b[0] = 1.0
    with pytest.raises(ContextuaError):
        Effect(0.5, [0, np.nan, 0])
    with pytest.raises(ContextuaError):
        Effect(0.5, [0, 0])


def test_povm_validate_examples():
    obs = UnbiasedObservable([0.7, 0, 0])
    assert povm_validate(obs.povm())
    bad = povm_validate(Povm([Effect(0.6, (0, 0, 0)), Effect(0.6, (0, 0, 0))], [(1,), (-1,)]))
    assert not bad and bad.constraint == "completeness"
    assert bad.deficit == pytest.approx(0.2)
    assert povm_validate(build_triplewise_jm(*trine(0.6)).effects)


def test_povm_validate_reports_sigma_sum_and_positivity():
    unbalanced = Povm([Effect(0.5, (0.1, 0, 0)), Effect(0.5, (0, 0, 0))], [(1,), (-1,)])
    assert povm_validate(unbalanced).constraint == "completeness"
    negative = Povm([Effect(0.5, (0.8, 0, 0)), Effect(0.5, (-0.8, 0, 0))], [(1,), (-1,)])
    v = povm_validate(negative)
    assert v.constraint == "positivity" and v.deficit == pytest.approx(0.3)


def test_povm_validate_empty():
    with pytest.raises(EmptyPovm):
        povm_validate(Povm([], []))


def test_povm_label_mismatch():
    with pytest.raises(MalformedLabels):
        Povm([Effect(1, (0, 0, 0))], [(1,), (-1,)])


def test_povm_roundtrip_and_lookup():
    p = UnbiasedObservable([0, 0.3, 0]).povm()
    q = Povm.from_dict(p.to_dict())
    assert q.outcome_labels == ((1,), (-1,))
    assert np.allclose(q[(-1,)].b, [0, -0.15, 0])


def test_outcome_probability_examples():
    assert outcome_probability(Effect(0.5, (0, 0, 0)), QubitState([0.3, 0.1, 0.2])) == 0.5
    obs = UnbiasedObservable([0.8, 0, 0])
    assert outcome_probability(obs.effect(1), QubitState([1, 0, 0])) == pytest.approx(0.9)
    assert outcome_probability(obs.effect(1), QubitState([0, 0.6, 0.8])) == pytest.approx(0.5)


def test_outcome_probability_matches_born_rule(rng):
    for _ in range(50):
        r = rng.normal(size=3)
        r *= rng.uniform() / np.linalg.norm(r)
        e = Effect(0.4, rng.uniform(-0.2, 0.2, 3))
        s = QubitState(r)
        assert outcome_probability(e, s) == pytest.approx(np.trace(s.density_matrix() @ e.matrix()).real, abs=1e-14)


def test_state_bounds():
    assert QubitState([0, 0, 1]).is_pure()
    assert not QubitState([0, 0, 0.5]).is_pure()
    with pytest.raises(ContextuaError):
        QubitState([0, 0, 1.01])


def test_unbiased_observable_sharpness():
    assert UnbiasedObservable([0.3, 0.4, 0]).eta == pytest.approx(0.5)
    with pytest.raises(InvalidSharpness):
        UnbiasedObservable([1, 1, 0])


def test_outcome_labels_order():
    assert outcome_labels(2) == ((1, 1), (1, -1), (-1, 1), (-1, -1))


def test_marginalize_pairwise():
    l1, l2 = np.array([0.5, 0, 0]), np.array([0, 0.5, 0])
    j = build_pairwise_jm(l1, l2, 0.0, (0, 0, 0)).effects
    m = marginalize(j, 0)
    assert m.outcome_labels == ((1,), (-1,))
    assert np.allclose(m[(1,)].b, l1 / 2) and m[(1,)].a == pytest.approx(0.5)
    both = marginalize(m, ())
    assert both.outcome_labels == ((),)
    assert both.effects[0].a == pytest.approx(1) and np.allclose(both.effects[0].b, 0)


def test_marginalize_triplewise():
    lam = trine(0.6)
    j = build_triplewise_jm(*lam).effects
    m = marginalize(j, 2)
    assert np.allclose(m[(1,)].b, lam[2] / 2, atol=1e-12)
    assert np.allclose(m[(-1,)].b, -lam[2] / 2, atol=1e-12)
    pair = marginalize(j, (2, 0))
    assert pair.outcome_labels == outcome_labels(2)


def test_marginalize_malformed():
    p = Povm([Effect(0.5, (0, 0, 0)), Effect(0.5, (0, 0, 0))], [(1, 1), (-1, -1)])
    with pytest.raises(MalformedLabels):
        marginalize(p, 0)
    full = UnbiasedObservable([0, 0, 0.2]).povm()
    with pytest.raises(MalformedLabels):
        marginalize(full, 1)


@given(vec, vec)
def test_joint_probabilities_sum_to_one(r, l):
    r = np.array(r)
    if np.linalg.norm(r) > 1:
        r = r / np.linalg.norm(r)
    l = np.array(l) / max(1.0, np.linalg.norm(l)) / 2
    j = build_pairwise_jm(l, -l, -float(l @ l), (0, 0, 0))
    total = sum(outcome_probability(e, QubitState(r)) for e in j.effects.effects)
    assert total == pytest.approx(1, abs=1e-12)
