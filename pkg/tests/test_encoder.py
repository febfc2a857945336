import math

import numpy as np
import pytest

from _factories import pair_matches, random_encoder_params, random_recursion_params
from csforge import (
    EncoderParams,
    RecursionParams,
    SeedPair,
    UnitExpElement,
    component_functions,
    encode_pair,
    is_gcp,
    known_seed,
    order_select,
    papr_oversampled_db,
    recursion_to_encoder,
    run_recursion,
    shifts_avoid_overlap,
)

E1 = (2.0 / math.pi) * math.log(3.0)


def multilevel_params(seed=None, d=None):
    return EncoderParams.basic(m=3, H=4, pi=(2, 1, 3), e=(E1, 0, 0), seed=seed, d=d)


def test_component_tables_of_worked_configuration():
    comp = component_functions(multilevel_params())
    assert np.allclose(comp.amp_c.table(), [0, 0, E1, E1, E1, E1, 0, 0], atol=1e-12)
    # phase table consistent with the golden output signs
    assert np.array_equal(np.mod(comp.phase_c.table(), 4), [0, 0, 0, 0, 0, 2, 2, 0])
    assert np.array_equal(comp.shift.table(), np.zeros(8))


def test_zero_amplitude_knobs_give_zero_function():
    p = EncoderParams.basic(m=3, H=4)
    comp = component_functions(p)
    assert np.array_equal(comp.amp_c.table(), np.zeros(8))
    assert np.array_equal(comp.amp_d.table(), np.zeros(8))


def test_golden_multilevel_sequence():
    res = encode_pair(multilevel_params())
    expected = np.array([1, 1, 3, 3, 3, -3, -1, 1], dtype=complex)
    assert pair_matches(expected, res.c.values)
    assert not res.overlap
    assert is_gcp(res.c, res.d).ok


def test_golden_blockwise_with_length6_seed():
    a = np.array([1, 1j, 1, 1, 1, -1])
    b = np.array([1, 1j, 1, -1, -1, 1])
    res = encode_pair(multilevel_params(seed=(a, b)))
    expected = np.concatenate([a, a, 3 * b, 3 * b, 3 * a, -3 * a, -b, b])
    assert pair_matches(expected, res.c.values)


def test_golden_blockwise_reversed_order():
    # reversing pi moves the amplitude knob to the mirrored step
    a = np.array([1, 1j, 1, 1, 1, -1])
    b = np.array([1, 1j, 1, -1, -1, 1])
    p = EncoderParams.basic(m=3, H=4, pi=(3, 1, 2), e=(0, E1, 0), seed=(a, b))
    res = encode_pair(p)
    expected = np.concatenate([a, b, 3 * a, 3 * b, 3 * a, -3 * b, -a, b])
    assert pair_matches(expected, res.c.values)


def test_golden_two_cluster_layout():
    a = np.array([1, 1j, 1])
    b = np.array([1, 1, -1])
    res = encode_pair(multilevel_params(seed=(a, b), d=(0, 60, 0)))
    expected = np.concatenate(
        [a, a, 3 * b, 3 * b, np.zeros(60), 3 * a, -3 * a, -b, b]
    )
    assert pair_matches(expected, res.c.values)
    assert len(res.c) == 3 * 8 + 60
    assert res.c.clusters() == [(0, 12), (72, 84)]
    assert not res.overlap
    assert is_gcp(res.c, res.d).ok
    assert papr_oversampled_db(res.c, 16)[0] <= 3.02


def test_order_select():
    p = multilevel_params()
    assert order_select(p, (0, 0, 0)) == "a"
    assert order_select(p, (0, 1, 0)) == "b"
    assert order_select(p, 0) == "a"
    p_rev = EncoderParams.basic(m=3, H=4, pi=(3, 1, 2))
    assert order_select(p_rev, (0, 0, 1)) == "b"
    with pytest.raises(ValueError):
        order_select(p, 8)


def test_trivial_single_step_pair():
    res = encode_pair(EncoderParams.basic(m=1, H=2))
    assert pair_matches([1, 1], res.c.values)
    assert pair_matches([1, -1], res.d.values)


def test_direct_recursion_single_step():
    c, d = run_recursion(RecursionParams.neutral(1, 2))
    assert pair_matches([1, 1], c.values)
    assert pair_matches([1, -1], d.values)


def test_direct_recursion_reproduces_golden_vector():
    rp = RecursionParams.neutral(3, 4, psi=(1, 2, 0), scale_b=(E1, 0.0, 0.0))
    c, _ = run_recursion(rp)
    assert pair_matches([1, 1, 3, 3, 3, -3, -1, 1], c.values)
    converted = recursion_to_encoder(rp)
    assert converted.pi == (2, 1, 3)
    assert converted.e == (E1, 0.0, 0.0)


def test_conversion_identity_on_neutral_params():
    rp = RecursionParams.neutral(4, 4, psi=(3, 2, 1, 0))
    p = recursion_to_encoder(rp)
    assert p.pi == (1, 2, 3, 4)
    assert p.e == (0.0,) * 4
    assert p.e_prime == 0.0
    assert p.k == (0.0,) * 4
    assert p.k_prime == 0.0 and p.k_dprime == 0.0


def test_conversion_single_scale_knob():
    target = (4.0 / (2.0 * math.pi)) * math.log(3.0)
    rp = RecursionParams.neutral(3, 4, scale_b=(0.0, target, 0.0))
    p = recursion_to_encoder(rp)
    assert p.e == (0.0, pytest.approx(target), 0.0)
    assert p.e_prime == 0.0


@pytest.mark.parametrize("trial", range(40))
def test_oracle_equivalence_random(trial):
    rng = np.random.default_rng(1000 + trial)
    rp = random_recursion_params(rng)
    direct_c, direct_d = run_recursion(rp)
    res = encode_pair(recursion_to_encoder(rp))
    assert pair_matches(direct_c.values, res.c.values)
    assert pair_matches(direct_d.values, res.d.values)


def test_length_formula():
    rng = np.random.default_rng(5)
    for _ in range(30):
        p = random_encoder_params(rng, m_max=5)
        res = encode_pair(p)
        assert len(res.c) == len(p.seed) * 2**p.m + sum(p.d)
        assert len(res.d) == len(res.c)


def test_overlap_is_summed_and_flagged():
    p = EncoderParams.basic(m=2, H=4, pi=(1, 2), d=(0, 1))
    assert not shifts_avoid_overlap(p.d, p.pi)
    res = encode_pair(p)
    assert res.overlap
    assert len(res.c) == 4 + 1
    assert is_gcp(res.c, res.d).ok  # collisions sum, complementarity survives


def test_disjoint_shifts_do_not_flag():
    p = multilevel_params(seed=(np.array([1, 1j, 1]), np.array([1, 1, -1])), d=(0, 60, 0))
    assert shifts_avoid_overlap(p.d, p.pi)
    assert not encode_pair(p).overlap


def test_phase_functions_differ_by_top_variable():
    rng = np.random.default_rng(9)
    for _ in range(20):
        p = random_encoder_params(rng, m_max=5)
        comp = component_functions(p)
        top = np.array([(x >> (p.m - p.pi[-1])) & 1 for x in range(2**p.m)])
        delta = comp.phase_d.table() - comp.phase_c.table()
        expected = (p.H / 2.0) * top + (p.k_dprime - p.k_prime)
        wrapped = np.mod(delta - expected, p.H)
        assert np.allclose(np.minimum(wrapped, p.H - wrapped), 0.0, atol=1e-9)


def test_amplitude_alphabet_preserved_without_overlap():
    rng = np.random.default_rng(21)
    for _ in range(20):
        p = random_encoder_params(rng, m_max=4, shift_mode="disjoint")
        res = encode_pair(p)
        comp = component_functions(p)
        w = 2.0 * math.pi / p.H
        seed_mags = np.abs(np.concatenate([p.seed.a.values, p.seed.b.values]))
        allowed = np.unique(
            np.round(np.outer(np.exp(w * comp.amp_c.table()), seed_mags).ravel(), 9)
        )
        observed = np.round(np.abs(res.c.values[res.c.support]), 9)
        assert np.all(np.isin(observed, allowed))


def test_seed_validation():
    with pytest.raises(ValueError):
        SeedPair((1, 1), (1, 1))
    with pytest.raises(ValueError):
        SeedPair((1, 1), (1,))
    assert len(known_seed(3)) == 3
    with pytest.raises(ValueError):
        known_seed(5)


def test_params_validation():
    with pytest.raises(ValueError):
        EncoderParams.basic(m=2, H=3)  # odd modulus
    with pytest.raises(ValueError):
        EncoderParams.basic(m=2, H=4, pi=(1, 1))
    with pytest.raises(ValueError):
        EncoderParams.basic(m=2, H=4, d=(-1, 0))
    with pytest.raises(ValueError):
        EncoderParams.basic(m=2, H=4, e=(0.0,))


def test_phase_normalization():
    p = EncoderParams.basic(m=2, H=4, k=(5.0, -1.0), k_prime=9.0, k_dprime=-0.5)
    assert p.k == (1.0, 3.0)
    assert p.k_prime == 1.0
    assert p.k_dprime == 3.5


def test_unit_exp_element():
    el = UnitExpElement(r=E1, i=0.0, H=4)
    assert el.to_complex() == pytest.approx(3.0)
    rot = UnitExpElement(r=0.0, i=1.0, H=4)
    assert rot.to_complex() == pytest.approx(1j)
    assert UnitExpElement.exact_zero(4).to_complex() == 0j
    combined = el * rot
    assert combined.to_complex() == pytest.approx(3j)
    assert (el * UnitExpElement.exact_zero(4)).to_complex() == 0j
