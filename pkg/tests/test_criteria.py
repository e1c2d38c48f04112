import math

import numpy as np
import pytest

from seqspace_greedy import (
    DescriptorError,
    DomainError,
    ExponentSequence,
    FiniteVector,
    Fpa,
    MusielakWitness,
    NakanoSpace,
    OrliczSpace,
    OscillatingTail,
    Power,
    ScaleSequence,
    build_block_basis,
    condition_c_check,
    luxemburg_norm,
    musielak_density_witness_check,
    musielak_witness_check,
    nakano_space_verdict,
    verify_block_isometry,
)
from seqspace_greedy.sequences import (
    ConstantTail,
    ConvergentTail,
    CountTail,
    DivergentTail,
    EnumeratedCount,
    ExpDecayCount,
    InverseLogCount,
)


def classify(tail, prefix=()):
    return nakano_space_verdict(ExponentSequence(tuple(prefix), tail), evidence_range=10**5)


def test_constant_exponent():
    c = classify(ConstantTail(2.0))
    assert c.identification == "= l_2"
    assert c.unit_basis_greedy is True
    assert c.verdict("density").verdict == "holds"


def test_log_rate_is_l1():
    c = nakano_space_verdict(ExponentSequence((), ConvergentTail(1.0, "log", 1.0)))
    v = c.verdict("lp_identification")
    assert c.identification == "= l_1" and c.unit_basis_greedy
    assert v.verdict == "holds"
    # independent check of sup log(n) |p_n - 1| = sup log(n)/log(n+1) < 1 on [1, 10^6]
    n = np.arange(1, 10**6 + 1, dtype=float)
    assert float((np.log(n) / np.log(n + 1)).max()) <= 1.0
    assert v.evidence["sup_log_n_deviation_on_range"] <= 1.0
    assert v.evidence["witness_r"] == pytest.approx(math.exp(-2))


def test_sqrt_log_rate_has_no_greedy_basis():
    c = classify(ConvergentTail(1.0, "sqrt_log", 1.0))
    assert c.identification == "not l_1"
    assert c.unit_basis_greedy is False
    assert c.verdict("greedy_basis_exists").verdict == "fails"
    assert "no greedy basis" in c.conclusion
    trend = list(c.verdict("lp_identification").evidence["log_n_deviation_trend"].values())
    assert all(b > a for a, b in zip(trend, trend[1:]))


def test_sqrt_log_rate_away_from_one():
    c = classify(ConvergentTail(2.0, "sqrt_log", 1.0))
    assert c.unit_basis_greedy is False
    assert "no greedy basis" not in c.conclusion


def test_log2_is_c0():
    c = classify(DivergentTail("log_power", c=1 / math.log(2), shift=2.0))
    assert c.identification == "= c_0"
    assert c.unit_basis_greedy is True
    v = c.verdict("c0_identification")
    assert v.evidence["witness_r"] == pytest.approx(0.25)
    # r^{log2(n+2)} = (n+2)^{-2}
    assert v.evidence["partial_sum_on_range"] <= sum(1 / (n + 2) ** 2 for n in range(1, 10**4)) + 1e-4
    assert c.verdict("density").verdict == "fails"


@pytest.mark.parametrize(
    "tail, expected",
    [
        (DivergentTail("power", c=1.0, gamma=0.5), "= c_0"),
        (DivergentTail("log_power", c=1.0, gamma=1.5, offset=1.0), "= c_0"),
        (DivergentTail("log_power", c=1.0, gamma=0.5, offset=1.0), "not c_0"),
        (DivergentTail("loglog", c=1.0, shift=2.0, offset=1.0), "not c_0"),
    ],
)
def test_divergent_forms(tail, expected):
    c = classify(tail)
    assert c.identification == expected
    if expected == "not c_0":
        assert c.conclusion == "not c_0; no greedy basis"


def test_oscillating_not_democratic():
    c = classify(OscillatingTail((1.0, 2.0)))
    v = c.verdict("democracy")
    assert v.verdict == "fails"
    assert v.evidence["ratio_exponent"] == pytest.approx(0.5)
    assert c.democratic is False


def test_prefix_only_is_inconclusive():
    c = nakano_space_verdict(ExponentSequence.finite([1.5, 1.4, 1.3]))
    assert c.identification == "unknown"
    assert c.verdicts[0].verdict == "inconclusive"
    c = classify(CountTail("scales", (0.0, 1.0)))
    assert c.verdicts[0].verdict == "inconclusive"


def test_verdicts_are_deterministic():
    tails = [ConvergentTail(1.0, "log", 1.0), ConvergentTail(1.0, "sqrt_log", 1.0), DivergentTail("log_power", c=1 / math.log(2), shift=2.0)]
    for t in tails:
        assert classify(t).to_dict() == classify(t).to_dict()


def test_constant_verdict_matches_norm():
    rng = np.random.default_rng(5)
    s = NakanoSpace(ExponentSequence.constant(1.5))
    for _ in range(20):
        x = FiniteVector.from_dense(rng.uniform(-1, 1, 8))
        assert luxemburg_norm(s, x) == pytest.approx(float(np.sum(x.mags**1.5) ** (1 / 1.5)), rel=1e-10)


def test_condition_c_exp_decay():
    v = condition_c_check(ExpDecayCount(1.0), 2.0, 20)
    assert v.verdict == "holds"
    assert v.evidence["smallest_valid_R"] <= 2.0
    assert condition_c_check(ExpDecayCount(1.0), 2.0, 0).verdict == "holds"


def test_condition_c_exp_decay_small_R():
    v = condition_c_check(ExpDecayCount(1.0), 1.1, 20)
    assert v.verdict == "fails"


@pytest.mark.parametrize("R", [2.0, 10.0, 1e3, 1e6])
def test_condition_c_inverse_log_fails(R):
    v = condition_c_check(InverseLogCount(), R, 10)
    assert v.verdict == "fails"
    assert v.evidence["witness_k"] <= 5
    assert v.evidence["fails_for_every_R"]
    # log log count = 2^k versus k log 2 + log log R
    k = v.evidence["witness_k"]
    assert 2.0**k > k * math.log(2) + math.log(math.log(R))


def test_condition_c_enumeration_cross_check():
    enum = EnumeratedCount(ScaleSequence((), "exp(-n)"), 10**6)
    closed = ExpDecayCount(1.0)
    for k in range(5):
        cnt, truncated = enum.count(k)
        assert cnt == 2**k and not truncated
        assert math.log(cnt) == pytest.approx(closed.log_count(k), abs=1e-12)
    v = condition_c_check(enum, 2.0, 4)
    assert v.verdict == "inconclusive"
    assert v.evidence["status"] == "pass-at-scale"


def test_condition_c_enumerated_violation():
    enum = ScaleSequence((), "1/log(n+1)")
    v = condition_c_check(EnumeratedCount(enum, 10**5), 2.0, 3)
    assert v.verdict == "fails"
    assert v.evidence["count_is_lower_bound"]


def test_condition_c_domain():
    with pytest.raises(DomainError):
        condition_c_check(ExpDecayCount(1.0), 1.0, 3)


@pytest.mark.parametrize("p, N", [(2, 4), (3, 8), (1.5, 16)])
def test_block_basis_power_closed_form(p, N):
    bb = build_block_basis(Power(p), [N, N])
    assert bb.scales == pytest.approx((N ** (-1 / p),) * 2, rel=1e-12)


def test_block_basis_unit_lengths():
    bb = build_block_basis(Fpa(1, 1), [1, 1, 1])
    assert bb.scales == (1.0, 1.0, 1.0)
    assert bb.blocks == tuple(FiniteVector.unit(n) for n in (1, 2, 3))
    assert verify_block_isometry(bb, trials=20).max_relative_error <= 1e-12


def test_block_basis_blocks_have_unit_norm():
    F = Fpa(1, 1)
    bb = build_block_basis(F, [2, 4, 8])
    for N, s, x in zip(bb.lengths, bb.scales, bb.blocks):
        assert N * F(s) == pytest.approx(1.0, rel=1e-10)
        assert luxemburg_norm(OrliczSpace(F), x) == pytest.approx(1.0, rel=1e-10)
    assert bb.blocks[1].indices == (3, 4, 5, 6)


@pytest.mark.parametrize("F", [Fpa(1, 1), Fpa(2, 1)], ids=str)
def test_block_isometry(F):
    chk = verify_block_isometry(build_block_basis(F, [2, 4, 8, 16]), trials=100)
    assert chk.passed and chk.max_relative_error <= 1e-9


def test_block_basis_domain():
    with pytest.raises(DomainError):
        build_block_basis(Fpa(1, 1), [2, 0])


def nakano_const(values):
    return NakanoSpace(ExponentSequence.finite(values))


def test_witness_identity():
    F = nakano_const(np.linspace(1, 3, 64))
    v = musielak_witness_check(F, F, MusielakWitness((0.0,) * 64, 0.5))
    assert v.verdict == "inconclusive" and v.evidence["status"] == "pass-at-scale"


def test_witness_young_inequality():
    n = np.arange(1, 65)
    p = np.full(64, 2.0)
    q = 2.0 - 1.0 / np.log(n + 2.0)
    r = 0.5
    a = r ** (p * q / (p - q))
    v = musielak_witness_check(nakano_const(q), nakano_const(p), MusielakWitness(tuple(a), 1.0, b=1 / r, C=1.0))
    assert v.verdict == "inconclusive" and v.evidence["status"] == "pass-at-scale"
    # without the summable slack the inclusion inequality breaks near 0
    v = musielak_witness_check(nakano_const(q), nakano_const(p), MusielakWitness((0.0,) * 64, 1.0))
    assert v.verdict == "fails"
    assert v.evidence["lhs"] > v.evidence["rhs"]


def test_witness_orientation():
    ones, twos = nakano_const([1.0] * 64), nakano_const([2.0] * 64)
    # l_1 in l_2: t < delta implies t^2 <= t
    assert musielak_witness_check(twos, ones, MusielakWitness((0.0,) * 64, 1.0)).verdict == "inconclusive"
    # l_2 not in l_1: t^2 < delta cannot force t <= C (bt)^2 + a_n with summable a_n
    a = tuple(1.0 / n**2 for n in range(1, 65))
    assert musielak_witness_check(ones, twos, MusielakWitness(a, 1.0, b=4.0, C=4.0)).verdict == "fails"


def test_witness_vacuous():
    F = nakano_const([2.0] * 64)
    v = musielak_witness_check(F, F, MusielakWitness((0.0,) * 64, 0.0))
    assert v.evidence["status"] == "vacuous"


def test_witness_too_short():
    F = nakano_const([2.0] * 64)
    with pytest.raises(DescriptorError):
        musielak_witness_check(F, F, MusielakWitness((0.0,) * 10, 1.0))


def test_density_witness():
    F = nakano_const([3.0] * 64)
    assert musielak_density_witness_check(F, MusielakWitness((0.0,) * 64, 1.0, C=8.0)).verdict == "inconclusive"
    assert musielak_density_witness_check(F, MusielakWitness((0.0,) * 64, 1.0, C=7.0)).verdict == "fails"
