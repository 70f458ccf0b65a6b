from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from padichyper.congruence import default_corpus
from padichyper.hyperseries import (
    CoefficientTable,
    ExactSeries,
    HGParams,
    IntegralityError,
    InvariantViolation,
    ValueUndefined,
    check_dwork_conditions,
    coeff_C,
    coeff_D,
    constant_D0,
    dwork_ratio,
    gauss_unit_check,
    h_unit_evidence,
    special_value,
    truncated_eval,
    truncated_ratios,
)
from padichyper.padic import (
    PAdicError,
    PrecisionError,
    iwasawa_log_oneunit,
    psi_tilde,
    rational_valuation,
    residue,
    split_unit,
)

HALF = Fraction(1, 2)


def hp(a, b, p, c=1):
    return HGParams(tuple(Fraction(x) for x in a), tuple(Fraction(x) for x in b), p, Fraction(c))


# parameters and conditions -----------------------------------------------


def test_params_validation():
    with pytest.raises(PAdicError):
        hp([HALF, HALF], [1], 4)
    with pytest.raises(PAdicError):
        hp([HALF, HALF], [], 5)
    with pytest.raises(PAdicError):
        hp([HALF, HALF], [-2], 5)
    with pytest.raises(PAdicError):
        hp([HALF, Fraction(1, 5)], [1], 5)
    with pytest.raises(PAdicError):
        hp([HALF, HALF], [1], 5, c=2)
    assert hp([HALF, HALF], [1], 5, c=6).c == 6


def test_conditions_vacuous_for_unit_lower():
    assert check_dwork_conditions(hp([HALF, HALF], [1], 5)).ok


def test_conditions_digit_inequality_holds():
    assert check_dwork_conditions(hp([Fraction(1, 5), Fraction(2, 5)], [Fraction(4, 5)], 11)).ok


def test_conditions_digit_inequality_fails():
    rep = check_dwork_conditions(hp([Fraction(1, 5), Fraction(4, 5)], [Fraction(2, 5)], 11))
    assert not rep.ok
    assert rep.failures[0][0] == "ii"


def test_negative_valuation_is_an_error():
    table = CoefficientTable(hp([Fraction(4, 5), Fraction(4, 5)], [Fraction(1, 5)], 11), 0, 4)
    with pytest.raises(IntegralityError):
        table.extend(20)


def test_orbit_levels():
    levels, start = hp([Fraction(1, 3), Fraction(1, 3)], [1], 5).orbit()
    assert [lv.a for lv in levels] == [(Fraction(1, 3),) * 2, (Fraction(2, 3),) * 2]
    assert start == 0


# coefficients ------------------------------------------------------------


def test_coeff_C_examples():
    assert coeff_C(CoefficientTable(hp([HALF, HALF], [1], 5), 0, 6), 1).agrees_with(Fraction(1, 4))
    assert coeff_C(CoefficientTable(hp([Fraction(1, 3), Fraction(2, 3)], [1], 5), 0, 6), 2).agrees_with(Fraction(10, 81))
    c3 = coeff_C(CoefficientTable(hp([HALF, HALF], [1], 3), 0, 6), 3)
    assert c3.valuation == 0 and c3.agrees_with(Fraction(25, 256))


def test_coeff_D_examples():
    table = CoefficientTable(hp([HALF, HALF], [1], 3), 0, 6)
    assert coeff_D(table, 1).agrees_with(Fraction(1, 4))
    d3 = coeff_D(table, 3)
    assert d3.agrees_with(Fraction(-13, 256))
    assert d3.residue(1) == 2


def test_coeff_D_degenerate_family_vanishes():
    table = CoefficientTable(hp([1, 1], [1], 7), 0, 5)
    assert table.d_residues(8)[7] == 0
    with pytest.raises(PrecisionError):
        coeff_D(table, 7)


def test_coeff_D_rejects_index_zero():
    with pytest.raises(ValueError):
        coeff_D(CoefficientTable(hp([HALF, HALF], [1], 3), 0, 4), 0)


def test_constant_D0_examples():
    assert constant_D0(hp([HALF, HALF], [1], 3), 2) == 8
    assert constant_D0(hp([1], [], 7), 3) == 0
    assert constant_D0(hp([2], [], 7), 3) == 1


def test_constant_D0_with_frobenius_constant():
    # c = 1 + p contributes -log(c)/p
    p, prec = 5, 3
    base = constant_D0(hp([HALF, HALF], [1], p), prec)
    shifted = constant_D0(hp([HALF, HALF], [1], p, c=1 + p), prec)
    assert (base - shifted) % p**prec == iwasawa_log_oneunit(1 + p, p, prec + 1) // p % p**prec


def test_unit_lower_parameters_reduce_to_upper_digamma():
    params = hp([Fraction(1, 3), Fraction(2, 3)], [1], 7)
    expected = (psi_tilde(Fraction(1, 3), 7, 4) + psi_tilde(Fraction(2, 3), 7, 4)) % 7**4
    assert constant_D0(params, 4) == expected


ORACLE_PARAMS = [
    hp([HALF, HALF], [1], 3),
    hp([Fraction(1, 4), Fraction(1, 4)], [HALF], 5),
    hp([Fraction(1, 3), Fraction(2, 3)], [1], 7),
    hp([Fraction(1, 5), Fraction(2, 5)], [Fraction(4, 5)], 11),
    hp([HALF, HALF], [1], 5, c=6),
    hp([Fraction(1, 3), Fraction(1, 3), Fraction(1, 3)], [1, 1], 7),
]


@pytest.mark.parametrize("params", ORACLE_PARAMS, ids=lambda x: x.label())
def test_table_matches_exact_oracle(params):
    p, W = params.p, 7
    table = CoefficientTable(params, 0, W)
    ex = ExactSeries(params)
    count = 2 * p * p + 3
    cs, ds = table.c_residues(count), table.d_residues(count)
    for n in range(count):
        assert cs[n] == residue(ex.C(n), p**W)
        assert table.valuation(n) == rational_valuation(ex.C(n), p)
        if n:
            k, _ = split_unit(n, p)
            assert ds[n] == residue(ex.D(n), p ** (W - k))
    lower = table.next_level()
    assert lower.c_residues(count) == [residue(ex.C(n, 1), p**W) for n in range(count)]


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(ORACLE_PARAMS), st.integers(0, 200))
def test_stream_is_integral(params, n):
    table = CoefficientTable(params, 0, 5)
    assert table.valuation(n) >= 0
    d = table.d_residues(n + 1)[n]
    assert d is None or d >= 0


def test_chunked_extension_matches_single_pass():
    params = hp([Fraction(1, 4), Fraction(1, 4)], [HALF], 5)
    one = CoefficientTable(params, 0, 6)
    one.extend(700)
    many = CoefficientTable(params, 0, 6)
    many.CHUNK = 37
    many.extend(700)
    assert one.c_residues(700) == many.c_residues(700)
    assert one.d_residues(700) == many.d_residues(700)


def test_terminating_series():
    params = hp([-3, HALF], [1], 5)
    table = CoefficientTable(params, 0, 4)
    cs = table.c_residues(10)
    assert cs[4:] == [0] * 6
    assert cs[:4] == [residue(ExactSeries(params).C(n), 5**4) for n in range(4)]


# truncated evaluation ----------------------------------------------------


def test_truncated_F_example():
    assert truncated_eval("F", hp([HALF, HALF], [1], 5), 1, 1, prec=1) == 1


def test_truncated_degree_zero():
    assert truncated_eval("F", hp([HALF, HALF], [1], 5), 0, 3, prec=2) == 1


def test_truncated_G_example():
    assert truncated_eval("G", hp([1], [], 3), 1, 1, prec=1) == 0


def test_truncated_G_needs_logarithmic_parameters():
    with pytest.raises(PAdicError):
        truncated_eval("G", hp([-2, HALF], [1], 5), 1)


def test_dwork_ratio_examples():
    assert dwork_ratio(hp([HALF, HALF], [1], 5), 1, 0) == 1
    assert dwork_ratio(hp([HALF, HALF], [1], 5), 1, 1) == 1
    params = hp([Fraction(1, 3), Fraction(2, 3)], [1], 7)
    assert dwork_ratio(params, 1, 1, 1) == dwork_ratio(params, 2, 1, 1)


def test_dwork_ratio_undefined():
    with pytest.raises(ValueUndefined):
        dwork_ratio(hp([1], [], 5), 2, 1)


@pytest.mark.parametrize("params", ORACLE_PARAMS[:3], ids=lambda x: x.label())
def test_ratio_pipeline_at_zero_returns_D0(params):
    m = 3
    vals = truncated_ratios(params, 0, m, (m,))
    assert vals[m] == constant_D0(params, m)


# special values --------------------------------------------------------------


@pytest.mark.parametrize(
    "key,value",
    [((3, 2, 1, 1, 2), 0), ((7, 3, 1, 1, 3), 290), ((13, 6, 2, 3, 6), 11998), ((5, 4, 1, 1, 3), 131)],
)
def test_special_value_examples(key, value):
    res = special_value(HGParams.from_ijk(*key))
    assert res.value == value
    assert res.modulus == key[0] ** 4
    assert res.stable and res.h_unit_ok


@pytest.mark.parametrize("key", [(5, 4, 1, 1, 3), (7, 3, 1, 2, 3), (7, 6, 1, 1, 4)])
def test_stabilisation_beyond_two_levels(key):
    vals = truncated_ratios(HGParams.from_ijk(*key), 1, 3, (3, 4, 5))
    assert len(set(vals.values())) == 1


def test_special_value_at_other_point():
    params = HGParams.from_ijk(7, 3, 1, 1, 3)
    res = special_value(params, 3, 3)
    vals = truncated_ratios(params, 3, 3, (3, 4, 5))
    assert res.value == vals[5]


def test_special_value_refuses_non_unit_point():
    with pytest.raises(ValueUndefined) as info:
        special_value(HGParams.from_ijk(7, 2, 1, 1, 2), 2)
    assert info.value.level == 0


def test_special_value_refuses_bad_conditions():
    with pytest.raises(PAdicError):
        special_value(hp([Fraction(1, 5), Fraction(4, 5)], [Fraction(2, 5)], 11))


def test_special_value_refuses_p_two():
    with pytest.raises(PAdicError):
        special_value(hp([1, 1], [1], 2))


def test_h_unit_evidence_covers_orbit():
    params = hp([Fraction(1, 3), Fraction(1, 3)], [1], 5)
    assert len(h_unit_evidence(params)) == 2


# Gauss's closed form ----------------------------------------------------------


@pytest.mark.parametrize("args,value", [((3, 1, 1, 3, 7), 6), ((2, 1, 1, 2, 5), 1), ((4, 1, 1, 2, 5), 3)])
def test_gauss_examples(args, value):
    assert gauss_unit_check(*args) == value


def test_gauss_rejects_bad_input():
    with pytest.raises(PAdicError):
        gauss_unit_check(4, 1, 1, 2, 7)
    with pytest.raises(PAdicError):
        gauss_unit_check(6, 3, 3, 5, 7)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_gauss_never_vanishes(p):
    for N in range(2, p):
        if (p - 1) % N:
            continue
        for i in range(1, N + 1):
            for j in range(1, N + 1):
                for k in range(i + j, N + 1):
                    assert gauss_unit_check(N, i, j, k, p) != 0


def test_corpus_is_admissible():
    for p in (3, 5, 7):
        for params in default_corpus(p):
            assert check_dwork_conditions(params).ok


def test_instability_is_detected(monkeypatch):
    import padichyper.hyperseries as hs

    monkeypatch.setattr(hs, "truncated_ratios", lambda params, alpha, m, levels: {m: 1, m + 1: 2})
    with pytest.raises(InvariantViolation):
        hs.special_value(HGParams.from_ijk(7, 3, 1, 1, 3))
