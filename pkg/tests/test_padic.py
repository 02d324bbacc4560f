from fractions import Fraction

import pytest
import sympy

from whittakerpw.padic import (
    PadicConfig,
    TorusPoint,
    iwasawa_unipotent,
    modulus_delta,
    psi_shell_integral,
    shell_volume,
    uminus_measure_constant,
    uminus_measure_series,
)

F = Fraction
Q2, Q3 = PadicConfig(q=2), PadicConfig(q=3)


def test_config_validation():
    with pytest.raises(ValueError):
        PadicConfig(q=1)
    with pytest.raises(ValueError):
        PadicConfig(q=2, max_shell_guard=4)


def test_torus_group_law():
    assert TorusPoint(2) * TorusPoint(-5) == TorusPoint(-3)
    assert TorusPoint(4) * TorusPoint(4).inverse() == TorusPoint(0)


def test_modulus_examples():
    assert modulus_delta(Q2, 0, "standard") == 1
    assert modulus_delta(Q2, 1, "standard") == F(1, 4)
    assert modulus_delta(Q2, 1, "opposite") == 4


@pytest.mark.parametrize("q", [2, 3, 5])
def test_modulus_reciprocal(q):
    cfg = PadicConfig(q=q)
    for n in range(-10, 11):
        assert modulus_delta(cfg, n, "standard") * modulus_delta(cfg, n, "opposite") == 1


def test_shell_volumes():
    assert shell_volume(Q2, 0) == F(1, 2)
    assert shell_volume(Q2, 1) == F(1, 4)
    # sum over k >= 0 telescopes to 1 - q^-K
    assert sum(shell_volume(Q2, k) for k in range(40)) == 1 - F(1, 2**40)


def test_psi_shells():
    assert psi_shell_integral(Q3, 0) == F(2, 3)
    assert psi_shell_integral(Q2, -1) == -1
    for q in (2, 3, 5):
        cfg = PadicConfig(q=q)
        assert psi_shell_integral(cfg, -2) == 0
        for k in range(10):
            assert psi_shell_integral(cfg, k) == shell_volume(cfg, k)
        # full integral over w^-1 O vanishes; the k >= 0 part sums to 1 - q^-K
        K = 30
        assert sum(psi_shell_integral(cfg, k) for k in range(-1, K)) == -cfg.q ** (-K)


def test_iwasawa_examples():
    assert iwasawa_unipotent(0, "upper").in_maximal_compact
    assert iwasawa_unipotent(3, "lower").in_maximal_compact
    up = iwasawa_unipotent(-1, "upper")
    assert not up.in_maximal_compact and up.torus_valuation == -1
    # the lower side sits on the transposed torus: a_{-val x}
    assert iwasawa_unipotent(-2, "lower").torus_valuation == 2


def test_iwasawa_matrix_identity():
    x = sympy.Symbol("x")
    upper = sympy.Matrix([[1, x], [0, 1]])
    fact = sympy.Matrix([[1, 0], [1 / x, 1]]) * sympy.diag(x, 1 / x) * sympy.Matrix([[1 / x, 1], [-1, 0]])
    assert sympy.simplify(upper - fact) == sympy.zeros(2)
    lower = sympy.Matrix([[1, 0], [x, 1]])
    fact = sympy.Matrix([[1, 1 / x], [0, 1]]) * sympy.diag(1 / x, x) * sympy.Matrix([[0, -1], [1, 1 / x]])
    assert sympy.simplify(lower - fact) == sympy.zeros(2)
    # the K factors have determinant 1 and integral entries once |x| > 1
    assert sympy.Matrix([[1 / x, 1], [-1, 0]]).det() == 1
    assert sympy.Matrix([[0, -1], [1, 1 / x]]).det() == 1


def test_measure_constant():
    assert uminus_measure_constant(Q2) == F(2, 3)
    assert uminus_measure_constant(Q3) == F(3, 4)
    for q in (2, 3, 5):
        cfg = PadicConfig(q=q)
        assert uminus_measure_constant(cfg) * (1 + 1 / cfg.q) == 1


@pytest.mark.parametrize("q", [2, 3, 5])
def test_measure_series_tail(q):
    cfg = PadicConfig(q=q)
    depth = cfg.max_shell_guard
    closed = 1 / uminus_measure_constant(cfg)
    assert closed - uminus_measure_series(cfg, depth) == cfg.q ** (-depth)


def test_config_json():
    cfg = PadicConfig(q=F(5), max_shell_guard=20)
    assert PadicConfig.from_json(cfg.to_json()) == cfg
