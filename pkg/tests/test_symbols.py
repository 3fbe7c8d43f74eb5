"""Symbol evaluation, the concrete catalog, and target-constant formulas."""

import math

import numpy as np
import pytest

from lpmult.catalog import (OperatorFamilyParam, beurling, beurling_imag,
                            beurling_matrix, beurling_matrix_symbol,
                            beurling_real, beurling_symbol, family_symbol,
                            identity_symbol, rotated, rotated_symbol,
                            target_constant, tau_admissible,
                            vector_perturbation)
from lpmult.exponents import ExponentConfig
from lpmult.symbols import MultiplierSymbol, homogeneity_defect


def test_beurling_symbol_values():
    assert beurling_symbol((1.0, 0.0)) == pytest.approx(-1.0)
    assert beurling_symbol((0.0, 1.0)) == pytest.approx(1.0)
    assert beurling_symbol((1.0, 1.0)) == pytest.approx(1j)


def test_beurling_unimodular_and_even():
    rng = np.random.default_rng(np.random.PCG64(0))
    xi = rng.standard_normal((256, 2))
    vals = beurling_symbol(xi)
    assert np.max(np.abs(np.abs(vals) - 1.0)) < 1e-12
    assert np.max(np.abs(beurling_symbol(-xi) - vals)) < 1e-12


def test_beurling_matrix_examples():
    assert np.allclose(beurling_matrix_symbol((0.0, 1.0)), np.eye(2), atol=1e-14)
    assert np.allclose(beurling_matrix_symbol((1.0, 0.0)), -np.eye(2), atol=1e-14)
    assert np.allclose(beurling_matrix_symbol((1.0, 1.0)),
                       np.array([[0.0, 1.0], [-1.0, 0.0]]), atol=1e-14)


def test_beurling_matrix_is_rotation():
    rng = np.random.default_rng(np.random.PCG64(1))
    xi = rng.standard_normal((128, 2))
    M = beurling_matrix_symbol(xi)
    eye = np.broadcast_to(np.eye(2), M.shape)
    assert np.max(np.abs(M @ np.conj(np.swapaxes(M, -1, -2)) - eye)) < 1e-12
    assert np.max(np.abs(np.linalg.det(M) - 1.0)) < 1e-12


def test_rotated_symbol_values_and_range():
    assert rotated_symbol(0.0)(np.array([1.0, 0.0])) == pytest.approx(1.0)
    assert rotated_symbol(math.pi / 2)(np.array([1.0, 1.0])) == pytest.approx(1.0)
    theta = 0.7
    phi = np.linspace(0.0, 2.0 * np.pi, 4096, endpoint=False)
    xi = np.stack([np.cos(phi), np.sin(phi)], axis=-1)
    vals = rotated_symbol(theta)(xi).real
    assert np.max(np.abs(vals)) <= 1.0 + 1e-12
    assert np.max(vals) >= 1.0 - 1e-6
    half = np.array([np.cos(theta / 2), np.sin(theta / 2)])
    assert rotated_symbol(theta)(half) == pytest.approx(1.0)


def test_family_symbol_examples():
    f0 = family_symbol(OperatorFamilyParam(family="F", z=0.0))
    assert f0.evaluate(np.array([1.0, 0.0])) == pytest.approx(1.0)
    scaled = family_symbol(OperatorFamilyParam(family="scaled", c=2.0))
    assert scaled.evaluate(np.array([1.0, 0.0])) == pytest.approx(2.0)
    fi = family_symbol(OperatorFamilyParam(family="F", z=1j))
    assert fi.evaluate(np.array([1.0, 1.0])) == pytest.approx(1j)
    riesz = family_symbol(OperatorFamilyParam(family="riesz", j=1))
    assert riesz.evaluate(np.array([1.0, 0.0])) == pytest.approx(-1j)


def test_unknown_family_rejected():
    with pytest.raises(ValueError):
        OperatorFamilyParam(family="hilbert")
    with pytest.raises(ValueError):
        OperatorFamilyParam(family="rotated", theta=float("nan"))


def test_zero_frequency_masked():
    sym = beurling()
    xi = np.array([[0.0, 0.0], [1.0, 0.0]])
    vals = sym.evaluate(xi)
    assert vals[0] == 0.0
    assert vals[1] == pytest.approx(-1.0)


def test_identity_symbol_is_total():
    sym = identity_symbol(2)
    assert sym.evaluate(np.array([0.0, 0.0])) == pytest.approx(1.0)


def test_homogeneity():
    rng = np.random.default_rng(np.random.PCG64(2))
    for sym in (beurling(), beurling_real(), beurling_imag(), rotated(0.3)):
        assert homogeneity_defect(sym, rng) < 1e-12


def test_vector_perturbation_shape():
    sym = vector_perturbation(beurling_real(), 0.5)
    val = sym.evaluate(np.array([0.0, 1.0]))
    assert val.shape == (2,)
    assert val[0] == pytest.approx(1.0)
    assert val[1] == pytest.approx(0.5)
    with pytest.raises(ValueError):
        vector_perturbation(beurling_matrix(), 0.5)


def test_pointwise_operator_norm_shapes():
    rng = np.random.default_rng(np.random.PCG64(3))
    xi = rng.standard_normal((16, 2))
    assert np.allclose(beurling().pointwise_operator_norm(xi), 1.0)
    assert np.allclose(beurling_matrix().pointwise_operator_norm(xi), 1.0, atol=1e-12)
    v = vector_perturbation(beurling_real(), 0.5)
    norms = v.pointwise_operator_norm(xi)
    assert np.all(norms <= math.hypot(1.0, 0.5) + 1e-12)


def test_bad_symbol_shape_rejected():
    with pytest.raises(ValueError):
        MultiplierSymbol(d=2, shape="tensor", evaluator=lambda xi: xi)


def test_tau_admissibility():
    e43 = ExponentConfig(4.0 / 3.0)
    assert tau_admissible(e43, 1.0, "def2")       # tau^2 = 1 <= p* - 1 = 3
    assert not tau_admissible(e43, 2.0, "def2")
    assert not tau_admissible(e43, 0.6, "cor7")
    assert tau_admissible(e43, 0.5, "cor7")
    assert tau_admissible(ExponentConfig(4.0), 10.0, "def2")
    with pytest.raises(ValueError):
        tau_admissible(e43, 0.5, "other")


def test_target_constants():
    e4 = ExponentConfig(4.0)
    assert target_constant(OperatorFamilyParam(family="beurling"), e4).family_target \
        == pytest.approx(3.0)
    vec = target_constant(OperatorFamilyParam(family="vector", tau=1.0), e4, tau=1.0)
    assert vec.family_target == pytest.approx(math.sqrt(10.0))
    fz = target_constant(OperatorFamilyParam(family="F", z=1.0), e4)
    assert fz.family_target == pytest.approx(3.0 * math.sqrt(2.0))
    assert not fz.external_assumption
    small = target_constant(OperatorFamilyParam(family="scaled", c=0.5), e4)
    big = target_constant(OperatorFamilyParam(family="scaled", c=2.0), e4)
    assert small.family_target == pytest.approx(3.0)
    assert big.family_target == pytest.approx(6.0)
    assert small.external_assumption and big.external_assumption
    fi = target_constant(OperatorFamilyParam(family="F", z=2j), e4)
    assert fi.family_target == pytest.approx(6.0)
    assert fi.external_assumption


def test_target_duality_symmetry():
    for fam in ("beurling", "rotated", "scaled", "F"):
        for p in (1.5, 3.0, 4.0):
            e = ExponentConfig(p)
            dual = ExponentConfig(e.q)
            param = OperatorFamilyParam(family=fam, theta=0.4, c=1.5, z=1.0)
            a = target_constant(param, e).family_target
            b = target_constant(param, dual).family_target
            assert a == pytest.approx(b, abs=1e-12)


def test_target_errors():
    e4 = ExponentConfig(4.0)
    with pytest.raises(ValueError):
        target_constant(OperatorFamilyParam(family="scaled", c=0.0), e4)
    with pytest.raises(ValueError):
        target_constant(OperatorFamilyParam(family="F", z=1.0 + 1.0j), e4)
    with pytest.raises(ValueError):
        target_constant(OperatorFamilyParam(family="riesz"), e4)
    with pytest.raises(ValueError):
        target_constant(OperatorFamilyParam(family="vector"), ExponentConfig(4.0, 2.0))
