"""Acceptance gate: every criterion at full size, one pass/fail line each."""
import pytest

from dedesym import acceptance


def _run(criterion):
    result = criterion(quick=False)
    print(result.line())
    assert result.passed, result.detail
    return result


def test_criterion_01_oracle_equivalence():
    _run(acceptance.criterion_1)


def test_criterion_02_reciprocity_residual():
    _run(acceptance.criterion_2)


def test_criterion_03_eta_oracle():
    _run(acceptance.criterion_3)


def test_criterion_04_cocycle_suite():
    _run(acceptance.criterion_4)


def test_criterion_05_psi_consistency():
    _run(acceptance.criterion_5)


def test_criterion_06_constants():
    _run(acceptance.criterion_6)


def test_criterion_07_cross_algorithm_equality():
    _run(acceptance.criterion_7)


def test_criterion_08_q3_bridge():
    _run(acceptance.criterion_8)


def test_criterion_09_rationality_support():
    _run(acceptance.criterion_9)


def test_criterion_10_equidistribution():
    _run(acceptance.criterion_10)
