"""One test per acceptance criterion; each prints its PASS/FAIL line."""

import os

import pytest

from comatroid.verification import VerificationContext, run_criterion


@pytest.fixture(scope="module")
def ctx():
    return VerificationContext(jobs=min(4, os.cpu_count() or 1))


def _check(ctx, name):
    result = run_criterion(name, ctx)
    print(result.line())
    assert result.passed, result.line()


def test_01_decider_agreement(ctx):
    _check(ctx, "decider-agreement")


def test_02_circuit_law(ctx):
    _check(ctx, "circuit-law")


def test_03_binary_rank4_census(ctx):
    _check(ctx, "binary-rank4-census")


def test_04_ternary_rank3_census(ctx):
    _check(ctx, "ternary-rank3-census")


def test_05_f77_connected_hyperplanes(ctx):
    _check(ctx, "f77-connected-hyperplanes")


def test_06_hyperplane_counts(ctx):
    _check(ctx, "hyperplane-counts")


def test_07_extension_scans(ctx):
    _check(ctx, "extension-scans")


def test_08_hyperplane_spot_checks(ctx):
    _check(ctx, "hyperplane-spot-checks")


def test_09_connectivity_sum_exception(ctx):
    _check(ctx, "connectivity-sum-exception")


def test_10_connected_hyperplane_guarantees(ctx):
    _check(ctx, "connected-hyperplane-guarantees")


def test_11_comatroid_closure(ctx):
    _check(ctx, "comatroid-closure")


def test_12_complement_well_defined(ctx):
    _check(ctx, "complement-well-defined")
