import pytest

import starcoh.pipeline as pipeline
from starcoh.examples import BUILTIN_NAMES, builtin
from starcoh.forms import ScalarFormSeries
from starcoh.scalar import I
from starcoh.weyl import Truncation
from starcoh.weylforms import omega_y_dx
from starcoh.pipeline import (
    compute_K0,
    phi_of_derivative_cocycle,
    verify_commutator_lemmas,
    verify_DK0,
    verify_H_lemma,
)

from conftest import cached_setup

OMEGA0 = ScalarFormSeries.from_matrix(builtin("torus_h_omega1").omega)
OMEGA1 = ScalarFormSeries.from_matrix(builtin("torus_h_omega1").perturbations[0][1])


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_DK0_identity(name):
    r = verify_DK0(cached_setup(name))
    assert r["ok"], r["residual_terms"]
    assert r["matches_class"]


def test_K0_flat():
    S = cached_setup("moyal_r2")
    assert compute_K0(S) == -omega_y_dx(S.P, S.trunc, I / 2)
    assert verify_DK0(S)["DK0"] == ScalarFormSeries.from_matrix(builtin("moyal_r2").omega).scale(I)


def test_DK0_torus_values():
    assert verify_DK0(cached_setup("torus_h_omega1"))["DK0"] == OMEGA0.scale(I)
    assert verify_DK0(cached_setup("torus_h2_omega1"))["DK0"] == (OMEGA0 - OMEGA1.shift(2)).scale(I)


def test_phi_of_c_from_class():
    # -i hbar^2 d/dhbar (omega0/hbar + hbar omega1) = i omega0 - i hbar^2 omega1
    assert phi_of_derivative_cocycle(cached_setup("torus_h2_omega1")) == (OMEGA0 - OMEGA1.shift(2)).scale(I)


@pytest.mark.parametrize("name", ["moyal_r2", "curved_toy", "torus_h2_omega1"])
def test_H_lemma(name):
    assert verify_H_lemma(cached_setup(name), degree=2)["ok"]


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_commutator_lemmas(name):
    r = verify_commutator_lemmas(cached_setup(name), count=20)
    assert r["ok"], r["failures"]


def test_lemmas_detect_a_wrong_gamma(monkeypatch):
    real = pipeline.solve_gamma
    monkeypatch.setattr(pipeline, "solve_gamma", lambda c, p, t: real(c, p, t).scale(2))
    r = verify_commutator_lemmas(builtin("curved_toy").setup(Truncation(10)), count=20)
    assert not r["ok"]
    assert r["failures"]["D_E"] > 0
