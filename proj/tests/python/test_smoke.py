import json
import math

import numpy as np
import pytest

import ladder


def test_closure_and_hermitian_window():
    spec = ladder.AlgebraSpec.parametric(1.0, 2.0, 1.0)
    w = ladder.IndexWindow.make(0, 20, 0, 18)
    L, R, S = ladder.build_matrices(spec, w)
    assert np.allclose(L, R.conj().T)
    assert ladder.commutator_residual(spec, w) <= 1e-12


def test_negative_lambda_raises():
    spec = ladder.AlgebraSpec.parametric(1.0, -2.0, 1.0)
    with pytest.raises(ladder.NonUnitaryRegime):
        ladder.build_matrices(spec, ladder.IndexWindow.full(0, 8))


def test_expm_of_rotation_generator():
    a = np.array([[0, -0.7], [0.7, 0]], dtype=complex)
    e, bound = ladder.expm(a)
    exact = np.array([[math.cos(0.7), -math.sin(0.7)], [math.sin(0.7), math.cos(0.7)]])
    assert np.abs(e - exact).max() <= max(bound, 1e-15)


def test_u1_factorization():
    spec = ladder.AlgebraSpec.parametric(1.0, 1.0, 1.0)
    w = ladder.padded_window(spec, 0, 11, 24)
    for ordering in ("normal", "anti-normal"):
        assert ladder.factorization_residual(spec, w, ordering, y=0.3) <= 1e-10


def test_gn_routes_agree():
    spec = ladder.AlgebraSpec.parametric(2.0, 3.0, 1.0)
    for n in range(4):
        closed = ladder.gn_closed(spec, n, 0.4)["value"]
        oracle = ladder.gn_oracle(spec, n, 0.4)["value"]
        assert abs(closed - oracle) <= 1e-9


def test_tangent_column():
    nodes = ladder.triangle_nodes("tilde", rows=7, p="2")
    col0 = [int(num) for r, c, num, den in nodes if c == 0]
    assert col0 == [1, 2, 16, 272]


def test_bessel_against_scipy():
    special = pytest.importorskip("scipy.special")
    for n in range(6):
        assert abs(ladder.bessel_jn(n, 1.7) - special.jv(n, 1.7)) <= 1e-14


def test_pole_error():
    with pytest.raises(ladder.PoleError):
        ladder.tau((math.pi / 2) ** 2)


def test_cli_round_trip():
    code, out, err = ladder.run_cli(["sumrule", "--y", "0.4"])
    assert code == 0, err
    report = json.loads(out)
    assert report["ok"] and len(report["table"]) == 5
