from fractions import Fraction as F

import pytest

from cuspidal import sampling
from cuspidal.errors import NotFrontal
from cuspidal.frontal import (
    identifier_lambda,
    is_frontal,
    minimal_frontalization,
    normal_v0_closed_form,
    singular_sets,
    unit_normal,
)
from cuspidal.germs import FrontalNormalForm, MapGerm, NormalFormS1, assemble, builtin
from cuspidal.jets import Jet

N = 8
u, v, s = Jet.variables(N)


def test_unit_normal_planar():
    g = MapGerm(u, v ** 2, Jet({}, N))
    nu = unit_normal(g)
    assert nu.nu == (0, 0, 1)
    assert nu.certificate == 0


def test_unit_normal_fs(fs_plus, fs_minus):
    for fnf in (fs_plus, fs_minus):
        nu = unit_normal(fnf)
        assert tuple(c.constant for c in nu.nu) == (0, 0, 1)
        g = assemble(fnf)
        for d in ("u", "v"):
            assert sum(a * b for a, b in zip(g.differentiate(d), nu.nu)).is_zero()


def test_unit_normal_matches_closed_form(rich_germ):
    nu = unit_normal(rich_germ)
    for point in ((0.01, -0.02), (-0.015, 0.01)):
        got = [float(c.evaluate((point[0], 0, point[1]))) for c in nu.nu]
        want = normal_v0_closed_form(rich_germ, point)
        assert max(abs(a - b) for a, b in zip(got, want)) < 1e-9


def test_unit_normal_example32_frontal_part():
    fnf, _ = minimal_frontalization(builtin("example32"))
    nu = unit_normal(fnf)
    assert nu.nu[1].restrict("v") == 0


def test_unit_normal_rejects_non_frontal():
    with pytest.raises(NotFrontal):
        unit_normal(assemble(builtin("mond:S0")))


def test_identifier_lambda():
    lam = identifier_lambda(MapGerm(u, v ** 2, Jet({}, N)))
    assert lam == 2 * v.truncate(lam.order)
    fs0 = FrontalNormalForm.build(N, c1=u ** 2, c3=1)
    lam = identifier_lambda(fs0)
    assert lam.divide_by_var("v").constant != 0


def test_lambda_nondegenerate_for_fs(fs_plus, fs_minus):
    for fnf in (fs_plus, fs_minus):
        lam = identifier_lambda(fnf)
        assert lam[(0, 1, 0)] != 0
        assert lam.divide_by_var("v").constant == lam[(0, 1, 0)]


def test_lambda_divisible_by_v(rng):
    for _ in range(10):
        lam = identifier_lambda(sampling.random_frontal_form(rng, 7))
        q = lam.divide_by_var("v")
        assert (q.constant != 0) == (lam[(0, 1, 0)] != 0)


def test_is_frontal_examples():
    assert is_frontal(builtin("fs_plus"))
    assert is_frontal(builtin("fs_minus"))
    assert not is_frontal(builtin("mond:S0"))
    assert not is_frontal(builtin("example32"))


def test_is_frontal_agrees_with_unit_normal(rng):
    for _ in range(100):
        nf = sampling.random_normal_form(rng, 8)
        try:
            unit_normal(assemble(nf))
            ok = True
        except NotFrontal:
            ok = False
        assert ok == is_frontal(nf)


def test_minimal_frontalization_rows():
    for k in (1, 2, 3):
        fnf, obs = minimal_frontalization(builtin(f"mond:S{k}+"))
        assert obs == u ** (k + 1) * v
        assert assemble(fnf).z == v ** 3
        fnf, obs = minimal_frontalization(builtin(f"mond_def:B{k}-"))
        assert obs == u ** 2 * v + v * s
        assert assemble(fnf).z == -v ** (2 * k + 1) + v ** 3 * s


def test_minimal_frontalization_identity_and_idempotence(rng, fs_plus):
    fnf, obs = minimal_frontalization(builtin("fs_plus"))
    assert obs == 0 and assemble(fnf) == assemble(builtin("fs_plus"))
    for _ in range(10):
        nf = sampling.random_normal_form(rng, 8)
        fnf, obs = minimal_frontalization(nf)
        assert minimal_frontalization(fnf) == (fnf, Jet({}, fnf.order))
        assert minimal_frontalization(fnf.to_normal_form())[0] == fnf
        whole = assemble(nf)
        part = assemble(fnf)
        assert whole.z == part.z + obs.truncate(whole.z.order)


def test_singular_sets(fs_plus, fs_minus):
    assert singular_sets(fs_minus, F(-1, 25)).s2 == (F(-1, 5), F(1, 5))
    got = singular_sets(fs_minus.to_float(), -0.04).s2
    assert got == pytest.approx((-0.2, 0.2), abs=1e-15)
    assert singular_sets(fs_plus, F(1, 100)).s2 == ()
    assert singular_sets(fs_plus, 0).s2 == (0,)
    assert singular_sets(fs_plus, 0).s1 == "v=0"


def test_singular_sets_without_reduced_c1():
    fnf = FrontalNormalForm.build(N, c1=2 * s + u ** 2 - u ** 3, c3=1)
    roots = singular_sets(fnf, F(-1, 50)).s2
    assert len(roots) == 2
    assert all(abs(float(fnf.c1.evaluate((r, 0, F(-1, 50))))) < 1e-14 for r in roots)
