import json
import warnings
from fractions import Fraction as F

import pytest

from cuspidal import sampling
from cuspidal.errors import (
    InvariantViolation,
    NotReducedC1,
    OrderTooLow,
    ParseError,
    UnknownName,
    WrongTwoJet,
)
from cuspidal.germs import (
    FrontalNormalForm,
    MapGerm,
    NormalFormS1,
    assemble,
    builtin,
    builtin_names,
    decompose_f32,
    dump_germ_spec,
    expand_c1,
    germ_spec_text,
    load_germ_spec,
    normalize,
    parse_germ_spec,
    reassemble_f32,
    reduce_parameter,
)
from cuspidal.jets import Jet

N = 8
u, v, s = Jet.variables(N)


def test_assemble_fs_plus():
    fnf = FrontalNormalForm.build(N, c1=u ** 2 + s, c3=1)
    g = assemble(fnf)
    assert g.x == u
    assert g.y == v ** 2
    assert g.z == u ** 2 * v ** 3 + v ** 5 + s * v ** 3
    assert assemble(builtin("fs_plus", N)) == g


def test_assemble_fs_minus_and_zero():
    g = assemble(FrontalNormalForm.build(N, c1=u ** 2 + s, c3=-1))
    assert g.z == u ** 2 * v ** 3 - v ** 5 + s * v ** 3
    zero = assemble(NormalFormS1.build(N))
    assert (zero.x, zero.y, zero.z) == (u, v ** 2, 0)


def test_normal_form_constraints():
    with pytest.raises(InvariantViolation):
        NormalFormS1.build(N, f32=1)
    with pytest.raises(InvariantViolation):
        NormalFormS1.build(N, f33=u + 1)
    with pytest.raises(InvariantViolation):
        FrontalNormalForm.build(N, c0=1)
    with pytest.raises(InvariantViolation):
        NormalFormS1.build(N, f21=v)


def test_decompose_examples():
    c0, c1, c2, c3 = decompose_f32(v * (u ** 2 + s) + v ** 3)
    assert (c0, c1, c2, c3) == (0, u ** 2 + s, 0, 1)
    assert all(c == 0 for c in decompose_f32(Jet({}, N)))
    c0, c1, c2, c3 = decompose_f32(v * s + u ** 2 * v + v ** 3 + v ** 5)
    w = Jet.var("v", c3.order, weights=(1, 2, 1))
    assert c0 == 0 and c1 == s + u ** 2 and c2 == 0
    assert c3 == 1 + w


def test_decompose_reassemble_random(rng):
    for _ in range(20):
        f32 = sampling.random_jet(rng, N - 2, min_degree=1)
        assert reassemble_f32(*decompose_f32(f32)) == f32


def test_expand_c1_examples():
    e = expand_c1(s + u ** 2)
    assert (e.d1, e.d2, e.d3, e.d4, e.d20) == (0, 1, 0, 0, 1)
    e = expand_c1(s + u * s + u ** 2)
    assert e.d1 == 1 and e.d2 == 1 and e.d3 == 0 and e.d4 == 0
    e = expand_c1(s - u ** 2)
    assert e.d2 == -1 and e.sign < 0 and e.d20 == 1
    assert expand_c1(s + u ** 3).degenerate
    with pytest.raises(NotReducedC1):
        expand_c1(2 * s + u ** 2)


def test_expand_c1_reassembles(rng):
    for _ in range(20):
        fnf = sampling.random_frontal_form(rng, N, d2_sign=rng.choice((1, -1)))
        assert expand_c1(fnf.c1).reassemble() == fnf.c1


def test_normalize_idempotent(rng):
    for nf in (builtin("fs_plus", 7), builtin("example32", 7), sampling.random_normal_form(rng, 7)):
        out, _ = normalize(assemble(nf))
        assert assemble(out) == assemble(nf)


def test_normalize_recovers_fs_plus():
    rot = sampling.random_rotation(__import__("random").Random(5))
    g = assemble(builtin("fs_plus", N)).compose([u + u ** 2, v + u * v, None]).rotate(rot)
    out, log = normalize(g)
    assert assemble(out) == assemble(builtin("fs_plus", N))
    assert log.rotation is not None


def test_normalize_simple_example():
    g = MapGerm(Jet.var("u", 6), Jet.var("v", 6) ** 2 + Jet.var("u", 6) ** 3, Jet({}, 6))
    out, _ = normalize(g)
    uu = Jet.var("u", 4)
    assert out.f21 == uu
    assert assemble(out).y == Jet.var("u", 6) ** 3 + Jet.var("v", 6) ** 2


def test_normalize_orbit_invariance(rng):
    for frontal in (True, False):
        nf = (sampling.random_frontal_form(rng, 7).to_normal_form() if frontal
              else sampling.random_normal_form(rng, 7, frontal=False))
        phi = sampling.random_admissible_transform(rng, 7, identity_parameter=not frontal)
        g = sampling.transform_germ(assemble(nf), sampling.random_rotation(rng), phi)
        out, _ = normalize(g, reduce_parameter=frontal)
        assert assemble(out) == assemble(nf)


def test_normalize_errors():
    uu, vv = Jet.var("u", 5), Jet.var("v", 5)
    with pytest.raises(WrongTwoJet):
        normalize(MapGerm(uu, vv, Jet({}, 5)))
    with pytest.raises(WrongTwoJet):
        normalize(MapGerm(uu ** 2, vv ** 2, Jet({}, 5)))
    with pytest.raises(OrderTooLow):
        normalize(assemble(builtin("fs_plus", 2)))
    with pytest.raises(InvariantViolation):
        normalize(MapGerm(uu + Jet.var("s", 5), vv ** 2, Jet({}, 5)))


def test_reduce_parameter():
    nf = NormalFormS1.build(N, f32=v * (u ** 2 + 2 * s + s ** 2) + v ** 3)
    out = reduce_parameter(nf)
    c1 = decompose_f32(out.f32)[1]
    assert c1.restrict("u") == Jet.var("s", c1.order)


def test_builtins():
    assert assemble(builtin("mond:S0")).z == u * v
    g = assemble(builtin("example32"))
    assert g.y == u ** 2 + v ** 2
    assert g.z == u ** 2 + v ** 3 * s + u ** 2 * v ** 3 + v ** 5 + v ** 7 + v * s + u ** 2 * v
    with pytest.warns(UserWarning):
        printed = assemble(builtin("mond_def:F4"))
    assert printed.z == u ** 3 * v + v ** 6 + v * s + v ** 3 * s
    assert assemble(builtin("mond_def:F4_corrected")).z == u ** 3 * v + v ** 5 + v * s + v ** 3 * s
    with pytest.raises(UnknownName):
        builtin("mond:X9")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for name in builtin_names():
            assert assemble(builtin(name)).satisfies_origin_condition()


def test_germ_spec_round_trip(tmp_path):
    g = assemble(builtin("example32"))
    path = tmp_path / "g.json"
    dump_germ_spec(g, path)
    assert load_germ_spec(path) == g
    assert parse_germ_spec(germ_spec_text(g)) == g
    data = json.loads(germ_spec_text(g))
    assert data["vars"] == ["u", "v", "s"] and data["order"] == N


@pytest.mark.parametrize("text", [
    '{"order": 3, "components": [',
    '[1, 2]',
    '{"order": -1, "components": [[], [], []]}',
    '{"order": 3, "components": [[], []]}',
    '{"order": 3, "components": [[[[1, 0, 0], 1, 0]], [], []]}',
    '{"order": 3, "components": [[[[1, 0, 0], 1, 1], [[1, 0, 0], 2, 1]], [], []]}',
    '{"vars": ["x", "y", "z"], "order": 3, "components": [[], [], []]}',
])
def test_germ_spec_errors(text):
    with pytest.raises(ParseError):
        parse_germ_spec(text)


def test_parse_error_position():
    with pytest.raises(ParseError) as info:
        parse_germ_spec('{\n  "order": 3,\n  "components": [oops]\n}')
    assert info.value.line == 3 and info.value.column is not None
