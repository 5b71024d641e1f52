import random
from fractions import Fraction as F

import pytest

from hetdtb.errors import DimensionError, NotApplicable
from hetdtb.ldm import LevelWord, apply_downshift
from hetdtb.regimes import ChannelTriple as C
from hetdtb.schemes import Bit, LinearScheme, build_corner_scheme_C, build_full_cache_scheme, build_scheme_mu0, make_placement
from hetdtb.sim import (
    build_decoders,
    check_decodability,
    decode,
    demands,
    recursive_reconstruct,
    simulate_delivery,
)


def test_demands():
    assert demands(2) == [(1, 1), (1, 2), (2, 1), (2, 2)]


def test_transcript_example_corner_c():
    s = build_corner_scheme_C(C(2, 4, 3)).scheme
    tr = simulate_delivery(s, [(1, 0, 1, 0), (0, 1, 1, 0)], (1, 2))
    assert [str(w) for w in (tr.x_s[0], tr.x_r[0], tr.y_r[0], tr.y_u[0])] == ["0010", "1100", "0001", "1100"]
    assert decode(s, tr) == ((1, 0, 1, 0), (0, 1, 1, 0))


def test_transcript_json_and_channel_law():
    s = build_scheme_mu0(C(2, 4, 3), 6)
    rng = random.Random(3)
    files = [[rng.randrange(2) for _ in range(s.L)] for _ in range(2)]
    tr = simulate_delivery(s, files, (2, 1))
    doc = tr.to_json()
    assert set(doc) == {"n", "d", "x_s", "x_r", "y_r", "y_u"}
    assert len(doc["y_u"]) == s.T and all(len(w) == s.q for w in doc["y_u"])
    for xs, xr, yr, yu in zip(tr.x_s, tr.x_r, tr.y_r, tr.y_u):
        assert yr == apply_downshift(xs, 3)
        assert yu == apply_downshift(xs, 2) ^ apply_downshift(xr, 4)


def test_file_shape_errors():
    s = build_full_cache_scheme(C(1, 1, 1)).scheme
    with pytest.raises(DimensionError):
        simulate_delivery(s, [(1,)], (1, 1))
    with pytest.raises(ValueError):
        simulate_delivery(s, [(2,), (0,)], (1, 1))


def test_silent_relay_fails_user():
    # the user's bit rides a DeNB level only the relay can hear
    n = C(1, 1, 2)
    place = make_placement(2, 1, 0)
    s = LinearScheme(n, 1, 1, place,
                     ((frozenset({Bit("r", 0)}), frozenset({Bit("u", 0)})),),
                     ((frozenset(), frozenset()),))
    rep = check_decodability(s)
    assert not rep.all_decoded and not rep.ok
    assert not build_decoders(s, (1, 2)).ue_ok


def test_full_cache_weak_source():
    n = C(1, 5, 1)
    p = build_full_cache_scheme(n)
    assert p.dtb == F(1, 5)
    rep = check_decodability(p.scheme)
    assert rep.all_decoded
    assert any("decode d=(1,2) ue: ok" == l for l in rep.lines())


def test_recursion_succeeds():
    s = build_scheme_mu0(C(1, 3, 4), 64)
    assert s.T == 33
    rng = random.Random(11)
    files = [[rng.randrange(2) for _ in range(s.L)] for _ in range(2)]
    for d in demands(2):
        words, ok = recursive_reconstruct(s, files, d)
        assert ok
        assert words == simulate_delivery(s, files, d).y_r


def test_recursion_on_corner_scheme():
    s = build_corner_scheme_C(C(2, 4, 3)).scheme
    files = [(1, 1, 0, 1), (0, 0, 1, 1)]
    for d in demands(2):
        assert recursive_reconstruct(s, files, d)[1]


def test_recursion_not_applicable():
    s = build_scheme_mu0(C(4, 3, 2), 4)
    with pytest.raises(NotApplicable):
        recursive_reconstruct(s, [[0] * 4, [1] * 4], (1, 2))
