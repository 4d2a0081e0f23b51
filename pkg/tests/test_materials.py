import io
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from casimir_thermal.constants import EV
from casimir_thermal.dielectric import Drude, GeneralizedPlasma, NormalSkin, OscillatorSet, Plasma
from casimir_thermal.errors import DomainError
from casimir_thermal.materials import (MaterialError, MaterialRecord, load_material, parse_material,
                                       resolve_material, serialize, validate_against_anchors)

GOOD = """# test
name = X
unit = eV
omega_p = 9.0
gamma = 0.035
oscillator = 7.0 0.75 3.0
"""


def test_parse_converts_units():
    rec = parse_material(GOOD)
    assert rec.name == "X"
    assert rec.omega_p == pytest.approx(9 * EV, rel=1e-15)
    assert rec.gamma == pytest.approx(0.035 * EV, rel=1e-15)
    (f, g, w), = rec.oscillators.entries
    assert (f, g, w) == pytest.approx((7 * EV**2, 0.75 * EV, 3 * EV), rel=1e-15)


def test_rad_s_unit():
    rec = parse_material("unit = rad_s\nomega_p = 1.5e16\n")
    assert rec.omega_p == 1.5e16 and rec.gamma == 0.0 and rec.oscillators.K == 0


@pytest.mark.parametrize("text, line, fragment", [
    ("omega_p = 9\n", None, "unit"),
    ("unit = eV\nomega_p = 9\nomega_p = 8\n", 3, "duplicate"),
    ("unit = eV\nfoo = 1\n", 2, "unknown key"),
    ("unit = eV\nomega_p = -9\n", 2, "negative"),
    ("unit = eV\nomega_p = 9\noscillator = 1 2\n", 3, "3 fields"),
    ("unit = eV\nomega_p = 9\noscillator = 1 2 x\n", 3, "not a number"),
    ("unit = eV\nomega_p = 9\noscillator = 1 -2 3\n", 3, "negative"),
    ("unit = eV\njust text\n", 2, "key = value"),
    ("unit = furlong\nomega_p = 9\n", 1, "unit"),
    ("unit = eV\n", None, "omega_p"),
    ("unit = eV\nomega_p = nan\n", 2, "finite"),
])
def test_parse_errors(text, line, fragment):
    with pytest.raises(MaterialError) as exc:
        parse_material(text)
    assert exc.value.line == line
    assert fragment in str(exc.value)
    if line is not None:
        assert f"line {line}" in str(exc.value)


def test_material_error_is_domain_error():
    assert issubclass(MaterialError, DomainError)


def test_model_kinds():
    rec = parse_material(GOOD)
    assert isinstance(rec.model("plasma"), Plasma)
    assert isinstance(rec.model("gplasma"), GeneralizedPlasma)
    assert isinstance(rec.model("drude"), Drude)
    skin = rec.model("skin")
    assert isinstance(skin, NormalSkin)
    assert skin.sigma0 == pytest.approx(rec.omega_p**2 / (4 * math.pi * rec.gamma), rel=1e-15)
    with pytest.raises(DomainError):
        rec.model("jellium")


def test_shipped_sample(au):
    assert au.name == "Au" and au.oscillators.K == 6
    assert au.source_note


positive = st.floats(1e-3, 1e20, allow_nan=False, allow_infinity=False)


@settings(max_examples=80, deadline=None)
@given(st.text(alphabet=st.characters(blacklist_categories=("Cc", "Cs"), blacklist_characters='"#='),
               max_size=12).map(str.strip),
       positive, st.one_of(st.just(0.0), positive),
       st.lists(st.tuples(positive, st.one_of(st.just(0.0), positive), positive), max_size=5))
def test_round_trip(name, wp, gamma, osc):
    rec = MaterialRecord(name=name, omega_p=wp, gamma=gamma, oscillators=OscillatorSet(tuple(osc)))
    assert parse_material(serialize(rec)) == rec


@settings(max_examples=200, deadline=None)
@given(st.text(max_size=200))
def test_parser_is_total(text):
    # arbitrary input yields a record or a MaterialError, nothing else
    try:
        parse_material(text)
    except MaterialError:
        pass


@settings(max_examples=100, deadline=None)
@given(st.binary(max_size=100))
def test_parser_total_on_bytes(data):
    try:
        parse_material(data)
    except MaterialError:
        pass


def test_anchor_report(au):
    rep = validate_against_anchors(au)
    assert rep.passed
    assert rep.sum_c == pytest.approx(6.3175, rel=1e-3)
    assert rep.ratio == pytest.approx(2.5, rel=1e-14)
    bad = validate_against_anchors(au, anchors=((200e-9, 0.5), (500e-9, 0.2)))
    assert not bad.passed and bad.ratio == pytest.approx(2.5, rel=1e-14)


def test_resolution_order(tmp_path, monkeypatch):
    d = tmp_path / "mats"
    d.mkdir()
    (d / "cu.mat").write_text("unit = eV\nomega_p = 7.0\n", encoding="utf-8")
    (d / "au_sample.mat").write_text("unit = eV\nomega_p = 1.0\n", encoding="utf-8")
    monkeypatch.setenv("CASIMIR_MATERIALS_DIR", str(d))
    assert load_material("cu").omega_p == pytest.approx(7 * EV)
    # the environment directory shadows shipped data
    assert load_material("au_sample").omega_p == pytest.approx(1 * EV)
    assert resolve_material(str(d / "cu.mat")) == d / "cu.mat"
    monkeypatch.delenv("CASIMIR_MATERIALS_DIR")
    assert load_material("au_sample").omega_p == pytest.approx(9 * EV)
    with pytest.raises(FileNotFoundError):
        resolve_material("no_such_material")


def test_stdin(monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO(GOOD))
    assert load_material("-").name == "X"
