"""Material parameter files.

Format: UTF-8 text, ``#`` starts a comment, otherwise ``key = value`` lines.
Keys are ``name``, ``unit`` (``eV`` or ``rad_s``), ``omega_p``, ``gamma``,
``source_note`` and repeated ``oscillator = f g omega`` lines (``f`` in
unit squared, ``g`` and ``omega`` in unit). ``eV`` values are converted to
rad/s once, with the factor ``e/hbar``.
"""

import math
import os
import sys
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .constants import C, EV
from .dielectric import Drude, GeneralizedPlasma, NormalSkin, OscillatorSet, Plasma
from .errors import DomainError

UNITS = {"eV": EV, "rad_s": 1.0}
SCALAR_KEYS = ("name", "unit", "omega_p", "gamma", "source_note")
ENV_VAR = "CASIMIR_MATERIALS_DIR"
SUFFIX = ".mat"

# sum_j C_j delta_j for gold at two separations
DEFAULT_ANCHORS = ((200e-9, 0.272), (500e-9, 0.109))
ANCHOR_SUM_C = 6.3175
ANCHOR_THRESHOLD = 0.01


class MaterialError(DomainError):
    """Invalid material file; ``line`` is the 1-based line number or ``None``."""

    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class MaterialRecord:
    """Material parameters in rad/s."""

    name: str
    omega_p: float
    gamma: float = 0.0
    oscillators: OscillatorSet = field(default_factory=OscillatorSet)
    source_note: str = ""

    def __post_init__(self):
        if not self.omega_p > 0:
            raise DomainError(f"omega_p must be positive, got {self.omega_p}")
        if not self.gamma >= 0:
            raise DomainError(f"gamma must be >= 0, got {self.gamma}")

    def model(self, kind):
        """Dielectric model ``drude``, ``plasma``, ``gplasma`` or ``skin`` from this record."""
        if kind == "plasma":
            return Plasma(self.omega_p)
        if kind == "gplasma":
            return GeneralizedPlasma(self.omega_p, self.oscillators)
        if kind == "drude":
            return Drude(self.omega_p, self.gamma)
        if kind == "skin":
            if self.gamma == 0:
                raise DomainError("normal-skin model needs gamma > 0")
            return NormalSkin(self.omega_p**2 / (4 * math.pi * self.gamma))
        raise DomainError(f"unknown model kind {kind!r}")


def _number(text, key, lineno):
    try:
        v = float(text)
    except ValueError:
        raise MaterialError(f"{key}: not a number: {text!r}", lineno) from None
    if not math.isfinite(v):
        raise MaterialError(f"{key}: value must be finite", lineno)
    if v < 0:
        raise MaterialError(f"{key}: negative parameter {v}", lineno)
    return v


def _unquote(value):
    if len(value) >= 2 and value[0] == value[-1] == '"':
        return value[1:-1]
    return value


def parse_material(text):
    """Parse a material file into a :class:`MaterialRecord` (rad/s units)."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise MaterialError(f"not UTF-8: {exc}") from None
    scalars, scalar_lines, osc = {}, {}, []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("﻿"):
            line = line[1:].strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise MaterialError(f"expected 'key = value', got {raw.strip()!r}", lineno)
        key, value = (s.strip() for s in line.split("=", 1))
        if key == "oscillator":
            parts = value.split()
            if len(parts) != 3:
                raise MaterialError(f"oscillator needs 3 fields (f g omega), got {len(parts)}", lineno)
            f, g, w = (_number(p, "oscillator", lineno) for p in parts)
            if w == 0:
                raise MaterialError("oscillator omega must be positive", lineno)
            osc.append(((f, g, w), lineno))
            continue
        if key not in SCALAR_KEYS:
            raise MaterialError(f"unknown key {key!r}", lineno)
        if key in scalars:
            raise MaterialError(f"duplicate key {key!r}", lineno)
        if not value:
            raise MaterialError(f"empty value for {key!r}", lineno)
        scalars[key] = value
        scalar_lines[key] = lineno
    if "unit" not in scalars:
        raise MaterialError("missing unit declaration (unit = eV or unit = rad_s)")
    unit = scalars["unit"]
    if unit not in UNITS:
        raise MaterialError(f"unit must be one of {sorted(UNITS)}, got {unit!r}", scalar_lines["unit"])
    if "omega_p" not in scalars:
        raise MaterialError("missing omega_p")
    k = UNITS[unit]
    omega_p = _number(scalars["omega_p"], "omega_p", scalar_lines["omega_p"])
    if omega_p == 0:
        raise MaterialError("omega_p must be positive", scalar_lines["omega_p"])
    gamma = _number(scalars["gamma"], "gamma", scalar_lines["gamma"]) if "gamma" in scalars else 0.0
    entries = tuple((f * k * k, g * k, w * k) for (f, g, w), _ in osc)
    return MaterialRecord(
        name=_unquote(scalars.get("name", "")),
        omega_p=omega_p * k,
        gamma=gamma * k,
        oscillators=OscillatorSet(entries),
        source_note=_unquote(scalars.get("source_note", "")),
    )


def serialize(record):
    """Write a record in ``rad_s`` units; ``parse_material`` reads it back exactly."""
    lines = [f"name = {record.name}" if record.name else "# unnamed material", "unit = rad_s"]
    if record.source_note:
        lines.append(f'source_note = "{record.source_note}"')
    lines.append(f"omega_p = {record.omega_p!r}")
    lines.append(f"gamma = {record.gamma!r}")
    for f, g, w in record.oscillators.entries:
        lines.append(f"oscillator = {f!r} {g!r} {w!r}")
    return "\n".join(lines) + "\n"


def sample_path(name="au_sample"):
    """Path of a material file shipped with the package."""
    return resources.files("casimir_thermal").joinpath("data", name + SUFFIX)


def resolve_material(ref):
    """Locate a material: existing path, then ``$CASIMIR_MATERIALS_DIR``, then shipped data."""
    p = Path(ref)
    if p.is_file():
        return p
    names = [ref] if ref.endswith(SUFFIX) else [ref, ref + SUFFIX]
    env = os.environ.get(ENV_VAR)
    if env:
        for d in env.split(os.pathsep):
            for n in names:
                cand = Path(d) / n
                if cand.is_file():
                    return cand
    shipped = sample_path(ref[: -len(SUFFIX)] if ref.endswith(SUFFIX) else ref)
    if shipped.is_file():
        return shipped
    raise FileNotFoundError(f"material {ref!r} not found (searched path, ${ENV_VAR}, shipped data)")


def load_material(ref):
    """Read and parse a material by path or name; ``"-"`` reads standard input."""
    if ref == "-":
        return parse_material(sys.stdin.read())
    return parse_material(resolve_material(ref).read_text(encoding="utf-8"))


@dataclass(frozen=True)
class AnchorCheck:
    a: float
    expected: float
    computed: float
    rel_deviation: float


@dataclass(frozen=True)
class AnchorReport:
    sum_c: float
    checks: tuple
    threshold: float

    @property
    def passed(self):
        return all(c.rel_deviation <= self.threshold for c in self.checks)

    @property
    def ratio(self):
        """Ratio of the first two computed sums (equals the inverse separation ratio)."""
        if len(self.checks) < 2 or self.checks[1].computed == 0:
            return math.nan
        return self.checks[0].computed / self.checks[1].computed


def validate_against_anchors(record, anchors=DEFAULT_ANCHORS, threshold=ANCHOR_THRESHOLD):
    """Compare ``sum C_j`` and ``sum C_j delta_j(a)`` with reference values (report only)."""
    osc = record.oscillators
    sum_c = osc.scaled(1.0).sum_c
    checks = []
    for a, expected in anchors:
        got = osc.scaled(C / (2 * a)).sum_c_delta
        dev = abs(got - expected) / abs(expected) if expected else abs(got)
        checks.append(AnchorCheck(a=a, expected=expected, computed=got, rel_deviation=dev))
    return AnchorReport(sum_c=sum_c, checks=tuple(checks), threshold=threshold)
