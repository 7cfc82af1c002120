"""Scenario file ingestion.

Scenario files are a flat, sectioned key-value format (a TOML-compatible
subset): ``[section]`` headers, one ``key = value`` per line, ``#`` comments.
Values are numbers, ``true``/``false``, or double-quoted strings.  All
quantities are MHz and dimensionless depths.  Unknown sections or keys are
rejected, and every problem is reported together with its line number rather
than failing on the first.
"""

from __future__ import annotations

import os
import re
from dataclasses import asdict
from pathlib import Path
from typing import Optional

from .errors import LambdaMixerError
from .model import (
    AtomicLine,
    EitMedium,
    RamanAbsorber,
    ScanOptions,
    Scenario,
    SweepSpec,
    scenario_violations,
)

_PACKAGED_DIR = Path(__file__).parent / "scenarios"
SCENARIO_DIR_ENV = "LAMBDA_MIXER_SCENARIO_DIR"

# (type, required) per key; "omega_a" etc. mirror the domain dataclasses.
_SCHEMA: dict[str, dict[str, tuple[type, bool]]] = {
    "eit": {
        "gamma_ge": (float, True),
        "gamma_gs": (float, True),
        "delta_control": (float, True),
        "omega_c": (float, True),
        "depth": (float, True),
    },
    "absorber": {
        "omega_a": (float, True),
        "delta_2": (float, True),
        "gamma_ab": (float, True),
        "gamma_ac": (float, False),
        "gamma_cb": (float, True),
        "depth_2l": (float, True),
        "center_offset": (float, False),
    },
    "line": {
        "gamma_r": (float, True),
        "wavelength": (float, True),
        "density": (float, True),
    },
    "sweep": {
        "axis": (str, True),
        "start": (float, True),
        "stop": (float, True),
        "points": (int, True),
        "scale": (str, False),
    },
    "options": {
        "stokes_seed": (float, False),
        "apply_light_shift": (bool, False),
        "exact_absorber": (bool, False),
        "normalize_stokes": (str, False),
        "delta_a": (float, False),
        "eit_fraction": (float, False),
        "absorber_fraction": (float, False),
        "target_depth_ratio": (float, False),
    },
}

_KEY_RE = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)\s*=\s*(.+)$")
_SECTION_RE = re.compile(r"^\[([A-Za-z_][A-Za-z0-9_]*)\]$")
_INT_RE = re.compile(r"^[+-]?\d+$")


class ScenarioFileError(LambdaMixerError):
    """The file did not parse into a valid scenario; carries all problems."""

    def __init__(self, path, errors):
        self.path = str(path)
        self.errors = list(errors)
        super().__init__(f"{self.path}: " + "; ".join(self.errors))


def _strip_comment(raw: str) -> str:
    out = []
    in_string = False
    for ch in raw:
        if ch == '"':
            in_string = not in_string
        elif ch == "#" and not in_string:
            break
        out.append(ch)
    return "".join(out).strip()


def _parse_value(text: str, want: type, errors: list[str], lineno: int, key: str):
    if want is bool:
        if text in ("true", "false"):
            return text == "true"
        errors.append(f"line {lineno}: {key} must be true or false, got {text!r}")
        return None
    if want is str:
        if len(text) >= 2 and text[0] == '"' and text[-1] == '"':
            return text[1:-1]
        errors.append(f"line {lineno}: {key} must be a double-quoted string, got {text!r}")
        return None
    if want is int:
        if _INT_RE.match(text):
            return int(text)
        errors.append(f"line {lineno}: {key} must be an integer, got {text!r}")
        return None
    try:
        return float(text)
    except ValueError:
        errors.append(f"line {lineno}: {key} must be a number, got {text!r}")
        return None


def parse_scenario_text(text: str, path: str = "<string>") -> Scenario:
    """Parse scenario text, raising :class:`ScenarioFileError` with every problem found."""
    errors: list[str] = []
    sections: dict[str, dict[str, object]] = {}
    key_lines: dict[str, int] = {}
    current: Optional[str] = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line:
            continue
        section_match = _SECTION_RE.match(line)
        if section_match:
            name = section_match.group(1)
            if name not in _SCHEMA:
                errors.append(f"line {lineno}: unknown section [{name}]")
                current = None
                continue
            if name in sections:
                errors.append(f"line {lineno}: duplicate section [{name}]")
            current = name
            sections.setdefault(name, {})
            continue
        key_match = _KEY_RE.match(line)
        if not key_match:
            errors.append(f"line {lineno}: expected 'key = value' or '[section]', got {raw.strip()!r}")
            continue
        key, value_text = key_match.groups()
        if current is None:
            errors.append(f"line {lineno}: key {key!r} appears outside any section")
            continue
        schema = _SCHEMA[current]
        if key not in schema:
            errors.append(f"line {lineno}: unknown key {key!r} in section [{current}]")
            continue
        if key in sections[current]:
            errors.append(f"line {lineno}: duplicate key {key!r} in section [{current}]")
            continue
        value = _parse_value(value_text.strip(), schema[key][0], errors, lineno, key)
        if value is not None:
            sections[current][key] = value
            key_lines[f"{current}.{key}"] = lineno

    if "eit" not in sections:
        errors.append("missing required section [eit]")
    for name, data in sections.items():
        for key, (_, required) in _SCHEMA[name].items():
            if required and key not in data:
                errors.append(f"section [{name}] is missing required key {key!r}")
    if errors:
        raise ScenarioFileError(path, errors)

    absorber = None
    if "absorber" in sections:
        data = dict(sections["absorber"])
        data.setdefault("gamma_ac", data["gamma_ab"])  # assumed equal when unspecified
        absorber = RamanAbsorber(**data)
    line = AtomicLine(**sections["line"]) if "line" in sections else None
    sweep = None
    if "sweep" in sections:
        sweep = SweepSpec(**{"scale": "linear", **sections["sweep"]})
    options = ScanOptions(**sections.get("options", {}))
    scenario = Scenario(
        eit=EitMedium(**sections["eit"]),
        absorber=absorber,
        line=line,
        sweep=sweep,
        options=options,
    )

    for violation in scenario_violations(scenario):
        lineno = key_lines.get(violation.field)
        prefix = f"line {lineno}: " if lineno is not None else ""
        errors.append(prefix + str(violation))
    if errors:
        raise ScenarioFileError(path, errors)
    return scenario


def scenario_search_dirs() -> list[Path]:
    dirs = []
    env = os.environ.get(SCENARIO_DIR_ENV)
    if env:
        dirs.append(Path(env))
    dirs.append(_PACKAGED_DIR)
    return dirs


def resolve_scenario_path(name: str) -> Path:
    """Resolve a path or a shipped-scenario name to an existing file."""
    direct = Path(name)
    if direct.is_file():
        return direct
    candidates = []
    for base in scenario_search_dirs():
        candidates.append(base / name)
        if not name.endswith(".toml"):
            candidates.append(base / f"{name}.toml")
    for cand in candidates:
        if cand.is_file():
            return cand
    raise FileNotFoundError(f"scenario not found: {name!r} (also searched {candidates})")


def load_scenario(name: str) -> tuple[Scenario, Path]:
    path = resolve_scenario_path(name)
    return parse_scenario_text(path.read_text(encoding="utf-8"), str(path)), path


def scenario_to_dict(scenario: Scenario) -> dict:
    """JSON-ready snapshot of a scenario, omitting absent sections."""
    out: dict = {"eit": asdict(scenario.eit)}
    if scenario.absorber is not None:
        out["absorber"] = asdict(scenario.absorber)
    if scenario.line is not None:
        out["line"] = asdict(scenario.line)
    if scenario.sweep is not None:
        out["sweep"] = asdict(scenario.sweep)
    out["options"] = asdict(scenario.options)
    return out
