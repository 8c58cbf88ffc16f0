"""Run configuration: flat ``key = value`` files plus CLI overrides.

Precedence is CLI flag > config file > default. Unknown keys, malformed
values and violated invariants raise :class:`ConfigError`, which carries
the offending key and, for file input, the line number.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, Mapping, Optional, Tuple

from ..classical import Kernel, ObliquityVariant
from ..core import AngleGrid, ApertureSpec, Normalization, WaveSpec

DEFAULT_HUYGENS_N = 10_000


class ConfigError(ValueError):
    def __init__(self, message: str, key: Optional[str] = None, line: Optional[int] = None):
        self.message = message
        self.key = key
        self.line = line
        where = []
        if key is not None:
            where.append(f"key {key!r}")
        if line is not None:
            where.append(f"line {line}")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)


def _float(key, text):
    try:
        value = float(text)
    except ValueError:
        raise ConfigError(f"expected a number, got {text!r}", key) from None
    if not math.isfinite(value):
        raise ConfigError(f"expected a finite number, got {text!r}", key)
    return value


def _int(key, text):
    try:
        return int(text)
    except ValueError:
        raise ConfigError(f"expected an integer, got {text!r}", key) from None


def _float_list(key, text):
    return tuple(_float(key, t.strip()) for t in text.split(",") if t.strip())


def _int_list(key, text):
    return tuple(_int(key, t.strip()) for t in text.split(",") if t.strip())


def _optional_float(key, text):
    return None if text.strip().lower() in ("", "none", "auto") else _float(key, text)


def _optional_int(key, text):
    return None if text.strip().lower() in ("", "none", "auto") else _int(key, text)


def _source(key, text):
    return None if text.strip().lower() in ("plane", "plane-wave", "inf") else _float(key, text)


def _choice(*choices):
    def parse(key, text):
        text = text.strip().lower()
        if text not in choices:
            raise ConfigError(f"expected one of {', '.join(choices)}, got {text!r}", key)
        return text
    return parse


def _path(key, text):
    text = text.strip()
    return text or None


def _methods(key, text):
    items = tuple(t.strip().lower() for t in text.split(",") if t.strip())
    if not items:
        raise ConfigError("at least one method must be selected", key)
    return items


# key -> (parser, default). Angles in degrees; None means "derive" or "unset".
SCHEMA = {
    "slits": (_int, 1),
    "slit_width": (_float, 1.0),
    "separation": (_optional_float, None),
    "wavelength": (_optional_float, None),
    "wavenumber": (_optional_float, None),
    "incidence_angle": (_float, 0.0),
    "source_distance": (_source, None),
    "screen_distance": (_optional_float, None),
    "theta_max": (_float, 15.0),
    "samples": (_int, 501),
    "methods": (_methods, ("all",)),
    "huygens_n": (_int, DEFAULT_HUYGENS_N),
    "kernel": (_choice(*(k.value for k in Kernel)), Kernel.SPHERICAL.value),
    "panels": (_optional_int, None),
    "normalize": (_choice(*(n.value for n in Normalization)), Normalization.PEAK.value),
    "output": (_path, None),
    "format": (_choice("csv", "json"), "csv"),
    "plot": (_path, None),
    "bandlimit_ka": (_float, math.pi),
    "bandlimit_extent": (_float, 2.0),
    "bandlimit_samples": (_int, 801),
    "convergence_n": (_int_list, (10, 100, 1000, 10_000)),
    "convergence_theta": (_float, 20.0),
    "sweep_lambda_over_a": (_float_list, ()),
    "sweep_theta_max": (_float_list, ()),
    "sweep_n": (_int_list, ()),
    "sweep_screen_distance": (_float_list, ()),
    "workers": (_int, 1),
}


@dataclass(frozen=True)
class RunConfig:
    """Validated run parameters. Lengths share one unit; angles are degrees."""

    slits: int = 1
    slit_width: float = 1.0
    separation: Optional[float] = None
    wavelength: float = 0.05
    incidence_angle: float = 0.0
    source_distance: Optional[float] = None
    screen_distance: float = 1e4
    theta_max: float = 15.0
    samples: int = 501
    methods: Tuple[str, ...] = ()
    kernel: str = "spherical"
    panels: Optional[int] = None
    normalize: str = "peak"
    output: Optional[str] = None
    format: str = "csv"
    plot: Optional[str] = None
    bandlimit_ka: float = math.pi
    bandlimit_extent: float = 2.0
    bandlimit_samples: int = 801
    convergence_n: Tuple[int, ...] = (10, 100, 1000, 10_000)
    convergence_theta: float = 20.0
    sweep_lambda_over_a: Tuple[float, ...] = ()
    sweep_theta_max: Tuple[float, ...] = ()
    sweep_n: Tuple[int, ...] = ()
    sweep_screen_distance: Tuple[float, ...] = ()
    workers: int = 1
    sources: Dict[str, str] = field(default_factory=dict, compare=False, repr=False)

    def aperture(self) -> ApertureSpec:
        if self.slits == 1:
            return ApertureSpec.single(self.slit_width)
        return ApertureSpec.double(self.slit_width, self.separation)

    def wave(self) -> WaveSpec:
        return WaveSpec.from_wavelength(
            self.wavelength,
            theta_incident=math.radians(self.incidence_angle),
            source_distance=self.source_distance,
        )

    def grid(self) -> AngleGrid:
        return AngleGrid.symmetric(math.radians(self.theta_max), self.samples)

    @property
    def k(self) -> float:
        return 2 * math.pi / self.wavelength

    @property
    def lambda_over_a(self) -> float:
        return self.wavelength / self.slit_width

    @property
    def has_sweep(self) -> bool:
        return bool(
            self.sweep_lambda_over_a or self.sweep_theta_max
            or self.sweep_n or self.sweep_screen_distance
        )


def parse_config_text(text: str) -> Dict[str, Tuple[str, int]]:
    """Raw ``key -> (value, line)`` pairs from flat config text."""
    raw = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {line!r}", line=lineno)
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.replace("-", "_").lower()
        if key not in SCHEMA:
            raise ConfigError("unknown key", key, lineno)
        if key in raw:
            raise ConfigError(f"duplicate key (first set on line {raw[key][1]})", key, lineno)
        raw[key] = (value, lineno)
    return raw


def canonical_method(name: str, huygens_n: int) -> str:
    """Normalize a method token, e.g. ``dirichlet`` -> ``kirchhoff:dirichlet``."""
    name = name.strip().lower()
    variants = {v.value for v in ObliquityVariant}
    if name in ("marcella", "fraunhofer"):
        return name
    if name == "huygens":
        return f"huygens:{huygens_n}"
    if name.startswith("huygens:"):
        n_text = name.split(":", 1)[1].removeprefix("n=")
        n = _int("methods", n_text)
        if n < 1:
            raise ConfigError(f"huygens N must be positive, got {n}", "methods")
        return f"huygens:{n}"
    if name == "kirchhoff":
        return "kirchhoff:kirchhoff"
    if name in variants:
        return f"kirchhoff:{name}"
    if name.startswith("kirchhoff:") and name.split(":", 1)[1] in variants:
        return name
    raise ConfigError(f"unknown method {name!r}", "methods")


def _all_methods(slits: int, huygens_n: int):
    methods = ["marcella", "fraunhofer"]
    if slits == 1:
        methods.append(f"huygens:{huygens_n}")
    methods.extend(f"kirchhoff:{v.value}" for v in ObliquityVariant)
    return methods


def parse_config(
    text: Optional[str] = None, cli: Optional[Mapping[str, str]] = None
) -> RunConfig:
    """Merge config text and CLI overrides into a validated :class:`RunConfig`.

    ``cli`` maps schema keys to their raw string values; only flags the user
    actually passed should be present.
    """
    raw = parse_config_text(text or "")
    lines = {key: line for key, (_, line) in raw.items()}
    merged = {key: value for key, (value, _) in raw.items()}
    sources = {key: "file" for key in merged}
    for key, value in (cli or {}).items():
        key = key.replace("-", "_").lower()
        if key not in SCHEMA:
            raise ConfigError("unknown key", key)
        if key in ("wavelength", "wavenumber"):
            # one CLI wave flag replaces whichever the file used
            for other in ("wavelength", "wavenumber"):
                if sources.get(other) == "file":
                    merged.pop(other)
                    sources.pop(other)
        merged[key] = value
        sources[key] = "cli"

    values = {}
    for key, (parser, default) in SCHEMA.items():
        if key in merged:
            try:
                values[key] = parser(key, merged[key])
            except ConfigError as err:
                line = lines.get(key) if sources[key] == "file" else None
                raise ConfigError(err.message, key, line) from None
        else:
            values[key] = default

    def fail(message, key):
        raise ConfigError(message, key, lines.get(key) if sources.get(key) == "file" else None)

    if values["slits"] not in (1, 2):
        fail("slit count must be 1 or 2", "slits")
    a = values["slit_width"]
    if not a > 0:
        fail("slit width must be positive", "slit_width")
    if values["slits"] == 2:
        if values["separation"] is None:
            fail("two slits need a separation", "separation")
        if not values["separation"] > a:
            fail("separation must exceed the slit width", "separation")

    if values["wavelength"] is not None and values["wavenumber"] is not None:
        fail("wavelength and wavenumber are mutually exclusive", "wavenumber")
    if values["wavenumber"] is not None:
        if not values["wavenumber"] > 0:
            fail("wavenumber must be positive", "wavenumber")
        wavelength = 2 * math.pi / values["wavenumber"]
    elif values["wavelength"] is not None:
        if not values["wavelength"] > 0:
            fail("wavelength must be positive", "wavelength")
        wavelength = values["wavelength"]
    else:
        wavelength = a / 20

    if not abs(values["incidence_angle"]) < 90:
        fail("incidence angle must lie in (-90, 90) degrees", "incidence_angle")
    if values["source_distance"] is not None and not values["source_distance"] > 0:
        fail("source distance must be positive", "source_distance")
    screen = values["screen_distance"]
    if screen is None:
        screen = 1e4 * a
    elif not screen > 0:
        fail("screen distance must be positive", "screen_distance")
    if not 0 < values["theta_max"] < 90:
        fail("theta_max must lie in (0, 90) degrees", "theta_max")
    if values["samples"] < 2:
        fail("need at least 2 samples", "samples")
    if values["huygens_n"] < 1:
        fail("huygens_n must be positive", "huygens_n")
    if values["panels"] is not None and values["panels"] < 2:
        fail("panels must be at least 2", "panels")
    if values["workers"] < 1:
        fail("workers must be at least 1", "workers")
    if values["bandlimit_ka"] <= 0:
        fail("bandlimit_ka must be positive", "bandlimit_ka")
    if values["bandlimit_extent"] < 1:
        fail("bandlimit_extent must be at least 1 (profile must cover [-a, a])", "bandlimit_extent")
    if values["bandlimit_samples"] < 2:
        fail("bandlimit_samples must be at least 2", "bandlimit_samples")
    ns = values["convergence_n"]
    if not ns or any(n < 1 for n in ns) or any(b <= c for c, b in zip(ns, ns[1:])):
        fail("convergence_n must be strictly increasing positive integers", "convergence_n")
    if not abs(values["convergence_theta"]) < 90:
        fail("convergence_theta must lie in (-90, 90) degrees", "convergence_theta")
    if any(v <= 0 for v in values["sweep_lambda_over_a"]):
        fail("sweep values must be positive", "sweep_lambda_over_a")
    if any(not 0 < v < 90 for v in values["sweep_theta_max"]):
        fail("sweep angles must lie in (0, 90) degrees", "sweep_theta_max")
    if any(v < 1 for v in values["sweep_n"]):
        fail("sweep N values must be positive", "sweep_n")
    if any(v <= 0 for v in values["sweep_screen_distance"]):
        fail("sweep distances must be positive", "sweep_screen_distance")

    methods = []
    try:
        for token in values["methods"]:
            if token == "all":
                methods.extend(_all_methods(values["slits"], values["huygens_n"]))
            else:
                methods.append(canonical_method(token, values["huygens_n"]))
    except ConfigError as err:
        fail(err.message, "methods")
    methods = list(dict.fromkeys(methods))
    if values["slits"] != 1 and any(m.startswith("huygens") for m in methods):
        fail("the huygens method is defined for a single slit only", "methods")

    return RunConfig(
        slits=values["slits"],
        slit_width=a,
        separation=values["separation"],
        wavelength=wavelength,
        incidence_angle=values["incidence_angle"],
        source_distance=values["source_distance"],
        screen_distance=screen,
        theta_max=values["theta_max"],
        samples=values["samples"],
        methods=tuple(methods),
        kernel=values["kernel"],
        panels=values["panels"],
        normalize=values["normalize"],
        output=values["output"],
        format=values["format"],
        plot=values["plot"],
        bandlimit_ka=values["bandlimit_ka"],
        bandlimit_extent=values["bandlimit_extent"],
        bandlimit_samples=values["bandlimit_samples"],
        convergence_n=ns,
        convergence_theta=values["convergence_theta"],
        sweep_lambda_over_a=values["sweep_lambda_over_a"],
        sweep_theta_max=values["sweep_theta_max"],
        sweep_n=values["sweep_n"],
        sweep_screen_distance=values["sweep_screen_distance"],
        workers=values["workers"],
        sources=sources,
    )
