"""Command-line entry point.

Exit codes: 0 success, 1 configuration or I/O error, 2 numerical
precondition violated (e.g. too few Kirchhoff quadrature panels).
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from ..classical import NyquistError
from .config import ConfigError, parse_config
from .runner import RUNNERS

log = logging.getLogger("slitdiff")

# flag dest -> config key
FLAG_KEYS = {
    "method": "methods",
    "wavelength": "wavelength",
    "wavenumber": "wavenumber",
    "slit_width": "slit_width",
    "slits": "slits",
    "separation": "separation",
    "screen_distance": "screen_distance",
    "theta_max": "theta_max",
    "samples": "samples",
    "normalize": "normalize",
    "output": "output",
    "format": "format",
    "plot": "plot",
    "workers": "workers",
    "panels": "panels",
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="flat key = value config file")
    common.add_argument("--method", metavar="NAME[,...]",
                        help="marcella, fraunhofer, huygens[:N], kirchhoff[:VARIANT], "
                             "freshman, dirichlet, neumann, or all")
    wave = common.add_mutually_exclusive_group()
    wave.add_argument("--wavelength", metavar="X")
    wave.add_argument("--wavenumber", metavar="X")
    common.add_argument("--slit-width", metavar="X")
    common.add_argument("--slits", choices=("1", "2"))
    common.add_argument("--separation", metavar="X", help="center-to-center slit distance")
    common.add_argument("--screen-distance", metavar="X")
    common.add_argument("--theta-max", metavar="DEG")
    common.add_argument("--samples", metavar="N")
    common.add_argument("--normalize", choices=("raw", "peak", "probability"))
    common.add_argument("--output", metavar="PATH")
    common.add_argument("--format", choices=("csv", "json"))
    common.add_argument("--plot", metavar="PATH", help="also write an SVG plot")
    common.add_argument("--workers", metavar="N", help="thread count for independent work items")
    common.add_argument("--panels", metavar="N", help="Kirchhoff quadrature panels per slit")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="slitdiff", description="Slit diffraction: momentum-space and classical methods."
    )
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "pattern": "write one intensity pattern per selected method",
        "compare": "pairwise deviations between selected methods",
        "sweep": "comparison summaries over sweep_* axes",
        "bandlimit": "band-limited reconstruction of the slit wavefunction",
        "convergence": "Huygens sum error versus source count",
    }
    for name, text in helps.items():
        sub.add_parser(name, parents=[common], help=text, description=text)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    overrides = {
        key: str(getattr(args, dest))
        for dest, key in FLAG_KEYS.items()
        if getattr(args, dest) is not None
    }
    try:
        text = Path(args.config).read_text(encoding="utf-8") if args.config else None
        cfg = parse_config(text, overrides)
        written = RUNNERS[args.command](cfg)
    except ConfigError as err:
        print(f"config error: {err}", file=sys.stderr)
        return 1
    except NyquistError as err:
        print(f"numerical precondition: {err}", file=sys.stderr)
        return 2
    except OSError as err:
        print(f"I/O error: {err}", file=sys.stderr)
        return 1
    except ValueError as err:
        print(f"numerical precondition: {err}", file=sys.stderr)
        return 2
    for path in written:
        log.info("wrote %s", path)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
