"""
Command-line front end.

    python -m timespace simulate --scene preset:pyramid --out tracks.csv
    python -m timespace transform tracks.csv --out invariants.csv
    python -m timespace detect invariants.csv --out labels.csv
    python -m timespace render --scene preset:street --t 2 --map combined --out frame.ppm
    python -m timespace constancy invariants.csv --t1 0 --t2 3
    python -m timespace demo --out out/

Exit codes: 0 success, 1 validation error, 2 I/O error.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Callable

from config.scene_registry import PRESET_PREFIX, build_preset
from config.settings import FLOW_MODES, OUTPUT_DIR, configure_logging, is_dev_mode
from timespace.engine.demo import run_demo
from timespace.engine.measure import constancy_report, detect_records, transform_samples
from timespace.engine.run_config import RunConfig
from timespace.engine.simulate import render_scene, simulate_tracks
from timespace.errors import ValidationError
from timespace.geometry.scene_file import load_scene
from timespace.geometry.types import Scene
from timespace.io.manifest import read_focal, read_yaml, write_intrinsics, write_manifest
from timespace.io.tables import read_invariants, read_tracks, write_invariants, write_labels, write_tracks
from timespace.raster.ppm import write_ppm
from timespace.raster.render import RENDER_KINDS

logger = logging.getLogger("timespace.cli")

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2


class UsageError(ValidationError):
    """Raised for malformed command lines."""
    pass


class ArgumentParser(argparse.ArgumentParser):
    """argparse that reports usage errors as validation failures (exit 1)."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def resolve_scene(value: str | None) -> Scene:
    """Load `--scene`, which is a file path or `preset:<name>`."""
    if not value:
        raise ValidationError("--scene is required")
    if value.startswith(PRESET_PREFIX):
        try:
            return build_preset(value[len(PRESET_PREFIX):])
        except KeyError as e:
            raise ValidationError(e.args[0]) from None
    return load_scene(value)


def _require_out(config: RunConfig) -> Path:
    if not config.out:
        raise ValidationError("--out is required")
    path = Path(config.out)
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def _manifest_path(out: Path) -> Path:
    return Path(f"{out}.manifest.yaml")


def cmd_simulate(config: RunConfig, args: argparse.Namespace) -> int:
    scene = resolve_scene(config.scene)
    out = _require_out(config)
    samples = simulate_tracks(
        scene, config.frames, config.dt, config.flow, config.noise, config.seed, config.workers
    )
    rows = write_tracks(samples, out)
    write_intrinsics(out, scene.rig.focal, scene.rig.width, scene.rig.height)
    write_manifest(config.manifest(), _manifest_path(out))
    logger.info("wrote %d track rows to %s", rows, out)
    return EXIT_OK


def cmd_transform(config: RunConfig, args: argparse.Namespace) -> int:
    out = _require_out(config)
    focal = config.focal if config.focal is not None else read_focal(args.input)
    if not focal > 0:
        raise ValidationError(f"focal must be > 0, got {focal}")
    samples = read_tracks(args.input)
    if not samples:
        logger.warning("%s has no rows", args.input)
    rows = write_invariants(transform_samples(samples, focal), out)
    logger.info("wrote %d invariant rows to %s", rows, out)
    return EXIT_OK


def cmd_detect(config: RunConfig, args: argparse.Namespace) -> int:
    out = _require_out(config)
    records = read_invariants(args.input)
    labels, summary = detect_records(records, config.eps_abs, config.eps_rel, config.workers)
    write_labels(labels, out)
    print(summary.line())
    return EXIT_OK


def cmd_render(config: RunConfig, args: argparse.Namespace) -> int:
    if config.map not in RENDER_KINDS:
        raise ValidationError(f"--map must be one of {', '.join(RENDER_KINDS)}, got '{config.map}'")
    scene = resolve_scene(config.scene)
    out = _require_out(config)
    image = render_scene(scene, config.t, config.map, config.vmin, config.vmax, config.workers)
    write_ppm(image, out)
    logger.info("wrote %s map at t=%g to %s", config.map, config.t, out)
    return EXIT_OK


def cmd_constancy(config: RunConfig, args: argparse.Namespace) -> int:
    records = read_invariants(args.input)
    report = constancy_report(records, config.t1, config.t2)
    text = report.text()
    print(text, end="")
    if config.out:
        _require_out(config).write_text(text, encoding="utf-8")
    return EXIT_OK


def cmd_demo(config: RunConfig, args: argparse.Namespace) -> int:
    result = run_demo(config.out or OUTPUT_DIR, config)
    print(
        f"shape_constancy={result.shape_constancy:.3g} shape_constancy_fd={result.shape_constancy_fd:.3g} "
        f"precision={result.detection.precision:.3f} recall={result.detection.recall:.3f} "
        f"frames={result.frames_written} out={result.out_dir}"
    )
    return EXIT_OK


COMMANDS: dict[str, Callable[[RunConfig, argparse.Namespace], int]] = {
    "simulate": cmd_simulate,
    "transform": cmd_transform,
    "detect": cmd_detect,
    "render": cmd_render,
    "constancy": cmd_constancy,
    "demo": cmd_demo,
}


def build_parser() -> ArgumentParser:
    common = ArgumentParser(add_help=False)
    common.add_argument("--config", help="YAML run file; flags override its values")
    common.add_argument("--out", help="Output path (directory for demo)")
    common.add_argument("--workers", type=int, help="Threads for data-parallel stages")
    common.add_argument("--verbose", action="store_true", help="Debug logging")

    parser = ArgumentParser(prog="timespace", description="Time-based invariant mapping of a moving camera's view.")
    sub = parser.add_subparsers(dest="command", required=True)

    simulate = sub.add_parser("simulate", parents=[common], help="Synthesize a tracks CSV")
    simulate.add_argument("--scene", help="Scene file or preset:<name>")
    simulate.add_argument("--frames", type=int)
    simulate.add_argument("--dt", type=float)
    simulate.add_argument("--flow", choices=FLOW_MODES)
    simulate.add_argument("--noise", type=float, help="Relative sigma on rho_dot")
    simulate.add_argument("--seed", type=int)

    transform = sub.add_parser("transform", parents=[common], help="Tracks CSV to invariants CSV")
    transform.add_argument("input")
    transform.add_argument("--focal", type=float, help="Focal length in pixels (default: tracks sidecar)")

    detect = sub.add_parser("detect", parents=[common], help="Invariants CSV to labels CSV")
    detect.add_argument("input")
    detect.add_argument("--eps-abs", dest="eps_abs", type=float)
    detect.add_argument("--eps-rel", dest="eps_rel", type=float)

    render = sub.add_parser("render", parents=[common], help="Color-coded invariant map as PPM")
    render.add_argument("--scene", help="Scene file or preset:<name>")
    render.add_argument("--t", type=float)
    render.add_argument("--map", choices=RENDER_KINDS)
    render.add_argument("--vmin", type=float)
    render.add_argument("--vmax", type=float)

    constancy = sub.add_parser("constancy", parents=[common], help="Shape-constancy report between two frames")
    constancy.add_argument("input")
    constancy.add_argument("--t1", type=float)
    constancy.add_argument("--t2", type=float)

    demo = sub.add_parser("demo", parents=[common], help="Reproduce every experiment into --out")
    demo.add_argument("--seed", type=int)
    demo.add_argument("--noise", type=float)
    demo.add_argument("--eps-abs", dest="eps_abs", type=float)
    demo.add_argument("--eps-rel", dest="eps_rel", type=float)

    return parser


_NON_CONFIG_ARGS = {"command", "config", "verbose", "input"}


def main(argv: list[str] | None = None) -> int:
    """Run one command; returns the process exit code."""
    try:
        args = build_parser().parse_args(argv)
        configure_logging("DEBUG" if args.verbose else None)
        file_values = read_yaml(args.config) if args.config else {}
        flags = {k: v for k, v in vars(args).items() if k not in _NON_CONFIG_ARGS}
        config = RunConfig.resolve(flags, file_values)
        return COMMANDS[args.command](config, args)
    except ValidationError as e:
        logger.error("%s", e, exc_info=is_dev_mode())
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as e:
        logger.error("%s", e, exc_info=is_dev_mode())
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
