"""Command-line entry points: run a simulation, validate a script, serve HTTP.

    rovsim run --config settings.json [--mode with_input] [--provider http]
    rovsim validate script.cs
    rovsim serve --config settings.json [--port 8000]
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .bridge import LLMBridge, ProviderError, make_provider
from .camera import capture, render_topdown
from .chatscript import LexError, ParseError, parse, validate
from .config import AppConfig, ConfigError, load_config
from .executor import SimSession
from .scene import scene_to_json
from .worldgen import generate

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_IO = 2


def run_simulation(config: AppConfig) -> int:
    """Build the world, run per mode, persist the run directory."""
    out = Path(config.output_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        print(f"error: cannot create output directory {out}: {exc}", file=sys.stderr)
        return EXIT_IO

    scene = generate(config.scatter, config.terrain, water=config.water)
    try:
        bridge = LLMBridge(make_provider(config.provider))
    except ProviderError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE

    capture_lines: list[str] = []
    snapshot_files: dict[str, bytes] = {}

    def on_capture(live_scene, frame: int) -> None:
        record = capture(live_scene, frame, config.intrinsics)
        capture_lines.append(record.to_json() + "\n")
        if config.snapshot.enabled:
            ppm = render_topdown(
                live_scene,
                config.snapshot.bounds,
                (config.snapshot.width, config.snapshot.height),
            )
            snapshot_files[f"capture_{frame}.ppm"] = ppm

    session = SimSession(scene, config.run, bridge=bridge, on_capture=on_capture)
    input_source = _StdinInput() if config.run.mode == "with_input" else None
    report = session.run(input_source)

    try:
        (out / "scene.json").write_text(scene_to_json(session.scene), encoding="utf-8")
        (out / "trajectory.jsonl").write_text(session.trajectory.to_jsonl(), encoding="utf-8")
        (out / "captures.jsonl").write_text("".join(capture_lines), encoding="utf-8")
        (out / "transcript.jsonl").write_text(bridge.transcript.to_jsonl(), encoding="utf-8")
        import json as _json

        (out / "report.json").write_text(
            _json.dumps(report.to_dict(), indent=2) + "\n", encoding="utf-8"
        )
        for name, data in snapshot_files.items():
            (out / name).write_bytes(data)
    except OSError as exc:
        print(f"error: cannot write run outputs: {exc}", file=sys.stderr)
        return EXIT_IO

    print(
        f"run complete: {report.frames_executed} frames, "
        f"{report.instructions_processed} instructions, "
        f"{report.captures_written} captures -> {out}"
    )
    return EXIT_OK if report.status == "ok" else EXIT_FAILURE


class _StdinInput:
    def read(self) -> str | None:
        try:
            line = input("instruction> ")
        except EOFError:
            return None
        return line


def validate_script(path: str) -> int:
    try:
        source = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        print(f"error: cannot read {path}: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        script = parse(source)
    except (LexError, ParseError) as exc:
        print(f"{exc.line}:{exc.column} {type(exc).__name__} {exc.reason}")
        return EXIT_FAILURE
    report = validate(script)
    for line in report.render_lines():
        print(line)
    return EXIT_OK if report.ok else EXIT_FAILURE


def serve(config: AppConfig, port: int | None) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(config)
    try:
        uvicorn.run(app, host="127.0.0.1", port=port or config.service_port, log_level="warning")
    except SystemExit:
        raise
    except OSError as exc:
        print(f"error: cannot bind service port: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rovsim", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run a simulation from a config file")
    run_p.add_argument("--config", required=True)
    run_p.add_argument("--mode", choices=["with_input", "without_input"])
    run_p.add_argument("--provider", choices=["http", "replay"])
    run_p.add_argument("--output")

    val_p = sub.add_parser("validate", help="validate a script file against the catalog")
    val_p.add_argument("script")

    serve_p = sub.add_parser("serve", help="serve the HTTP API over a live session")
    serve_p.add_argument("--config", required=True)
    serve_p.add_argument("--port", type=int)

    return parser


def _load(path: str, args) -> AppConfig:
    config = load_config(path)
    from dataclasses import replace

    if getattr(args, "mode", None):
        config = replace(config, run=replace(config.run, mode=args.mode))
    if getattr(args, "provider", None):
        config = replace(config, provider=replace(config.provider, kind=args.provider))
    if getattr(args, "output", None):
        config = replace(config, output_dir=args.output)
    return config


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "run":
            return run_simulation(_load(args.config, args))
        if args.command == "validate":
            return validate_script(args.script)
        if args.command == "serve":
            return serve(_load(args.config, args), args.port)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
