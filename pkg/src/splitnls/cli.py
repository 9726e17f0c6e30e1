"""Command-line client for the experiment service.

The CLI is a thin HTTP client: it reads config text, posts it to the
service, and writes the returned CSV/SVG files locally.  By default it
talks to an in-process instance of the app (no sockets, no daemon); pass
``--server URL`` to target a running server instead, or use ``splitnls
serve`` to start one.

Exit codes: 0 success, 1 I/O or server failure, 2 config error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .runner import COMMANDS, KEY_HELP

__all__ = ["main", "build_parser"]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="splitnls",
        description="Splitting-integrator experiments for (stochastic) "
                    "nonlinear Schrodinger equations.",
        epilog="Config keys: " + "; ".join(
            f"{k}: {v}" for k, v in sorted(KEY_HELP.items())),
    )
    parser.add_argument("--server", default=None,
                        help="base URL of a running service "
                             "(default: run in-process)")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "run": "integrate the configured levels once and report errors",
        "converge": "step-size sweep with convergence-order fit (>= 3 levels)",
        "defect": "one-step symplectic-defect scaling study",
        "soliton": "benchmark against the exact traveling soliton",
    }
    for name in COMMANDS:
        p = sub.add_parser(name, help=helps[name])
        p.add_argument("--config", type=Path, default=None,
                       help="path to key = value config text")
        p.add_argument("--seed", type=int, default=None,
                       help="override the config seed")
        p.add_argument("--out", type=Path, default=Path("out"),
                       help="output directory (default: ./out)")
        p.add_argument("--quiet", action="store_true",
                       help="suppress the summary printout")
        p.add_argument("--no-svg", action="store_true",
                       help="skip SVG plot emission")
    serve = sub.add_parser("serve", help="start the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    return parser


def _make_client(server: str | None):
    if server:
        import httpx

        return httpx.Client(base_url=server, timeout=None)
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DeprecationWarning)
        from fastapi.testclient import TestClient
    from .service import app

    return TestClient(app)


def _run_command(args) -> int:
    try:
        config_text = args.config.read_text() if args.config else ""
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return 1
    payload = {
        "command": args.command,
        "config_text": config_text,
        "seed": args.seed,
        "include_svg": not args.no_svg,
    }
    try:
        with _make_client(args.server) as client:
            resp = client.post("/v1/runs", json=payload)
    except Exception as exc:  # connection errors etc.
        print(f"error: request failed: {exc}", file=sys.stderr)
        return 1
    if resp.status_code == 422:
        detail = resp.json().get("detail", {})
        msg = detail.get("message", detail) if isinstance(detail, dict) else detail
        print(f"config error: {msg}", file=sys.stderr)
        return 2
    if resp.status_code != 200:
        print(f"error: service returned {resp.status_code}: {resp.text}",
              file=sys.stderr)
        return 1
    body = resp.json()
    try:
        args.out.mkdir(parents=True, exist_ok=True)
        csv_path = args.out / f"{body['command']}_runs.csv"
        csv_path.write_text(body["csv_text"])
        written = [csv_path]
        for name, text in sorted(body["svgs"].items()):
            svg_path = args.out / f"{name}.svg"
            svg_path.write_text(text)
            written.append(svg_path)
    except OSError as exc:
        print(f"error: cannot write outputs: {exc}", file=sys.stderr)
        return 1
    for warning in body["warnings"]:
        print(f"warning: {warning}", file=sys.stderr)
    if not args.quiet:
        print(json.dumps(body["summary"], indent=2))
        for path in written:
            print(f"wrote {path}")
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "serve":
        import uvicorn

        from .service import app

        uvicorn.run(app, host=args.host, port=args.port)
        return 0
    return _run_command(args)


if __name__ == "__main__":
    sys.exit(main())
