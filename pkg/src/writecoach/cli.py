"""Command-line entry points: run the HTTP service, or print an offline demo."""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from .config import AppConfig


def _serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .api import create_app

    config = AppConfig.from_env()
    if args.host:
        config = replace(config, host=args.host)
    if args.port:
        config = replace(config, port=args.port)
    if args.db:
        config = replace(config, db_path=args.db)
    uvicorn.run(create_app(config), host=config.host, port=config.port)
    return 0


def _demo(args: argparse.Namespace) -> int:
    from .demo import run_demo

    run_demo(assignment=args.assignment, printer=print)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="writecoach",
        description="Stage-by-stage academic writing coach service.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    serve_p = sub.add_parser("serve", help="run the HTTP service")
    serve_p.add_argument("--host", help="bind address (default from WRITECOACH_HOST)")
    serve_p.add_argument("--port", type=int, help="port (default from WRITECOACH_PORT)")
    serve_p.add_argument("--db", help="SQLite path, or :memory: (default from WRITECOACH_DB)")
    serve_p.set_defaults(func=_serve)

    demo_p = sub.add_parser(
        "demo", help="walk a full session offline with the scripted provider"
    )
    demo_p.add_argument(
        "--assignment",
        default="Argue for or against banning homework in middle school.",
        help="assignment prompt for the demo session",
    )
    demo_p.set_defaults(func=_demo)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
