"""Entry point: load the config, bring up every role, serve."""

from __future__ import annotations

import argparse

import uvicorn

from .config import load_shim_config
from .server import create_app


def main() -> None:
    parser = argparse.ArgumentParser(description="Serve the styleforge backend protocol.")
    parser.add_argument("--config", required=True, help="Path to the shim config JSON.")
    parser.add_argument("--host", default="127.0.0.1")
    args = parser.parse_args()
    config = load_shim_config(args.config)
    uvicorn.run(create_app(config), host=args.host, port=config.port)


if __name__ == "__main__":
    main()
