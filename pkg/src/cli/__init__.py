# CLI Package
from src.cli.fregress_cli import FregressCLI, build_parser, resolve_config, run

__all__ = ["FregressCLI", "build_parser", "resolve_config", "run"]
