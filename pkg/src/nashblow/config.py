"""Runtime settings shared by the CLI and scripts."""

from __future__ import annotations

import os
from dataclasses import dataclass

THREADS_ENV = "NASHBLOW_THREADS"


@dataclass(frozen=True)
class RunConfig:
    threads: int = 1
    output_format: str = "text"
    timing: bool = False

    def __post_init__(self):
        if self.threads < 1:
            raise ValueError(f"threads must be >= 1, got {self.threads}")
        if self.output_format not in ("json", "text"):
            raise ValueError(f"unknown output format {self.output_format!r}")

    @staticmethod
    def threads_from_env(environ=None) -> int:
        raw = (os.environ if environ is None else environ).get(THREADS_ENV)
        if raw is None:
            return 1
        try:
            n = int(raw)
        except ValueError:
            n = 0
        if n < 1:
            raise ValueError(f"{THREADS_ENV} must be an integer >= 1, got {raw!r}")
        return n

    @classmethod
    def from_args(cls, args, environ=None) -> "RunConfig":
        return cls(cls.threads_from_env(environ), args.format, args.timing)
