"""
Shared exceptions, progress logging and .env loading for the split-deletion tools.
"""

import os
import sys
from datetime import datetime, timezone
from pathlib import Path


class SplitDeletionError(Exception):
    """Base exception for split-deletion errors."""
    pass


class NotSplit(SplitDeletionError):
    """The input graph admits no clique/independent-set partition."""
    pass


class EmptyIndependentSide(SplitDeletionError):
    """An operation needed a nonempty independent side."""
    pass


class InternalInvariantViolation(SplitDeletionError):
    """A guarantee the algorithm relies on did not hold."""
    pass


class MalformedTrace(SplitDeletionError):
    """A recursion trace line could not be parsed or is inconsistent."""
    pass


class TooLarge(SplitDeletionError):
    """Input exceeds the brute-force size guard."""
    pass


class InvalidInstance(SplitDeletionError):
    """A hitting-set instance violates its shape constraints."""
    pass


class ParseError(SplitDeletionError):
    """Edge list could not be parsed."""

    def __init__(self, line_number: int, reason: str):
        self.line_number = line_number
        self.reason = reason
        super().__init__(f"line {line_number}: {reason}")


class DuplicateEdge(ParseError):
    """The same edge appears twice in an edge list."""
    pass


class IndexOutOfRange(ParseError):
    """An edge endpoint is outside 0..n-1."""
    pass


def print_progress(message: str, verbose: bool = True) -> None:
    """Print progress message to stderr."""
    if verbose:
        timestamp = datetime.now(timezone.utc).strftime("%Y-%m-%d %H:%M:%S UTC")
        print(f"[{timestamp}] {message}", file=sys.stderr, flush=True)


def load_env_file(env_file: str = ".env") -> None:
    """
    Load environment variables from a .env file.

    Existing environment variables win over file values.

    Args:
        env_file: Path to .env file (default: .env in current directory)
    """
    env_path = Path(env_file)
    if not env_path.exists():
        return

    try:
        with open(env_path, "r") as f:
            for line in f:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" in line:
                    key, value = line.split("=", 1)
                    key = key.strip()
                    value = value.strip().strip("'\"")
                    if key and key not in os.environ:
                        os.environ[key] = value
    except OSError as e:
        print(f"Warning: Could not load .env file: {e}", file=sys.stderr)
