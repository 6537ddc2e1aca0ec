"""Shared access protocol for the recognized-plates text file.

The recognizer appends one plate per line; the ingestion poller consumes
complete lines and later discards exactly the bytes it read. Both sides
hold an advisory flock on the file during their critical sections, so
lines are never torn and appends that land mid-poll survive truncation.
"""

from __future__ import annotations

import fcntl
import os
from pathlib import Path


def append_line(path: str | os.PathLike, text: str) -> None:
    """Append one whole line under the advisory lock."""
    with open(path, "a", encoding="utf-8") as fh:
        fcntl.flock(fh, fcntl.LOCK_EX)
        try:
            fh.write(text + "\n")
            fh.flush()
            os.fsync(fh.fileno())
        finally:
            fcntl.flock(fh, fcntl.LOCK_UN)


def read_batch(path: str | os.PathLike) -> tuple[list[str], int]:
    """Snapshot all complete lines and the byte length they occupy.

    A trailing fragment without a newline is someone's in-flight append
    and is left for the next poll. Missing file reads as empty.
    """
    p = Path(path)
    if not p.exists():
        return [], 0
    with open(p, "rb") as fh:
        fcntl.flock(fh, fcntl.LOCK_SH)
        try:
            data = fh.read()
        finally:
            fcntl.flock(fh, fcntl.LOCK_UN)
    end = data.rfind(b"\n") + 1
    lines = data[:end].decode("utf-8").splitlines()
    return lines, end


def discard_prefix(path: str | os.PathLike, nbytes: int) -> None:
    """Drop the first nbytes of the file, keeping concurrent appends.

    Runs under the exclusive lock: the suffix written after the consumed
    batch is shifted to the front of the file.
    """
    if nbytes <= 0:
        return
    with open(path, "r+b") as fh:
        fcntl.flock(fh, fcntl.LOCK_EX)
        try:
            data = fh.read()
            remainder = data[nbytes:]
            fh.seek(0)
            fh.write(remainder)
            fh.truncate(len(remainder))
            fh.flush()
            os.fsync(fh.fileno())
        finally:
            fcntl.flock(fh, fcntl.LOCK_UN)
