"""On-disk cache of class assignments and degree histograms per (pattern, p).

File layout (text)::

    unitri-oracle-cache v1
    pattern <n>:<i>-<j>,...
    p <p>
    classes <N>
    <N class indices, 16 per line, width 8>
    histogram <m>
    <degree> <multiplicity>      (m lines)
"""

from __future__ import annotations

import hashlib
import os
from pathlib import Path

import numpy as np

from ..pattern import ClosedPattern
from .dixon import DegreeHistogram

HEADER = "unitri-oracle-cache v1"
ENV_VAR = "UNITRI_CACHE_DIR"
_PER_LINE = 16
_WIDTH = 8


def default_cache_dir() -> Path | None:
    val = os.environ.get(ENV_VAR)
    return Path(val) if val else None


def cache_path(cache_dir: Path, pattern: ClosedPattern, p: int) -> Path:
    digest = hashlib.sha256(f"{pattern.digest_key()}|{p}".encode()).hexdigest()[:20]
    return Path(cache_dir) / f"{digest}_p{p}.txt"


def save(cache_dir: Path, pattern: ClosedPattern, p: int, class_of: np.ndarray, hist: DegreeHistogram) -> Path:
    path = cache_path(cache_dir, pattern, p)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [HEADER, f"pattern {pattern.digest_key()}", f"p {p}", f"classes {class_of.size}"]
    vals = [f"{int(v):{_WIDTH}d}" for v in class_of]
    for s in range(0, len(vals), _PER_LINE):
        lines.append("".join(vals[s:s + _PER_LINE]))
    lines.append(f"histogram {len(hist.counts)}")
    lines += [f"{d} {m}" for d, m in hist.counts.items()]
    tmp = path.with_suffix(".tmp")
    tmp.write_text("\n".join(lines) + "\n")
    tmp.replace(path)
    return path


def load(cache_dir: Path, pattern: ClosedPattern, p: int) -> tuple[np.ndarray, DegreeHistogram] | None:
    """Cached ``(class_of, histogram)``, or None when absent or stale."""
    path = cache_path(cache_dir, pattern, p)
    try:
        lines = path.read_text().splitlines()
    except OSError:
        return None
    try:
        if lines[0] != HEADER or lines[1] != f"pattern {pattern.digest_key()}" or lines[2] != f"p {p}":
            return None
        n = int(lines[3].split()[1])
        nrows = -(-n // _PER_LINE)
        body = " ".join(lines[4:4 + nrows]).split()
        class_of = np.array([int(x) for x in body], dtype=np.int64)
        if class_of.size != n:
            return None
        m = int(lines[4 + nrows].split()[1])
        counts = {}
        for line in lines[5 + nrows:5 + nrows + m]:
            d, mult = line.split()
            counts[int(d)] = int(mult)
        if len(counts) != m:
            return None
    except (IndexError, ValueError):
        return None
    return class_of, DegreeHistogram(counts)
