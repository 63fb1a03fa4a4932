"""People's Daily (January 1998) segmented corpus, as redistributed in the snownlp sdist.

This is the newswire source of the PKU Bakeoff corpus. The file carries
``word/POS`` tokens; :func:`load_pd1998` strips the POS tags and returns
plain segmentations. The sdist is fetched once with ``pip download`` and the
converted corpus cached under ``cache_dir``.
"""
from __future__ import annotations

import logging
import os
import subprocess
import sys
import tarfile
import tempfile
from pathlib import Path

from .corpus import read_segmented_corpus, write_segmented_corpus

log = logging.getLogger(__name__)

SNOWNLP_VERSION = "0.12.3"
_MEMBER = f"snownlp-{SNOWNLP_VERSION}/snownlp/tag/199801.txt"
CACHE_NAME = "pd1998.utf8"


def default_cache_dir() -> Path:
    base = os.environ.get("XDG_CACHE_HOME") or Path.home() / ".cache"
    return Path(base) / "jointseg"


def strip_pos(line: str) -> list[str]:
    words = []
    for token in line.split():
        word = token.rsplit("/", 1)[0] if "/" in token[1:] else token
        if word:
            words.append(word)
    return words


def _fetch_raw(workdir: Path) -> Path:
    cmd = [sys.executable, "-m", "pip", "download", "--no-deps", "--no-binary", ":all:",
           f"snownlp=={SNOWNLP_VERSION}", "-d", str(workdir)]
    subprocess.run(cmd, check=True, capture_output=True)
    sdist = next(workdir.glob("snownlp-*.tar.gz"))
    with tarfile.open(sdist) as tar:
        member = tar.getmember(_MEMBER)
        member.name = "199801.txt"
        tar.extract(member, workdir)
    return workdir / "199801.txt"


def load_pd1998(cache_dir=None) -> list[list[str]]:
    """All sentences of the corpus, in file order. Raises ``OSError`` when unavailable."""
    cache_dir = Path(cache_dir) if cache_dir is not None else default_cache_dir()
    cached = cache_dir / CACHE_NAME
    if not cached.is_file():
        cache_dir.mkdir(parents=True, exist_ok=True)
        with tempfile.TemporaryDirectory() as tmp:
            try:
                raw = _fetch_raw(Path(tmp))
            except (subprocess.CalledProcessError, StopIteration, KeyError) as exc:
                raise OSError(f"cannot fetch snownlp {SNOWNLP_VERSION} sdist: {exc}") from exc
            with open(raw, encoding="utf-8") as fh:
                segs = [w for w in map(strip_pos, fh) if w]
        write_segmented_corpus(segs, cached)
        log.info("cached %d sentences at %s", len(segs), cached)
    return read_segmented_corpus(cached)
