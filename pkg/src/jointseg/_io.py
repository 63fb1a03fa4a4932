import os
import tempfile
from pathlib import Path


def atomic_write_text(path, text: str) -> None:
    """Write ``text`` as UTF-8 to ``path`` via a temp file + rename.

    Readers never observe a partially written file; on failure the target is
    left untouched and the OSError names the destination.
    """
    path = Path(path)
    directory = path.parent if str(path.parent) else Path(".")
    try:
        fd, tmp = tempfile.mkstemp(dir=directory, prefix=f".{path.name}.", suffix=".tmp")
    except OSError as exc:
        raise OSError(exc.errno, f"cannot write {path}: {exc.strerror}") from exc
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except OSError as exc:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise OSError(exc.errno, f"cannot write {path}: {exc.strerror}") from exc


def read_utf8_lines(path):
    """Yield ``(lineno, text)`` for each line of ``path`` with the newline stripped.

    Decoding is done per line so a bad byte is reported with its line number.
    """
    from .errors import CorpusDecodeError

    with open(path, "rb") as fh:
        for lineno, raw in enumerate(fh, 1):
            try:
                line = raw.decode("utf-8")
            except UnicodeDecodeError as exc:
                raise CorpusDecodeError(path, lineno, exc.reason) from None
            yield lineno, line.rstrip("\r\n")
