"""Plain-text matrix files.

Format: optional ``#`` comment lines, then a ``rows cols`` header, then
``rows`` lines of whitespace-separated values.  Values are written with 17
significant digits, so a write/read round trip is exact.
"""
import numpy as np

from .errors import InvalidInput


def format_matrix(M, comment=None):
    M = np.asarray(M, dtype=float)
    if M.ndim != 2:
        raise InvalidInput(f"expected a 2-D matrix, got shape {M.shape}")
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in str(comment).splitlines())
    lines.append(f"{M.shape[0]} {M.shape[1]}")
    for row in M:
        lines.append(" ".join(f"{v:.17g}" for v in row))
    return "\n".join(lines) + "\n"


def parse_matrix(text, source="<string>"):
    rows = [ln.strip() for ln in text.splitlines()]
    rows = [ln for ln in rows if ln and not ln.startswith("#")]
    if not rows:
        raise InvalidInput(f"{source}: no matrix header")
    head = rows[0].split()
    try:
        r, c = (int(v) for v in head)
    except ValueError:
        raise InvalidInput(f"{source}: bad header {rows[0]!r}") from None
    if r < 1 or c < 1:
        raise InvalidInput(f"{source}: dimensions must be positive")
    data = rows[1:]
    if len(data) != r:
        raise InvalidInput(f"{source}: expected {r} data rows, found {len(data)}")
    out = np.empty((r, c))
    for i, ln in enumerate(data):
        fields = ln.split()
        if len(fields) != c:
            raise InvalidInput(f"{source}: row {i + 1} has {len(fields)} values, expected {c}")
        try:
            out[i] = [float(v) for v in fields]
        except ValueError:
            raise InvalidInput(f"{source}: non-numeric value in row {i + 1}") from None
    if not np.all(np.isfinite(out)):
        raise InvalidInput(f"{source}: non-finite values")
    return out


def write_matrix(path, M, comment=None):
    with open(path, "w") as fh:
        fh.write(format_matrix(M, comment))


def read_matrix(path):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc.strerror}") from None
    return parse_matrix(text, source=str(path))
