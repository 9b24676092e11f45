"""Tournaments, tournament matrices, validation and the TRN text format."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

MATRIX_TOL = 1e-12


class TournamentError(ValueError):
    """Raised for an adjacency matrix that is not a tournament."""

    def __init__(self, violations, message=None):
        self.violations = list(violations)
        if message is None:
            shown = ", ".join(f"({i + 1},{j + 1})" for i, j in self.violations[:8])
            more = "" if len(self.violations) <= 8 else f" and {len(self.violations) - 8} more"
            message = f"not a tournament; violations at {shown}{more}"
        super().__init__(message)


class TRNFormatError(ValueError):
    """Malformed TRN input.  ``line`` and ``column`` are 1-based."""

    def __init__(self, message, line, column=None):
        self.line = line
        self.column = column
        where = f"line {line}" if column is None else f"line {line}, column {column}"
        super().__init__(f"{where}: {message}")


@dataclass(frozen=True, eq=False)
class Tournament:
    """An ``n``-vertex tournament; ``adj[i, j]`` is 1 iff there is an arc i -> j.

    The array is stored read-only as ``uint8``.  Construction does not
    validate; call :func:`validate` or :meth:`checked` for that.
    """

    adj: np.ndarray = field(repr=False)

    def __post_init__(self):
        a = np.array(self.adj, dtype=np.uint8, copy=True)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"adjacency must be square, got shape {a.shape}")
        if a.shape[0] < 1:
            raise ValueError("a tournament needs at least one vertex")
        a.setflags(write=False)
        object.__setattr__(self, "adj", a)

    @property
    def n(self) -> int:
        return self.adj.shape[0]

    def checked(self) -> "Tournament":
        bad = validate(self)
        if bad:
            raise TournamentError(bad)
        return self

    def reversed(self) -> "Tournament":
        return Tournament(self.adj.T)

    def __eq__(self, other):
        if not isinstance(other, Tournament):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self.adj, other.adj))

    def __hash__(self):
        return hash((self.n, self.adj.tobytes()))

    def __repr__(self):
        return f"Tournament(n={self.n})"


def validate(t: Tournament) -> list[tuple[int, int]]:
    """Return every 0-based pair ``(i, j)``, ``i <= j``, breaking the tournament rules.

    A loop shows up as ``(i, i)``; a pair with both or neither orientation
    shows up once as ``(i, j)`` with ``i < j``.  An empty list means valid.
    """
    a = np.asarray(t.adj)
    bad = [(int(i), int(i)) for i in np.flatnonzero(np.diagonal(a) != 0)]
    s = a.astype(np.int16) + a.T.astype(np.int16)
    iu, ju = np.triu_indices(a.shape[0], k=1)
    wrong = (s[iu, ju] != 1) | (a[iu, ju] > 1) | (a[ju, iu] > 1)
    bad.extend((int(i), int(j)) for i, j in zip(iu[wrong], ju[wrong]))
    return sorted(bad)


def from_upper_bits(n: int, bits) -> Tournament:
    """Build a tournament from upper-triangle orientations in row-major pair order.

    ``bits[p] == 1`` orients the ``p``-th pair ``(i, j)``, ``i < j``, as i -> j.
    """
    bits = np.asarray(bits, dtype=np.uint8)
    iu, ju = np.triu_indices(n, k=1)
    if bits.shape != iu.shape:
        raise ValueError(f"expected {iu.size} bits for n={n}, got {bits.size}")
    adj = np.zeros((n, n), dtype=np.uint8)
    adj[iu, ju] = bits
    adj[ju, iu] = 1 - bits
    return Tournament(adj)


def from_arcs(n: int, arcs) -> Tournament:
    """Tournament from a list of 0-based arcs; every pair must appear exactly once."""
    adj = np.zeros((n, n), dtype=np.uint8)
    for i, j in arcs:
        adj[i, j] = 1
    return Tournament(adj).checked()


@dataclass(frozen=True, eq=False)
class TournamentMatrix:
    """Real matrix ``A`` with entries in [0, 1] and ``A + A^T = J``."""

    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        a = np.array(self.entries, dtype=float, copy=True)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise ValueError(f"tournament matrix must be square and non-empty, got shape {a.shape}")
        if np.any(a < -MATRIX_TOL) or np.any(a > 1 + MATRIX_TOL):
            raise ValueError("tournament matrix entries must lie in [0, 1]")
        dev = np.abs(a + a.T - 1.0)
        if dev.max() > MATRIX_TOL:
            i, j = np.unravel_index(int(np.argmax(dev)), dev.shape)
            raise ValueError(
                f"A + A^T != J at ({i + 1},{j + 1}): deviation {dev[i, j]:.3g}"
            )
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def __repr__(self):
        return f"TournamentMatrix(n={self.n})"


def to_matrix(t: Tournament) -> TournamentMatrix:
    """Adjacency matrix with 1/2 on the diagonal."""
    t.checked()
    return TournamentMatrix(t.adj.astype(float) + 0.5 * np.eye(t.n))


def write_trn(t: Tournament) -> bytes:
    t.checked()
    rows = ("".join("1" if x else "0" for x in row) for row in t.adj)
    return ("TRN 1 %d\n" % t.n + "\n".join(rows) + "\n").encode("ascii")


def read_trn(data: bytes | str) -> Tournament:
    if isinstance(data, bytes):
        try:
            text = data.decode("ascii")
        except UnicodeDecodeError as exc:
            raise TRNFormatError("non-ASCII input", 1) from exc
    else:
        text = data
    if not text.endswith("\n"):
        raise TRNFormatError("missing trailing newline", text.count("\n") + 1)
    lines = text[:-1].split("\n")
    head = lines[0].split(" ")
    if len(head) != 3 or head[0] != "TRN":
        raise TRNFormatError("header must be 'TRN 1 <n>'", 1)
    if head[1] != "1":
        raise TRNFormatError(f"unsupported version {head[1]!r}", 1, 5)
    if not head[2].isdigit() or int(head[2]) < 1:
        raise TRNFormatError(f"bad order {head[2]!r}", 1, 7)
    n = int(head[2])
    if len(lines) - 1 != n:
        raise TRNFormatError(f"expected {n} rows, found {len(lines) - 1}", min(len(lines), n + 1) + 1)
    adj = np.zeros((n, n), dtype=np.uint8)
    for r, line in enumerate(lines[1:]):
        if len(line) != n:
            raise TRNFormatError(f"row has {len(line)} characters, expected {n}", r + 2)
        for c, ch in enumerate(line):
            if ch == "1":
                adj[r, c] = 1
            elif ch != "0":
                raise TRNFormatError(f"unexpected character {ch!r}", r + 2, c + 1)
    t = Tournament(adj)
    bad = validate(t)
    if bad:
        i, j = bad[0]
        what = "loop" if i == j else "pair not oriented exactly once"
        raise TRNFormatError(f"{what} at ({i + 1},{j + 1})", i + 2, j + 1)
    return t


def load_trn(path) -> Tournament:
    with open(path, "rb") as fh:
        return read_trn(fh.read())


def save_trn(t: Tournament, path) -> None:
    with open(path, "wb") as fh:
        fh.write(write_trn(t))
