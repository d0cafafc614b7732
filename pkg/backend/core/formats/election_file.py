"""The ``.appr`` election format.

    # comment
    m k
    0 1 2        <- voter 0
                 <- voter 1 approves nothing
    3 5

Line one (after any comment-only lines) is ``m k``. Every further line is
one voter: strictly increasing 0-based candidate indices separated by
spaces. ``#`` starts a comment; lines holding only a comment are skipped,
empty lines are empty ballots.
"""
import re
from pathlib import Path
from typing import List, Optional, Tuple, Union

from election.models import Election
from utils.errors import ElectionFileError, InputError

_TOKEN = re.compile(r"\S+")
_DIGITS = re.compile(r"[0-9]+")


def _tokens(line: str) -> List[Tuple[str, int]]:
    """Tokens before any ``#`` with their 1-based columns."""
    content = line.split("#", 1)[0]
    return [(m.group(), m.start() + 1) for m in _TOKEN.finditer(content)]


def _index(token: str, line_no: int, column: int, source: str) -> int:
    if not _DIGITS.fullmatch(token):
        raise ElectionFileError(f"expected a nonnegative integer, got '{token}'", line_no, column, source)
    return int(token)


def parse_election(text: str, source: str = "<string>") -> Election:
    """Parse ``.appr`` text; every failure names its line and column."""
    header: Optional[Tuple[int, int]] = None
    ballots: List[frozenset] = []

    for line_no, raw in enumerate(text.splitlines(), start=1):
        tokens = _tokens(raw)
        comment_only = not tokens and "#" in raw

        if header is None:
            if not tokens:
                continue
            if len(tokens) != 2:
                raise ElectionFileError("header must be 'm k'", line_no, tokens[0][1], source)
            m = _index(tokens[0][0], line_no, tokens[0][1], source)
            k = _index(tokens[1][0], line_no, tokens[1][1], source)
            if m < 1:
                raise ElectionFileError("need at least one candidate", line_no, tokens[0][1], source)
            if not 1 <= k <= m:
                raise ElectionFileError(f"committee size {k} outside [1, {m}]", line_no, tokens[1][1], source)
            header = (m, k)
            continue

        if comment_only:
            continue
        m = header[0]
        previous = -1
        ballot = []
        for token, column in tokens:
            c = _index(token, line_no, column, source)
            if c >= m:
                raise ElectionFileError(f"candidate {c} out of range [0, {m})", line_no, column, source)
            if c == previous:
                raise ElectionFileError(f"duplicate candidate {c}", line_no, column, source)
            if c < previous:
                raise ElectionFileError(f"candidate {c} after {previous}: indices must increase", line_no, column, source)
            ballot.append(c)
            previous = c
        ballots.append(frozenset(ballot))

    if header is None:
        raise ElectionFileError("missing 'm k' header", 1, 1, source)
    if not ballots:
        raise ElectionFileError("no voter lines after the header", len(text.splitlines()) or 1, 1, source)
    try:
        return Election.from_ballots(ballots, header[0], header[1])
    except InputError as e:
        raise ElectionFileError(str(e), 1, 1, source) from e


def serialize_election(election: Election) -> str:
    """Canonical text: sorted indices, LF endings, no comments."""
    lines = [f"{election.num_candidates} {election.committee_size}"]
    lines += [" ".join(str(c) for c in sorted(a)) for a in election.approvals]
    return "\n".join(lines) + "\n"


def read_ascii(path: Union[str, Path]) -> str:
    """File contents as text; a non-ASCII byte is a parse error at its location."""
    path = Path(path)
    data = path.read_bytes()
    try:
        return data.decode("ascii")
    except UnicodeDecodeError as e:
        line = data.count(b"\n", 0, e.start) + 1
        column = e.start - (data.rfind(b"\n", 0, e.start) + 1) + 1
        raise ElectionFileError(f"non-ASCII byte 0x{data[e.start]:02x}", line, column, str(path)) from e


def read_election(path: Union[str, Path]) -> Election:
    return parse_election(read_ascii(path), source=str(path))


def write_election(election: Election, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(serialize_election(election), encoding="ascii", newline="\n")
    return path
