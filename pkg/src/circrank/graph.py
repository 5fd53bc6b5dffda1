"""Vote graphs: capacitated digraphs of pairwise preference counts."""

from __future__ import annotations

import csv
import io
import os
import re
from fractions import Fraction
from math import lcm
from typing import Hashable, Iterable, Mapping

__all__ = [
    "VoteGraph",
    "InputError",
    "SizeLimitExceeded",
    "parse_rational",
    "format_rational",
    "from_pairwise",
    "from_ranked_ballots",
    "is_acyclic",
    "is_eulerian",
    "read_pairwise_csv",
    "write_pairwise_csv",
    "read_ballots",
    "label_key",
]


class InputError(ValueError):
    """Malformed vote data (self-loop, bad count, duplicate ballot entry)."""


_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*/\s*(\d+)\s*$")


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"``, an integer or a decimal literal into an exact Fraction.

    Floats are refused: their binary expansion is never what the user meant.
    """
    if isinstance(text, Fraction):
        return text
    if isinstance(text, bool):
        raise InputError(f"not a rational count: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, float):
        raise InputError(f"float counts are not accepted, use 'p/q' or a decimal string: {text!r}")
    s = str(text).strip()
    m = _RATIONAL_RE.match(s)
    try:
        if m:
            if int(m.group(2)) == 0:
                raise InputError(f"zero denominator in {text!r}")
            return Fraction(int(m.group(1)), int(m.group(2)))
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"not a rational count: {text!r}") from exc


def format_rational(value: Fraction) -> str:
    """Serialize as ``"p/q"``; integers keep the ``/1`` so the format is uniform."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def label_key(label):
    """Natural sort key: integer-like labels numerically, then strings."""
    if isinstance(label, int) and not isinstance(label, bool):
        return (0, label, "")
    s = str(label)
    if s.lstrip("-").isdigit():
        return (0, int(s), s)
    return (1, 0, s)


class VoteGraph:
    """Immutable capacitated vote graph.

    Alternatives are opaque hashable labels mapped to dense indices in
    insertion order. ``caps`` maps index pairs ``(i, j)`` to the exact
    positive vote weight ``q_ij``; zero-weight pairs are never stored.
    """

    __slots__ = ("_labels", "_index", "_caps", "_arcs")

    def __init__(self, labels: Iterable[Hashable] = (), caps: Mapping[tuple[int, int], Fraction] | None = None):
        labels = list(labels)
        index = {}
        for lab in labels:
            if lab in index:
                raise InputError(f"duplicate alternative label {lab!r}")
            index[lab] = len(index)
        n = len(labels)
        clean = {}
        for (i, j), q in (caps or {}).items():
            if not (0 <= i < n and 0 <= j < n):
                raise InputError(f"arc ({i}, {j}) references an unknown node")
            if i == j:
                raise InputError(f"self-loop on {labels[i]!r}")
            q = Fraction(q)
            if q < 0:
                raise InputError(f"negative capacity on ({labels[i]!r}, {labels[j]!r})")
            if q > 0:
                clean[(i, j)] = q
        self._labels = tuple(labels)
        self._index = index
        self._caps = clean
        self._arcs = tuple(sorted(clean))

    @property
    def labels(self) -> tuple:
        return self._labels

    @property
    def n(self) -> int:
        return len(self._labels)

    @property
    def m(self) -> int:
        return len(self._arcs)

    @property
    def arcs(self) -> tuple[tuple[int, int], ...]:
        """Arcs as index pairs, sorted."""
        return self._arcs

    @property
    def caps(self) -> dict[tuple[int, int], Fraction]:
        return dict(self._caps)

    def cap(self, i: int, j: int) -> Fraction:
        return self._caps.get((i, j), Fraction(0))

    def index(self, label) -> int:
        return self._index[label]

    def label(self, i: int):
        return self._labels[i]

    def labelled(self, arcs: Iterable[tuple[int, int]]) -> list[tuple]:
        """Translate index pairs into label pairs, naturally sorted."""
        out = [(self._labels[i], self._labels[j]) for i, j in arcs]
        out.sort(key=lambda p: (label_key(p[0]), label_key(p[1])))
        return out

    def lcd(self) -> int:
        """Least common denominator of all capacities (1 for an empty graph)."""
        d = 1
        for q in self._caps.values():
            d = lcm(d, q.denominator)
        return d

    def is_integral(self) -> bool:
        return all(q.denominator == 1 for q in self._caps.values())

    def total_weight(self) -> Fraction:
        return sum(self._caps.values(), Fraction(0))

    def with_caps(self, caps: Mapping[tuple[int, int], Fraction]) -> "VoteGraph":
        """Same node set, new capacities (zero entries dropped)."""
        return VoteGraph(self._labels, caps)

    def records(self) -> list[tuple]:
        """``(from, to, count)`` label records in arc order."""
        return [(self._labels[i], self._labels[j], self._caps[(i, j)]) for i, j in self._arcs]

    def __eq__(self, other):
        if not isinstance(other, VoteGraph):
            return NotImplemented
        return self._labels == other._labels and self._caps == other._caps

    def __hash__(self):
        return hash((self._labels, tuple(sorted(self._caps.items()))))

    def __repr__(self):
        return f"VoteGraph(n={self.n}, m={self.m})"


def from_pairwise(records: Iterable[tuple]) -> VoteGraph:
    """Build a vote graph from ``(i, j, count)`` records; repeated pairs add up."""
    labels: dict = {}
    caps: dict[tuple[int, int], Fraction] = {}
    for rec in records:
        if len(rec) != 3:
            raise InputError(f"expected (from, to, count), got {rec!r}")
        a, b, count = rec
        q = parse_rational(count)
        if a == b:
            raise InputError(f"self-loop record on {a!r}")
        if q <= 0:
            raise InputError(f"non-positive count {count!r} on ({a!r}, {b!r})")
        i = labels.setdefault(a, len(labels))
        j = labels.setdefault(b, len(labels))
        caps[(i, j)] = caps.get((i, j), Fraction(0)) + q
    return VoteGraph(labels, caps)


def from_ranked_ballots(ballots: Iterable[tuple]) -> VoteGraph:
    """Expand ``(count, ranking)`` ballots into pairwise votes.

    Every alternative ranked above another on a ballot contributes ``count``
    votes to that ordered pair. Alternatives absent from a ballot are not
    compared by it.
    """
    labels: dict = {}
    caps: dict[tuple[int, int], Fraction] = {}
    for count, ranking in ballots:
        q = parse_rational(count)
        if q <= 0:
            raise InputError(f"non-positive ballot count {count!r}")
        ranking = list(ranking)
        if len(set(ranking)) != len(ranking):
            raise InputError(f"duplicate alternative in ballot {ranking!r}")
        idx = [labels.setdefault(a, len(labels)) for a in ranking]
        for pos, i in enumerate(idx):
            for j in idx[pos + 1:]:
                caps[(i, j)] = caps.get((i, j), Fraction(0)) + q
    return VoteGraph(labels, caps)


def _arc_list(g) -> tuple[list, list[tuple]]:
    if isinstance(g, VoteGraph):
        return list(range(g.n)), list(g.arcs)
    arcs = list(g)
    nodes = []
    seen = set()
    for a, b in arcs:
        for v in (a, b):
            if v not in seen:
                seen.add(v)
                nodes.append(v)
    return nodes, arcs


def is_acyclic(g) -> bool:
    """True iff ``g`` (a VoteGraph or an iterable of arcs) has no directed cycle."""
    nodes, arcs = _arc_list(g)
    succ: dict = {v: [] for v in nodes}
    indeg: dict = {v: 0 for v in nodes}
    for a, b in arcs:
        if a == b:
            return False
        succ[a].append(b)
        indeg[b] += 1
    # Kahn's algorithm
    stack = [v for v in nodes if indeg[v] == 0]
    seen = 0
    while stack:
        v = stack.pop()
        seen += 1
        for w in succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                stack.append(w)
    return seen == len(nodes)


def is_eulerian(g: VoteGraph) -> bool:
    """Weighted out-degree equals weighted in-degree at every node."""
    balance = [Fraction(0)] * g.n
    for (i, j), q in g.caps.items():
        balance[i] += q
        balance[j] -= q
    return all(b == 0 for b in balance)


# ---------------------------------------------------------------- file formats


def _is_path(source) -> bool:
    """Paths are PathLike objects or one-line strings; multi-line or empty strings are content."""
    if isinstance(source, os.PathLike):
        return True
    return isinstance(source, str) and bool(source) and "\n" not in source


def read_pairwise_csv(source) -> VoteGraph:
    """Read the ``from,to,count`` CSV format from a path or a text stream."""
    if _is_path(source):
        with open(source, newline="") as fh:
            return read_pairwise_csv(fh)
    if isinstance(source, str):
        source = io.StringIO(source)
    lines = [ln for ln in source if ln.strip() and not ln.lstrip().startswith("#")]
    reader = csv.reader(lines)
    try:
        header = [h.strip() for h in next(reader)]
    except StopIteration:
        return VoteGraph()
    if header != ["from", "to", "count"]:
        raise InputError(f"expected header 'from,to,count', got {','.join(header)!r}")
    records = []
    for lineno, row in enumerate(reader, start=2):
        if len(row) != 3:
            raise InputError(f"line {lineno}: expected 3 fields, got {len(row)}")
        records.append((row[0].strip(), row[1].strip(), row[2].strip()))
    return from_pairwise(records)


def write_pairwise_csv(g: VoteGraph, stream=None, comments: Iterable[str] = ()) -> str:
    """Serialize ``g`` as pairwise CSV; returns the text and writes it if a stream is given."""
    buf = io.StringIO()
    for c in comments:
        buf.write(f"# {c}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["from", "to", "count"])
    for a, b, q in g.records():
        w.writerow([a, b, _csv_count(q)])
    text = buf.getvalue()
    if stream is not None:
        stream.write(text)
    return text


def _csv_count(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def read_ballots(source) -> VoteGraph:
    """Read ballot lines ``COUNT: A > B > C``; ``#`` starts a comment."""
    if _is_path(source):
        with open(source) as fh:
            return read_ballots(fh)
    if isinstance(source, str):
        source = io.StringIO(source)
    ballots = []
    for lineno, raw in enumerate(source, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise InputError(f"line {lineno}: expected 'COUNT: A > B', got {raw.strip()!r}")
        count, ranking = line.split(":", 1)
        names = [a.strip() for a in ranking.split(">")]
        if any(not a for a in names):
            raise InputError(f"line {lineno}: empty alternative name")
        if any("=" in a for a in names):
            raise InputError(f"line {lineno}: ties are not supported")
        try:
            ballots.append((parse_rational(count.strip()), names))
        except InputError as exc:
            raise InputError(f"line {lineno}: {exc}") from None
    try:
        return from_ranked_ballots(ballots)
    except InputError as exc:
        raise InputError(str(exc)) from None


class SizeLimitExceeded(ValueError):
    """Instance too large for an exhaustive method."""
