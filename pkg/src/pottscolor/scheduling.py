"""Resource scheduling as interval-graph coloring: encode, solve, decode.

Bookings become nodes, overlaps become edges, colors become resources.
Interval graphs are perfect, so the maximum number of simultaneously
active requests equals the chromatic number, and a greedy pass in start
order achieves it. That exact optimum is what any heuristic solver's
result gets checked against.

Overlap convention: intervals are open at the right end, so a booking
ending at 10:00 does not conflict with one starting at 10:00 (the
resource can be handed over back to back). Pass closed=True to make
touching endpoints conflict instead.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from .errors import InputError, ParseError
from .graphs import Graph, build_graph
from .potts import Coloring, hard_energy


@dataclass(frozen=True)
class Request:
    """One booking: opaque id plus [start, end) in integer minutes."""

    id: str
    start: int
    end: int

    def __post_init__(self):
        if self.end <= self.start:
            raise InputError(
                f"request {self.id!r}: end {self.end} must be after start {self.start}"
            )


@dataclass(frozen=True)
class Assignment:
    """request id -> resource index in {0, ..., resources_used - 1}."""

    mapping: dict[str, int]
    resources_used: int


@dataclass(frozen=True)
class EncodedInstance:
    """Interval graph plus the node <-> request correspondence."""

    graph: Graph
    requests: tuple[Request, ...]

    def node_id(self, node: int) -> str:
        return self.requests[node].id


def _parse_minutes(text: str, row: int) -> int:
    text = text.strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 2 or not parts[0].isdigit() or not parts[1].isdigit():
            raise ParseError(f"malformed time {text!r} (want HH:MM or minutes)", row)
        hours, minutes = int(parts[0]), int(parts[1])
        if minutes >= 60:
            raise ParseError(f"minutes field {minutes} out of range in {text!r}", row)
        return 60 * hours + minutes
    try:
        value = int(text)
    except ValueError:
        raise ParseError(
            f"malformed time {text!r} (want HH:MM or minutes)", row
        ) from None
    if value < 0:
        raise ParseError(f"negative time {value}", row)
    return value


def parse_requests(csv_text: str) -> list[Request]:
    """Read `id,start,end` rows; times as HH:MM or integer minutes.

    Row numbers in errors count the header as row 1.
    """
    reader = csv.reader(io.StringIO(csv_text))
    try:
        header = next(reader)
    except StopIteration:
        raise ParseError("empty input: expected an id,start,end header", 1) from None
    if [h.strip().lower() for h in header] != ["id", "start", "end"]:
        raise ParseError(
            f"header must be id,start,end (got {','.join(header)!r})", 1
        )
    requests = []
    seen = set()
    for row_number, row in enumerate(reader, start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != 3:
            raise ParseError(f"expected 3 fields, got {len(row)}", row_number)
        rid = row[0].strip()
        if not rid:
            raise ParseError("empty request id", row_number)
        if rid in seen:
            raise ParseError(f"duplicate request id {rid!r}", row_number)
        seen.add(rid)
        start = _parse_minutes(row[1], row_number)
        end = _parse_minutes(row[2], row_number)
        if end <= start:
            raise ParseError(
                f"request {rid!r}: end {row[2].strip()} is not after start "
                f"{row[1].strip()}", row_number
            )
        requests.append(Request(rid, start, end))
    return requests


def encode_interval_graph(requests: list[Request],
                          closed: bool = False) -> EncodedInstance:
    """Node per request, edge per overlapping pair, via a start-order sweep."""
    k = len(requests)
    order = sorted(range(k), key=lambda i: (requests[i].start, i))
    active: list[int] = []  # indices of intervals whose end may still overlap
    edges = []
    for i in order:
        start = requests[i].start
        if closed:
            active = [j for j in active if requests[j].end >= start]
        else:
            active = [j for j in active if requests[j].end > start]
        edges.extend((j, i) for j in active)
        active.append(i)
    graph = build_graph(k, edges)
    return EncodedInstance(graph=graph, requests=tuple(requests))


def decode_assignment(c: Coloring, enc: EncodedInstance) -> Assignment:
    """Colors -> contiguous resource indices; refuses improper colorings."""
    if len(c) != enc.graph.node_count:
        raise InputError(
            f"coloring has {len(c)} entries for {enc.graph.node_count} requests"
        )
    if hard_energy(enc.graph, c) != 0.0:
        raise InputError(
            "coloring is not proper: decoding it would double-book a resource"
        )
    if len(c) == 0:
        return Assignment(mapping={}, resources_used=0)
    used = np.unique(c.assignment)
    remap = {int(color): rank for rank, color in enumerate(used)}
    mapping = {
        enc.node_id(node): remap[int(color)]
        for node, color in enumerate(c.assignment)
    }
    return Assignment(mapping=mapping, resources_used=len(used))


def validate_assignment(requests: list[Request], a: Assignment,
                        closed: bool = False) -> bool:
    """True iff no two overlapping requests share a resource."""
    by_id = {r.id: r for r in requests}
    for rid in a.mapping:
        if rid not in by_id:
            raise InputError(f"assignment references unknown request id {rid!r}")
    for r in requests:
        if r.id not in a.mapping:
            raise InputError(f"request {r.id!r} has no resource assigned")
    by_resource: dict[int, list[Request]] = {}
    for r in requests:
        by_resource.setdefault(a.mapping[r.id], []).append(r)
    for group in by_resource.values():
        group.sort(key=lambda r: r.start)
        for prev, cur in zip(group, group[1:]):
            if cur.start < prev.end or (closed and cur.start == prev.end):
                return False
    return True


def max_concurrency(requests: list[Request], closed: bool = False) -> int:
    """Peak number of simultaneously active requests (the exact chromatic
    number of the interval graph, by perfection)."""
    if not requests:
        return 0
    # with open intervals an end at time t frees the resource before a
    # start at t claims one; closed flips that ordering
    end_rank, start_rank = (1, 0) if closed else (0, 1)
    events = []
    for r in requests:
        events.append((r.start, start_rank, 1))
        events.append((r.end, end_rank, -1))
    events.sort()
    best = running = 0
    for _, _, delta in events:
        running += delta
        best = max(best, running)
    return best


def start_order_assignment(requests: list[Request],
                           closed: bool = False) -> Assignment:
    """Greedy in start order: optimal for interval graphs.

    Uses exactly max_concurrency(requests) resources.
    """
    order = sorted(range(len(requests)), key=lambda i: (requests[i].start, i))
    resource_free_at: list[int] = []  # end time of latest booking per resource
    chosen: dict[str, int] = {}
    for i in order:
        r = requests[i]
        picked = -1
        for res, free_at in enumerate(resource_free_at):
            if free_at < r.start or (not closed and free_at == r.start):
                picked = res
                break
        if picked < 0:
            picked = len(resource_free_at)
            resource_free_at.append(0)
        resource_free_at[picked] = r.end
        chosen[r.id] = picked
    return Assignment(mapping=chosen, resources_used=len(resource_free_at))
