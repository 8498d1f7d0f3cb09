"""Booking CSV -> interval graph -> coloring -> resource assignment."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pottscolor.errors import InputError, ParseError
from pottscolor.instances import schedule_resource
from pottscolor.potts import Coloring, chromatic_number_exact, hard_energy
from pottscolor.scheduling import (
    Assignment,
    Request,
    decode_assignment,
    encode_interval_graph,
    max_concurrency,
    parse_requests,
    start_order_assignment,
    validate_assignment,
)


def bookings(*triples):
    return [Request(rid, s, e) for rid, s, e in triples]


class TestParsing:
    def test_times_and_fields(self):
        rows = parse_requests("id,start,end\nA,08:00,10:30\nB,90,135\n")
        assert rows == [Request("A", 480, 630), Request("B", 90, 135)]

    def test_header_is_case_insensitive(self):
        assert parse_requests("ID, Start ,END\nA,1,2\n") == [Request("A", 1, 2)]

    def test_blank_rows_skipped(self):
        rows = parse_requests("id,start,end\n\nA,1,2\n  , , \nB,3,4\n")
        assert [r.id for r in rows] == ["A", "B"]

    def test_empty_body_is_fine(self):
        assert parse_requests("id,start,end\n") == []

    @pytest.mark.parametrize("text,row", [
        ("", 1),
        ("start,end\nA,1,2\n", 1),
        ("id,start,end\nA,1\n", 2),
        ("id,start,end\nA,1,2\n,3,4\n", 3),
        ("id,start,end\nA,1,2\nA,3,4\n", 3),
        ("id,start,end\nA,8h00,10:00\n", 2),
        ("id,start,end\nA,08:61,10:00\n", 2),
        ("id,start,end\nA,-5,10\n", 2),
        ("id,start,end\nA,1,2\nB,10:00,09:00\n", 3),
        ("id,start,end\nA,2,2\n", 2),
    ])
    def test_errors_carry_row_numbers(self, text, row):
        with pytest.raises(ParseError) as exc:
            parse_requests(text)
        assert exc.value.line == row

    def test_request_rejects_empty_interval(self):
        with pytest.raises(InputError):
            Request("A", 5, 5)


class TestEncoding:
    def test_chain_overlaps(self):
        reqs = bookings(("A", 0, 4), ("B", 2, 6), ("C", 5, 8))
        enc = encode_interval_graph(reqs)
        assert enc.graph.node_count == 3
        assert [tuple(e) for e in enc.graph.edges] == [(0, 1), (1, 2)]
        assert enc.node_id(2) == "C"

    def test_touching_endpoints_open_vs_closed(self):
        reqs = bookings(("A", 0, 2), ("B", 2, 4))
        assert encode_interval_graph(reqs).graph.edge_count == 0
        assert encode_interval_graph(reqs, closed=True).graph.edge_count == 1

    def test_request_order_does_not_matter(self):
        reqs = bookings(("A", 0, 4), ("B", 2, 6), ("C", 5, 8), ("D", 1, 7))
        base = encode_interval_graph(reqs)
        flipped = encode_interval_graph(list(reversed(reqs)))
        # same abstract graph: compare edge sets through the id labels
        def id_edges(enc):
            return {
                frozenset((enc.node_id(int(u)), enc.node_id(int(v))))
                for u, v in enc.graph.edges
            }
        assert id_edges(base) == id_edges(flipped)

    def test_bundled_example_structure(self):
        reqs = parse_requests(schedule_resource("meetings"))
        assert len(reqs) == 6
        enc = encode_interval_graph(reqs)
        assert enc.graph.edge_count == 6
        assert chromatic_number_exact(enc.graph) == 3
        assert max_concurrency(reqs) == 3

    def test_empty_instance(self):
        enc = encode_interval_graph([])
        assert enc.graph.node_count == 0


class TestDecodeValidate:
    def test_round_trip(self):
        reqs = bookings(("A", 0, 4), ("B", 2, 6), ("C", 5, 8))
        enc = encode_interval_graph(reqs)
        c = Coloring(np.array([0, 1, 0]), 2)
        a = decode_assignment(c, enc)
        assert a.mapping == {"A": 0, "B": 1, "C": 0}
        assert a.resources_used == 2
        assert validate_assignment(reqs, a)

    def test_skipped_colors_are_compacted(self):
        reqs = bookings(("A", 0, 4), ("B", 2, 6))
        enc = encode_interval_graph(reqs)
        a = decode_assignment(Coloring(np.array([3, 1]), 5), enc)
        assert a.mapping == {"A": 1, "B": 0}
        assert a.resources_used == 2

    def test_improper_coloring_refused(self):
        reqs = bookings(("A", 0, 4), ("B", 2, 6))
        enc = encode_interval_graph(reqs)
        with pytest.raises(InputError, match="double-book"):
            decode_assignment(Coloring(np.array([0, 0]), 2), enc)

    def test_wrong_length_refused(self):
        enc = encode_interval_graph(bookings(("A", 0, 4)))
        with pytest.raises(InputError):
            decode_assignment(Coloring(np.array([0, 1]), 2), enc)

    def test_validate_catches_double_booking(self):
        reqs = bookings(("A", 0, 4), ("B", 2, 6))
        assert not validate_assignment(reqs, Assignment({"A": 0, "B": 0}, 1))

    def test_validate_touching_endpoints(self):
        reqs = bookings(("A", 0, 2), ("B", 2, 4))
        shared = Assignment({"A": 0, "B": 0}, 1)
        assert validate_assignment(reqs, shared)
        assert not validate_assignment(reqs, shared, closed=True)

    def test_validate_unknown_and_missing_ids(self):
        reqs = bookings(("A", 0, 2))
        with pytest.raises(InputError, match="unknown"):
            validate_assignment(reqs, Assignment({"A": 0, "Z": 1}, 2))
        with pytest.raises(InputError, match="no resource"):
            validate_assignment(reqs, Assignment({}, 0))

    def test_empty_round_trip(self):
        enc = encode_interval_graph([])
        a = decode_assignment(Coloring(np.zeros(0, dtype=int), 1), enc)
        assert a.resources_used == 0
        assert validate_assignment([], a)


@st.composite
def booking_lists(draw, max_size=7):
    k = draw(st.integers(0, max_size))
    reqs = []
    for i in range(k):
        start = draw(st.integers(0, 40))
        length = draw(st.integers(1, 20))
        reqs.append(Request(f"r{i}", start, start + length))
    return reqs


class TestConcurrency:
    def test_touching_endpoints_do_not_stack(self):
        reqs = bookings(("A", 0, 10), ("B", 10, 20))
        assert max_concurrency(reqs) == 1
        assert max_concurrency(reqs, closed=True) == 2

    def test_no_requests(self):
        assert max_concurrency([]) == 0

    @given(reqs=booking_lists())
    @settings(max_examples=40, deadline=None)
    def test_matches_exact_chromatic_number(self, reqs):
        for closed in (False, True):
            enc = encode_interval_graph(reqs, closed=closed)
            assert max_concurrency(reqs, closed=closed) == (
                chromatic_number_exact(enc.graph)
            )

    @given(reqs=booking_lists(max_size=12))
    @settings(max_examples=40, deadline=None)
    def test_start_order_assignment_is_optimal(self, reqs):
        for closed in (False, True):
            a = start_order_assignment(reqs, closed=closed)
            assert validate_assignment(reqs, a, closed=closed)
            assert a.resources_used == max_concurrency(reqs, closed=closed)

    def test_start_order_on_bundled_example(self):
        reqs = parse_requests(schedule_resource("meetings"))
        a = start_order_assignment(reqs)
        assert a.resources_used == 3
        assert validate_assignment(reqs, a)
