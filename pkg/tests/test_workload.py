import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dynmis.workload import (
    DELETE,
    INSERT,
    FeasibilityError,
    ParseError,
    Stream,
    StreamOp,
    final_edges,
    gen_densify,
    gen_random,
    gen_sliding_window,
    infeasible_ops,
    parse_stream,
    serialize_stream,
    validate_stream,
)


def test_pure_insertion_stream():
    s = gen_random(30, 200, 0.0, 1)
    assert all(op.kind == INSERT for op in s.ops)
    assert len(final_edges(s.ops)) == 200


def test_saturated_graph_forces_deletes():
    s = gen_random(5, 40, 0.0, 1)
    validate_stream(s)
    assert len(final_edges(s.ops)) <= 10


@pytest.mark.parametrize("seed", range(100))
def test_random_streams_are_feasible(seed):
    assert infeasible_ops(gen_random(20, 300, 0.4, seed)) == []


def test_same_seed_same_bytes():
    a = serialize_stream(gen_random(50, 500, 0.3, 9))
    b = serialize_stream(gen_random(50, 500, 0.3, 9))
    assert a == b
    assert a != serialize_stream(gen_random(50, 500, 0.3, 10))


def test_p_delete_validation():
    with pytest.raises(ValueError):
        gen_random(10, 10, 1.0, 0)
    with pytest.raises(ValueError):
        gen_random(10, 10, -0.1, 0)


def test_window_one_alternates():
    s = gen_sliding_window(10, 20, 1, 3)
    kinds = [op.kind for op in s.ops]
    assert kinds == [INSERT] + [DELETE, INSERT] * 9 + [DELETE]


@pytest.mark.parametrize("seed", range(20))
@pytest.mark.parametrize("window", [1, 5, 40])
def test_window_bound_and_feasibility(seed, window):
    s = gen_sliding_window(15, 300, window, seed)
    assert infeasible_ops(s) == []
    live = set()
    for op in s.ops:
        if op.kind == INSERT:
            live.add(op.edge)
        else:
            live.remove(op.edge)
        assert len(live) <= window


@pytest.mark.parametrize("seed", range(10))
def test_densify_sweeps_up_and_down(seed):
    s = gen_densify(20, 400, 50, seed)
    assert infeasible_ops(s) == []
    sizes, live = [], set()
    for op in s.ops:
        (live.add if op.kind == INSERT else live.remove)(op.edge)
        sizes.append(len(live))
    assert max(sizes) == 50
    assert 0 in sizes[50:]


def test_parse_example():
    s = parse_stream("n 3\n+ 1 2\n- 1 2\n")
    assert s.n == 3
    assert s.ops == [StreamOp(INSERT, 1, 2), StreamOp(DELETE, 1, 2)]


def test_parse_ignores_comments_and_blank_lines():
    s = parse_stream("# header\nn 4\n\n+ 2 3\n# mid\n")
    assert len(s) == 1


@pytest.mark.parametrize("text, lineno", [
    ("n 3\n+ 1 1\n", 2),
    ("n 3\n+ 1 4\n", 2),
    ("n 3\n+ 1\n", 2),
    ("n 3\n* 1 2\n", 2),
    ("+ 1 2\n", 1),
    ("n x\n", 1),
    ("n 3\nn 3\n", 2),
    ("n 3\n+ a b\n", 2),
    ("n 0\n", 1),
])
def test_parse_errors_carry_line(text, lineno):
    with pytest.raises(ParseError) as exc:
        parse_stream(text)
    assert exc.value.lineno == lineno


def test_missing_header():
    with pytest.raises(ParseError):
        parse_stream("# only a comment\n")


def test_strict_mode_rejects_infeasible():
    text = "n 3\n+ 1 2\n+ 2 1\n"
    assert infeasible_ops(parse_stream(text)) == [1]
    with pytest.raises(FeasibilityError) as exc:
        parse_stream(text, strict=True)
    assert exc.value.index == 1


def test_infeasible_ops_skip_semantics():
    s = parse_stream("n 3\n- 1 2\n+ 1 2\n- 1 2\n- 1 2\n")
    assert infeasible_ops(s) == [0, 3]


@st.composite
def streams(draw):
    n = draw(st.integers(2, 12))
    ops = draw(st.lists(
        st.tuples(st.sampled_from([INSERT, DELETE]), st.integers(1, n), st.integers(1, n))
        .filter(lambda t: t[1] != t[2]), max_size=50))
    return Stream(n, [StreamOp(*t) for t in ops])


@given(streams())
@settings(max_examples=200)
def test_round_trip(s):
    assert parse_stream(serialize_stream(s)) == s


@given(st.integers(2, 30), st.integers(0, 300), st.floats(0, 0.9), st.integers(0, 2**31))
@settings(max_examples=60, deadline=None)
def test_generated_round_trip_and_feasible(n, ops, p, seed):
    s = gen_random(n, ops, p, seed)
    assert parse_stream(serialize_stream(s), strict=True) == s
