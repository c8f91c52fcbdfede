import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from minnorm.fileio import (
    FormatError,
    dump_instance,
    dump_lp,
    event_line,
    format_rational,
    parse_instance,
    parse_lp,
    read_instance,
    stage_record,
    write_instance,
)
from minnorm.hard import figure1_example, generate_pd
from minnorm.reductions import LPInstance, lp_to_fp, reduce_fp
from minnorm.wolfe import Instance, Rule, solve

F = Fraction
rationals = st.fractions(max_denominator=10**6).filter(lambda q: abs(q) < 10**9)


def test_format_rational():
    assert format_rational(F(3, 4)) == "3/4"
    assert format_rational(F(-6, 3)) == "-2"
    assert format_rational(0) == "0"


def test_decimals_and_numbers_parse_exactly():
    inst = parse_instance('{"dim": 2, "points": [["0.8", 0.9], [3, "-1/3"]]}')
    assert inst.points == ((F(4, 5), F(9, 10)), (3, F(-1, 3)))


def test_canonical_output():
    text = dump_instance(figure1_example())
    obj = json.loads(text)
    assert list(obj) == sorted(obj)
    assert obj["points"][0] == ["4/5", "9/10", "0"]
    assert text.endswith("\n")


@pytest.mark.parametrize("d", [1, 3, 5])
def test_round_trip_is_byte_identical(d, tmp_path):
    text = dump_instance(generate_pd(d).instance)
    assert dump_instance(parse_instance(text)) == text
    path = tmp_path / "p.json"
    write_instance(parse_instance(text), str(path))
    assert path.read_text() == text
    assert read_instance(str(path)).points == generate_pd(d).instance.points


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(
    lambda d: st.lists(st.tuples(*[rationals] * d), min_size=1, max_size=5)))
def test_round_trip_property(pts):
    text = dump_instance(Instance(tuple(pts)))
    again = parse_instance(text)
    assert again.points == tuple(pts)
    assert dump_instance(again) == text


@pytest.mark.parametrize("text, fragment, line, col", [
    ('{"dim": 2,\n "points": [["1", "x/2"]]}', "not a rational", 2, 19),
    ('{"dim": 2,\n "points": [["1", 2]', "Expecting", 2, 21),
    ('{"dim": 2, "points": [["1", "1/0"]]}', "not a rational", 1, 29),
    ('{"dim": 2, "points": [["1", true]]}', "not a rational", 1, 29),
])
def test_parse_errors_carry_position(text, fragment, line, col):
    with pytest.raises(FormatError) as info:
        parse_instance(text, "f.json")
    err = info.value
    assert fragment in str(err)
    assert (err.line, err.column) == (line, col)
    assert str(err).startswith(f"f.json:{line}:{col}:")


@pytest.mark.parametrize("text, fragment", [
    ('[1, 2]', "top level"),
    ('{"points": [["1"]]}', "missing key"),
    ('{"dim": 0, "points": [["1"]]}', "positive integer"),
    ('{"dim": 2, "points": [["1"]]}', "has 1 coordinates"),
    ('{"dim": 1, "points": []}', "at least one point"),
    ('{"dim": 1, "points": [["1"]], "labels": ["a", "b"]}', "labels"),
    ('{"dim": 1, "points": ["1"]}', "expected a list"),
])
def test_semantic_errors(text, fragment):
    with pytest.raises(FormatError, match=fragment):
        parse_instance(text)


def test_lp_round_trip():
    lp = LPInstance([["1/2", 0], [-1, 3]], [1, "0.25"], [1, 1])
    text = dump_lp(lp)
    assert parse_lp(text) == lp
    assert dump_lp(parse_lp(text)) == text
    with pytest.raises(FormatError, match="one row per entry"):
        parse_lp('{"A": [[1]], "b": [1, 2], "c": [1]}')


def test_trace_lines():
    inst = figure1_example()
    res = solve(inst, Rule.LINOPT)
    lines = [event_line(e, inst, 4) for e in res.trace]
    recs = [json.loads(line) for line in lines]
    assert all(line.endswith("\n") and line.count("\n") == 1 for line in lines)
    assert recs[0]["kind"] == "corral_reached" and recs[0]["x"] == ["4/5", "9/10", "0"]
    assert recs[1]["entering"] == "p4" and recs[1]["y_decimal"] == ["0.2219", "0.9723", "0.2409"]
    minor = [r for r in recs if r["kind"] == "minor_remove"]
    assert minor[0]["leaving"] == "p4" and "theta" in minor[0]


def test_stage_records_are_tagged():
    feas, _ = lp_to_fp(LPInstance([[1]], [2], [1]))
    recs = [stage_record(s) for s in reduce_fp(feas)]
    assert [r["stage"] for r in recs] == ["FP", "BFP", "VPM", "ZVPM"]
    assert recs[1]["bound"] == "243"
    assert recs[3]["points"] == [["241"], ["-245"], ["241"], ["-2"]]
    json.dumps(recs)
