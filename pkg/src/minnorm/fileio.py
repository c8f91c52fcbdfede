"""Text formats: instance files, LP files, stage dumps and JSONL traces.

Rationals travel as strings, ``"num/den"`` in lowest terms or a bare
integer. On input, JSON number literals and decimal strings such as
``"0.8"`` are read exactly, so ``0.8`` means ``4/5``.
"""
import json
from fractions import Fraction
from typing import Optional

from .rational import Rational, as_rational, to_decimal
from .reductions import LPInstance, StageInstance
from .wolfe import Instance, TraceEvent


class FormatError(ValueError):
    """Malformed input; ``line`` and ``column`` are 1-based when known."""

    def __init__(self, msg: str, line: Optional[int] = None, column: Optional[int] = None,
                 source: str = "<input>"):
        self.msg = msg
        self.line = line
        self.column = column
        self.source = source
        where = source if line is None else f"{source}:{line}:{column}"
        super().__init__(f"{where}: {msg}")


def format_rational(q) -> str:
    q = as_rational(q)
    num, den = int(q.numerator), int(q.denominator)
    return str(num) if den == 1 else f"{num}/{den}"


def format_vector(v) -> list:
    return [format_rational(c) for c in v]


def _locate(text: str, value) -> tuple:
    # JSON keeps no value positions; point at the first spelling of the value
    for token in (json.dumps(value), str(value)):
        pos = text.find(token)
        if pos >= 0:
            line = text.count("\n", 0, pos) + 1
            return line, pos - (text.rfind("\n", 0, pos) + 1) + 1
    return None, None


def _load_json(text: str, source: str):
    try:
        return json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise FormatError(exc.msg, exc.lineno, exc.colno, source) from None


def _scalar(raw, text: str, source: str, where: str) -> Rational:
    try:
        if isinstance(raw, bool) or not isinstance(raw, (int, str, Fraction)):
            raise TypeError
        return as_rational(raw)
    except (TypeError, ValueError):
        line, col = _locate(text, raw)
        raise FormatError(f"{where}: not a rational number: {raw!r}", line, col, source) from None


def _vector(raw, text, source, where) -> tuple:
    if not isinstance(raw, list):
        line, col = _locate(text, raw)
        raise FormatError(f"{where}: expected a list", line, col, source)
    return tuple(_scalar(v, text, source, f"{where}[{i}]") for i, v in enumerate(raw))


def _matrix(raw, text, source, where) -> tuple:
    if not isinstance(raw, list):
        raise FormatError(f"{where}: expected a list of rows", source=source)
    return tuple(_vector(r, text, source, f"{where}[{i}]") for i, r in enumerate(raw))


def _require(obj, keys, source):
    if not isinstance(obj, dict):
        raise FormatError("top level must be a JSON object", 1, 1, source)
    missing = [k for k in keys if k not in obj]
    if missing:
        raise FormatError(f"missing key(s): {', '.join(missing)}", source=source)


def parse_instance(text: str, source: str = "<input>") -> Instance:
    obj = _load_json(text, source)
    _require(obj, ("dim", "points"), source)
    dim = obj["dim"]
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise FormatError(f"dim must be a positive integer, got {dim!r}", source=source)
    points = _matrix(obj["points"], text, source, "points")
    if not points:
        raise FormatError("an instance needs at least one point", source=source)
    for i, p in enumerate(points):
        if len(p) != dim:
            raise FormatError(f"points[{i}] has {len(p)} coordinates, dim is {dim}",
                              source=source)
    labels = obj.get("labels")
    if labels is not None:
        if not isinstance(labels, list) or len(labels) != len(points) \
                or not all(isinstance(s, str) for s in labels):
            raise FormatError("labels must be one string per point", source=source)
        labels = tuple(labels)
    return Instance(points, labels)


def dump_instance(instance: Instance) -> str:
    obj = {"dim": instance.dim, "points": [format_vector(p) for p in instance.points]}
    if instance.labels is not None:
        obj["labels"] = list(instance.labels)
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def read_instance(path: str) -> Instance:
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read(), path)


def write_instance(instance: Instance, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump_instance(instance))


def parse_lp(text: str, source: str = "<input>") -> LPInstance:
    obj = _load_json(text, source)
    _require(obj, ("A", "b", "c"), source)
    A = _matrix(obj["A"], text, source, "A")
    b = _vector(obj["b"], text, source, "b")
    c = _vector(obj["c"], text, source, "c")
    try:
        return LPInstance(A, b, c)
    except ValueError as exc:
        raise FormatError(str(exc), source=source) from None


def dump_lp(lp: LPInstance) -> str:
    obj = {"A": [format_vector(r) for r in lp.A], "b": format_vector(lp.b),
           "c": format_vector(lp.c)}
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def read_lp(path: str) -> LPInstance:
    with open(path, encoding="utf-8") as fh:
        return parse_lp(fh.read(), path)


def stage_record(stage: StageInstance) -> dict:
    """JSON-ready dump of one reduction stage, tagged with its name."""
    rows, cols = stage.shape
    rec = {"stage": stage.tag.value, "rows": rows, "cols": cols,
           "back_map": stage.back_map.describe()}
    if stage.A is not None:
        rec["A"] = [format_vector(r) for r in stage.A]
        rec["b"] = format_vector(stage.b)
    if stage.bound is not None:
        rec["bound"] = format_rational(stage.bound)
    if stage.points is not None:
        rec["points"] = [format_vector(p) for p in stage.points]
    return rec


def event_record(ev: TraceEvent, instance: Instance, places: int = 4) -> dict:
    """One trace event with exact and decimal renderings."""
    rec = {
        "kind": ev.kind.value,
        "major": ev.major,
        "minor": ev.minor,
        "corral": [instance.label(i) for i in ev.corral],
        "indices": list(ev.corral),
        "x": format_vector(ev.x),
        "x_decimal": [to_decimal(c, places) for c in ev.x],
    }
    if ev.y is not None:
        rec["y"] = format_vector(ev.y)
        rec["y_decimal"] = [to_decimal(c, places) for c in ev.y]
    if ev.entering is not None:
        rec["entering"] = instance.label(ev.entering)
    if ev.leaving is not None:
        rec["leaving"] = instance.label(ev.leaving)
    if ev.theta is not None:
        rec["theta"] = format_rational(ev.theta)
    return rec


def event_line(ev: TraceEvent, instance: Instance, places: int = 4) -> str:
    return json.dumps(event_record(ev, instance, places), sort_keys=True) + "\n"
