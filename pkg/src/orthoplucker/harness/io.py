"""JSON files for forms, brackets, decompositions and reports.

Form file::

    {"dim": 6, "time_dims": 0, "degree": 3,
     "terms": [{"indices": [1, 2, 3], "coeff": "1"}, ...]}

Bracket file::

    {"arity": 2, "dim": 3, "time_dims": 0,
     "constants": [{"lower": [1, 2], "upper": 3, "coeff": "1"}, ...]}

``time_dims`` is optional in bracket files; a full ``"metric"`` matrix may
be given instead.  Coefficients are integers, ``"num/den"`` strings, or
``"a + b*sqrt(3)"`` strings for the su(3) entries.
"""
from __future__ import annotations

import json
import re
from pathlib import Path

from ..decomposition import Decomposition, Indeterminate
from ..exterior import Form, MetricSpace
from ..lie import MetricLieAlgebra, NBracket
from ..scalars import format_scalar, parse_scalar

__all__ = [
    "InputError",
    "parse_form",
    "load_form",
    "form_to_json",
    "dump_form",
    "parse_bracket",
    "load_bracket",
    "bracket_to_json",
    "algebra_to_json",
    "decomposition_to_json",
    "write_json",
]


class InputError(ValueError):
    """Malformed input file; the message names the line and field."""

    def __init__(self, message: str, *, line: int | None = None, field: str | None = None, source: str = "<input>"):
        self.line = line
        self.field = field
        where = source
        if line is not None:
            where += f":{line}"
        if field:
            where += f": field {field}"
        super().__init__(f"{where}: {message}")


def _decode(text: str, source: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON ({exc.msg}, column {exc.colno})", line=exc.lineno, source=source) from None


def _line_of_item(text: str, key: str, k: int) -> int | None:
    """Line of the k-th occurrence of ``"key"`` in the raw text."""
    matches = list(re.finditer(r'"%s"\s*:' % re.escape(key), text))
    if k < len(matches):
        return text.count("\n", 0, matches[k].start()) + 1
    return None


def _line_of_key(text: str, key: str) -> int | None:
    return _line_of_item(text, key, 0)


def _int_field(obj, key, text, source, *, minimum=0):
    if key not in obj:
        raise InputError("missing", field=key, source=source)
    v = obj[key]
    if isinstance(v, bool) or not isinstance(v, int) or v < minimum:
        raise InputError(f"expected an integer >= {minimum}, got {v!r}", line=_line_of_key(text, key), field=key,
                         source=source)
    return v


def _coeff(v, field, line, source):
    try:
        return parse_scalar(v)
    except ValueError as exc:
        raise InputError(str(exc), line=line, field=field, source=source) from None


def parse_form(text: str, source: str = "<input>") -> Form:
    obj = _decode(text, source)
    if not isinstance(obj, dict):
        raise InputError("top level must be an object", line=1, source=source)
    d = _int_field(obj, "dim", text, source, minimum=1)
    t = _int_field(obj, "time_dims", text, source)
    p = _int_field(obj, "degree", text, source)
    if t > d:
        raise InputError(f"time_dims {t} exceeds dim {d}", line=_line_of_key(text, "time_dims"), field="time_dims",
                         source=source)
    terms = obj.get("terms")
    if not isinstance(terms, list):
        raise InputError("expected a list", line=_line_of_key(text, "terms"), field="terms", source=source)
    space = MetricSpace(d, t)
    acc = {}
    for k, term in enumerate(terms):
        line = _line_of_item(text, "indices", k)
        name = f"terms[{k}]"
        if not isinstance(term, dict):
            raise InputError("expected an object", line=line, field=name, source=source)
        idx = term.get("indices")
        if not isinstance(idx, list) or not all(isinstance(i, int) and not isinstance(i, bool) for i in idx):
            raise InputError("expected a list of integers", line=line, field=f"{name}.indices", source=source)
        if len(idx) != p:
            raise InputError(f"{len(idx)} indices for degree {p}", line=line, field=f"{name}.indices", source=source)
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise InputError("indices must be strictly increasing", line=line, field=f"{name}.indices",
                             source=source)
        if idx and (idx[0] < 1 or idx[-1] > d):
            raise InputError(f"indices must lie in 1..{d}", line=line, field=f"{name}.indices", source=source)
        if "coeff" not in term:
            raise InputError("missing", line=line, field=f"{name}.coeff", source=source)
        key = tuple(idx)
        if key in acc:
            raise InputError("repeated blade", line=line, field=f"{name}.indices", source=source)
        acc[key] = _coeff(term["coeff"], f"{name}.coeff", line, source)
    return Form(space, p, acc)


def load_form(path) -> Form:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"cannot read ({exc.strerror})", source=str(path)) from None
    return parse_form(text, str(path))


def form_to_json(F: Form) -> dict:
    return {
        "dim": F.space.dim,
        "time_dims": F.space.time_dims,
        "degree": F.degree,
        "terms": [{"indices": list(k), "coeff": format_scalar(v)} for k, v in sorted(F.items())],
    }


def dump_form(F: Form, path) -> None:
    write_json(form_to_json(F), path)


def parse_bracket(text: str, source: str = "<input>") -> MetricLieAlgebra:
    obj = _decode(text, source)
    if not isinstance(obj, dict):
        raise InputError("top level must be an object", line=1, source=source)
    n = _int_field(obj, "arity", text, source, minimum=2)
    d = _int_field(obj, "dim", text, source, minimum=1)
    consts = obj.get("constants")
    if not isinstance(consts, list):
        raise InputError("expected a list", line=_line_of_key(text, "constants"), field="constants", source=source)
    entries = []
    for k, c in enumerate(consts):
        line = _line_of_item(text, "lower", k)
        name = f"constants[{k}]"
        if not isinstance(c, dict):
            raise InputError("expected an object", line=line, field=name, source=source)
        lower = c.get("lower")
        if not isinstance(lower, list) or len(lower) != n or not all(
                isinstance(i, int) and not isinstance(i, bool) and 1 <= i <= d for i in lower):
            raise InputError(f"expected {n} indices in 1..{d}", line=line, field=f"{name}.lower", source=source)
        upper = c.get("upper")
        if isinstance(upper, bool) or not isinstance(upper, int) or not 1 <= upper <= d:
            raise InputError(f"expected an index in 1..{d}", line=line, field=f"{name}.upper", source=source)
        if "coeff" not in c:
            raise InputError("missing", line=line, field=f"{name}.coeff", source=source)
        entries.append((tuple(lower), upper, _coeff(c["coeff"], f"{name}.coeff", line, source)))
    bracket = NBracket.from_entries(n, d, entries)
    if "metric" in obj:
        rows = obj["metric"]
        line = _line_of_key(text, "metric")
        if not isinstance(rows, list) or len(rows) != d or any(not isinstance(r, list) or len(r) != d for r in rows):
            raise InputError(f"expected a {d}x{d} matrix", line=line, field="metric", source=source)
        metric = tuple(tuple(_coeff(x, "metric", line, source) for x in r) for r in rows)
    else:
        t = obj.get("time_dims", 0)
        if isinstance(t, bool) or not isinstance(t, int) or not 0 <= t <= d:
            raise InputError(f"expected an integer in 0..{d}", line=_line_of_key(text, "time_dims"),
                             field="time_dims", source=source)
        metric = tuple(tuple((-1 if i < t else 1) if i == j else 0 for j in range(d)) for i in range(d))
    try:
        return MetricLieAlgebra(bracket, metric, obj.get("name", ""))
    except ValueError as exc:
        raise InputError(str(exc), line=_line_of_key(text, "metric"), field="metric", source=source) from None


def load_bracket(path) -> MetricLieAlgebra:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"cannot read ({exc.strerror})", source=str(path)) from None
    return parse_bracket(text, str(path))


def bracket_to_json(bracket: NBracket) -> dict:
    return {
        "arity": bracket.arity,
        "dim": bracket.dim,
        "constants": [
            {"lower": list(lower), "upper": k, "coeff": format_scalar(c)} for lower, k, c in bracket.entries()
        ],
    }


def algebra_to_json(L: MetricLieAlgebra) -> dict:
    out = bracket_to_json(L.bracket)
    if L.name:
        out["name"] = L.name
    out["metric"] = [[format_scalar(x) for x in row] for row in L.metric]
    return out


def decomposition_to_json(result) -> dict:
    if isinstance(result, Indeterminate):
        return {
            "status": "indeterminate",
            "reason": result.reason,
            "support_rank": result.support_rank,
            "dimension_bound": result.dimension_bound,
        }
    assert isinstance(result, Decomposition)
    return {
        "status": "decomposed",
        "method": result.method,
        "parts": [
            {
                "factors": [[format_scalar(c) for c in f.as_vector()] for f in part.factors],
                "terms": form_to_json(part.form)["terms"],
            }
            for part in result.parts
        ],
    }


def write_json(obj, path) -> None:
    Path(path).write_text(json.dumps(obj, indent=2, sort_keys=False) + "\n")
