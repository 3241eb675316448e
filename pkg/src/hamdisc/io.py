"""JSON/CSV serialisation shared by the CLI and the experiment runner.

Exact rationals travel as ``"num/den"`` strings and never as floats.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Any, Iterable, Sequence


def encode_value(x: Any) -> Any:
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, float):
        return x
    if hasattr(x, "item"):
        return encode_value(x.item())
    if isinstance(x, dict):
        return {str(k): encode_value(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [encode_value(v) for v in x]
    raise TypeError(f"cannot encode {type(x).__name__}")


def decode_fraction(s: str) -> Fraction:
    return Fraction(s)


def fraction_fields(q: Fraction | None) -> dict:
    if q is None:
        return {"exact_numerator": None, "exact_denominator": None}
    return {"exact_numerator": str(q.numerator), "exact_denominator": str(q.denominator)}


def dumps(obj: Any) -> str:
    return json.dumps(encode_value(obj), indent=2, sort_keys=True) + "\n"


def to_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([encode_value(v) for v in row])
    return buf.getvalue()
