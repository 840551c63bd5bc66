"""Deterministic JSON encoding: sorted keys, floats with 17 significant digits,
complex numbers as {"re", "im"}, rationals as {"num", "den"}."""
import json
import math
from fractions import Fraction

import numpy as np

from .errors import InvalidKaehlerClass
from .topology import KaehlerClass


def to_plain(obj):
    """Convert package values to JSON-ready builtins."""
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, Fraction):
        return {"num": obj.numerator, "den": obj.denominator}
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": float(obj.real), "im": float(obj.imag)}
    if isinstance(obj, KaehlerClass):
        return kaehler_to_json(obj)
    if isinstance(obj, dict):
        return {str(k): to_plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [to_plain(v) for v in obj.tolist()]
    if obj is None or isinstance(obj, str):
        return obj
    raise TypeError(f"cannot encode {type(obj).__name__}")


def _fmt_float(x):
    if not math.isfinite(x):
        # JSON has no infinities; a failed residual is reported as a string
        return json.dumps("inf" if x > 0 else ("-inf" if x < 0 else "nan"))
    return format(x, ".17g")


def _emit(obj, indent, level, out):
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        items = sorted(obj.items())
        for n, (k, v) in enumerate(items):
            out.append(pad + json.dumps(k) + ": ")
            _emit(v, indent, level + 1, out)
            out.append(",\n" if n < len(items) - 1 else "\n")
        out.append(end + "}")
    elif isinstance(obj, list):
        if not obj:
            out.append("[]")
            return
        out.append("[\n")
        for n, v in enumerate(obj):
            out.append(pad)
            _emit(v, indent, level + 1, out)
            out.append(",\n" if n < len(obj) - 1 else "\n")
        out.append(end + "]")
    elif isinstance(obj, bool) or obj is None:
        out.append(json.dumps(obj))
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(_fmt_float(obj))
    else:
        out.append(json.dumps(obj))


def dumps(obj, indent=2):
    out = []
    _emit(to_plain(obj), indent, 0, out)
    return "".join(out) + "\n"


def _cplx(d, what):
    if isinstance(d, (int, float)) and not isinstance(d, bool):
        return complex(d)
    if not isinstance(d, dict) or set(d) - {"re", "im"} or "re" not in d:
        raise InvalidKaehlerClass(f"{what} must be an object with 're' and 'im'")
    re, im = d["re"], d.get("im", 0.0)
    for x in (re, im):
        if isinstance(x, bool) or not isinstance(x, (int, float)):
            raise InvalidKaehlerClass(f"{what} components must be numbers")
    return complex(re, im)


def kaehler_from_json(data):
    if not isinstance(data, dict):
        raise InvalidKaehlerClass("expected a JSON object")
    for key in ("k", "tau", "cbar", "c"):
        if key not in data:
            raise InvalidKaehlerClass(f"missing field {key!r}")
    if not isinstance(data["c"], list):
        raise InvalidKaehlerClass("'c' must be a list")
    k = data["k"]
    if isinstance(k, bool) or not isinstance(k, int):
        raise InvalidKaehlerClass("'k' must be an integer")
    return KaehlerClass(k, _cplx(data["tau"], "tau"), _cplx(data["cbar"], "cbar"),
                        tuple(_cplx(x, f"c[{n}]") for n, x in enumerate(data["c"])))


def kaehler_to_json(kc):
    return {"k": kc.k, "tau": to_plain(kc.tau), "cbar": to_plain(kc.cbar),
            "c": [to_plain(x) for x in kc.c]}


def load_kaehler(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidKaehlerClass(f"malformed JSON: {exc}") from None
    return kaehler_from_json(data)
