"""JSON map specifications: schema, construction and serialization.

A MapSpec names a constructor and its parameters.  Complex parameters are
written as ``{"re": x, "im": y}``; composite types (convolution, rotation,
convex_combination) nest further MapSpecs under ``operands``.  The
``coefficients`` type carries raw coefficient arrays, so the output of
:func:`serialize_map` is itself a MapSpec and re-ingests bit for bit.
"""

from __future__ import annotations

import cmath
import json
import math

import jsonschema
import numpy as np

from . import canonical as C
from . import harmonic as H
from .errors import HarmconvError, SchemaError
from .series import DEFAULT_ORDER, TruncatedSeries

COMPLEX = {
    "oneOf": [
        {"type": "number"},
        {
            "type": "object",
            "properties": {"re": {"type": "number"}, "im": {"type": "number"}},
            "required": ["re", "im"],
            "additionalProperties": False,
        },
    ]
}

PAIR = {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2}

DILATATION = {
    "type": "object",
    "required": ["kind"],
    "properties": {
        "kind": {"enum": ["monomial", "moebius_of_rotation", "admissible_moebius"]},
        "theta": {"type": "number"},
        "n": {"type": "integer", "minimum": 1},
        "prefactor_angle": {"type": "number"},
        "a_param": {"type": "number"},
        "inner_angle": {"type": "number"},
        "sign": {"enum": [-1, 1]},
    },
    "additionalProperties": False,
}

TYPES = [
    "slanted_halfplane_canonical",
    "halfplane_member",
    "strip_member",
    "f_lambda_delta",
    "right_halfplane_f0",
    "convolution",
    "rotation",
    "convex_combination",
    "coefficients",
]

SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$id": "harmconv-mapspec",
    "title": "MapSpec",
    "$ref": "#/$defs/mapspec",
    "$defs": {
        "mapspec": {
            "type": "object",
            "required": ["type"],
            "properties": {
                "type": {"enum": TYPES},
                "order": {"type": "integer", "minimum": 1},
                "a": COMPLEX,
                "b": COMPLEX,
                "gamma": {"type": "number"},
                "beta": {"type": "number"},
                "lambda": {"type": "number"},
                "delta": {"type": "number"},
                "mu": {"type": "number"},
                "dilatation": DILATATION,
                "operands": {"type": "array", "items": {"$ref": "#/$defs/mapspec"}, "minItems": 1},
                "weights": {"type": "array", "items": {"type": "number", "minimum": 0}},
                "class_tag": {"enum": [t.value for t in H.ClassTag]},
                "h": {"type": "array", "items": PAIR, "minItems": 2},
                "g": {"type": "array", "items": PAIR, "minItems": 2},
            },
            "additionalProperties": False,
            "allOf": [
                {"if": {"properties": {"type": {"enum": ["convolution", "convex_combination"]}}},
                 "then": {"required": ["operands"]}},
                {"if": {"properties": {"type": {"const": "rotation"}}},
                 "then": {"required": ["operands", "mu"], "properties": {"operands": {"maxItems": 1}}}},
                {"if": {"properties": {"type": {"const": "convex_combination"}}},
                 "then": {"required": ["weights"]}},
                {"if": {"properties": {"type": {"const": "coefficients"}}},
                 "then": {"required": ["h", "g"]}},
                {"if": {"properties": {"type": {"const": "strip_member"}}},
                 "then": {"required": ["beta"]}},
                {"if": {"properties": {"type": {"const": "f_lambda_delta"}}},
                 "then": {"required": ["lambda", "delta"]}},
            ],
        }
    },
}

_VALIDATOR = jsonschema.Draft202012Validator(SCHEMA)


def _where(path):
    return "spec" + "".join(f"[{p!r}]" if isinstance(p, str) else f"[{p}]" for p in path)


def validate(doc):
    """Schema check plus the range checks JSON Schema cannot express."""
    errors = sorted(_VALIDATOR.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        e = errors[0]
        raise SchemaError(f"{_where(e.absolute_path)}: {e.message}")
    _check_ranges(doc, [])


def _check_ranges(doc, path):
    for key in ("a", "b"):
        if key in doc and abs(to_complex(doc[key])) >= 1.0:
            raise SchemaError(f"{_where(path + [key])}: |{key}| = {abs(to_complex(doc[key])):.17g} must be < 1")
    if "beta" in doc and not 0.0 < doc["beta"] < math.pi:
        raise SchemaError(f"{_where(path + ['beta'])}: beta must lie strictly inside (0, pi)")
    dil = doc.get("dilatation")
    if dil and "a_param" in dil and not -1.0 < dil["a_param"] < 1.0:
        raise SchemaError(f"{_where(path + ['dilatation', 'a_param'])}: must lie in (-1, 1)")
    if doc["type"] == "convex_combination" and len(doc["weights"]) != len(doc["operands"]):
        raise SchemaError(f"{_where(path + ['weights'])}: needs one weight per operand")
    if doc["type"] == "coefficients" and len(doc["h"]) != len(doc["g"]):
        raise SchemaError(f"{_where(path + ['g'])}: h and g must have the same length")
    for i, sub in enumerate(doc.get("operands", [])):
        _check_ranges(sub, path + ["operands", i])


def to_complex(value):
    if isinstance(value, dict):
        return complex(value["re"], value["im"])
    return complex(value)


def _dilatation(doc, origin):
    """DilatationSpec from JSON; ``admissible_moebius`` takes its origin value from the family."""
    d = doc.get("dilatation", {"kind": "admissible_moebius"})
    kind = d["kind"]
    if kind == "monomial":
        return H.DilatationSpec.monomial(d.get("theta", 0.0), d.get("n", 1))
    if kind == "moebius_of_rotation":
        return H.DilatationSpec.moebius(
            d.get("prefactor_angle", 0.0), d.get("a_param", 0.0), d.get("inner_angle", 0.0), d.get("sign", 1)
        )
    angle = cmath.phase(origin) if origin != 0 else 0.0
    return H.DilatationSpec.moebius(angle, abs(origin), d.get("theta", 0.0), d.get("sign", 1))


def build(doc, order=None):
    """Construct the HarmonicMap a validated MapSpec describes."""
    order = doc.get("order", order or DEFAULT_ORDER)
    kind = doc["type"]
    if kind == "right_halfplane_f0":
        return C.right_halfplane_f0(order)
    if kind == "slanted_halfplane_canonical":
        return C.slanted_halfplane_canonical(C.SlantParams(to_complex(doc.get("a", 0)), doc.get("gamma", 0.0)), order)
    if kind == "halfplane_member":
        p = C.SlantParams(to_complex(doc.get("a", 0)), doc.get("gamma", 0.0))
        return C.halfplane_member(p, _dilatation(doc, p.a_prime * cmath.exp(2j * p.phi)), order)
    if kind == "strip_member":
        p = C.StripParams(to_complex(doc.get("b", 0)), doc["beta"])
        return C.strip_member(p, _dilatation(doc, p.b_prime * cmath.exp(2j * p.gamma_b)), order)
    if kind == "f_lambda_delta":
        p = C.FLambdaDeltaParams(
            to_complex(doc.get("a", 0)), cmath.exp(1j * doc["lambda"]), cmath.exp(1j * doc["delta"])
        )
        origin = p.a_prime * p.delta**2 * cmath.exp(2j * p.gamma_a)
        return C.f_lambda_delta_member(p, _dilatation(doc, origin), order)
    if kind == "coefficients":
        h = np.array([complex(re, im) for re, im in doc["h"]])
        g = np.array([complex(re, im) for re, im in doc["g"]])
        return H.HarmonicMap(TruncatedSeries(h), TruncatedSeries(g), doc.get("class_tag", "unconstrained"))
    operands = [build(sub, order) for sub in doc["operands"]]
    orders = {f.order for f in operands}
    if len(orders) != 1:
        raise SchemaError(f"operands have different orders {sorted(orders)}")
    if kind == "rotation":
        return H.rotate(operands[0], cmath.exp(1j * doc["mu"]))
    if kind == "convex_combination":
        return C.convex_combination(operands, doc["weights"])
    out = operands[0]
    for f in operands[1:]:
        out = H.convolve(out, f)
    return out


def load(text_or_doc, default_order=None):
    """Parse, validate and build; constructor errors gain the spec type as context.

    ``default_order`` applies wherever the spec leaves ``order`` out.
    """
    if isinstance(text_or_doc, str):
        try:
            doc = json.loads(text_or_doc)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"not valid JSON: {exc}") from exc
    else:
        doc = text_or_doc
    validate(doc)
    try:
        return build(doc, default_order)
    except SchemaError:
        raise
    except HarmconvError as exc:
        raise type(exc)(f"while building {doc['type']!r}: {exc}") from exc


def _fmt(x):
    return "%.17g" % x


def _pairs(coeffs):
    return "[" + ", ".join(f"[{_fmt(c.real)}, {_fmt(c.imag)}]" for c in coeffs) + "]"


def serialize_map(f):
    """JSON text of a ``coefficients`` MapSpec, numbers printed with 17 significant digits."""
    head = json.dumps({"type": "coefficients", "order": f.order, "class_tag": f.class_tag.value})
    return head[:-1] + f', "h": {_pairs(f.h.coeffs)}, "g": {_pairs(f.g.coeffs)}}}\n'
