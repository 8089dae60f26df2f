"""Canonical JSON form of ``PolyScalar``.

Terms are sorted by exponent vector and rationals are written as
``"num/den"`` strings, so equal polynomials serialize to equal text.
"""

import json
from typing import Any, Dict, Optional

from exceptions import InputSpecError, RegistryError

from .poly_scalar import PolyScalar
from .registry import VariableRegistry, format_rational, parse_rational


def poly_to_dict(value: PolyScalar) -> Dict[str, Any]:
    return {
        "variables": list(value.registry.names),
        "terms": [
            {"exponents": list(exponents), "re": format_rational(re), "im": format_rational(im)}
            for exponents, (re, im) in value.terms()
        ],
    }


def poly_from_dict(data: Dict[str, Any], registry: Optional[VariableRegistry] = None) -> PolyScalar:
    """Rebuilds a polynomial; ``registry`` must match the stored variable list if given."""
    try:
        names = tuple(data["variables"])
        stored = VariableRegistry(names)
        if registry is not None and registry != stored:
            raise RegistryError("Serialized registry does not match", ",".join(names))
        terms = {}
        for term in data["terms"]:
            exponents = tuple(int(e) for e in term["exponents"])
            if exponents in terms:
                raise InputSpecError(f"Duplicate exponent vector {exponents}", "poly-json")
            terms[exponents] = (parse_rational(term["re"]), parse_rational(term["im"]))
    except (KeyError, TypeError, ValueError) as e:
        raise InputSpecError(f"Malformed polynomial document: {e}", "poly-json", e) from e
    return PolyScalar.from_terms(stored, terms)


def poly_to_json(value: PolyScalar) -> str:
    return json.dumps(poly_to_dict(value), sort_keys=True, separators=(",", ":"))


def poly_from_json(text: str, registry: Optional[VariableRegistry] = None) -> PolyScalar:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputSpecError(f"Invalid JSON: {e}", "poly-json", e) from e
    return poly_from_dict(data, registry)
