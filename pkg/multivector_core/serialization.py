"""JSON form of multivectors: ``{signature_id, blades: [{mask, coeff}]}``."""

import json
from typing import Any, Dict

from exceptions import InputSpecError, SignatureError
from scalar_ring import ExactBackend, FloatBackend, PolyScalar, poly_from_dict, poly_to_dict

from .multivector import Multivector
from .signature import MetricSignature


def multivector_to_dict(value: Multivector) -> Dict[str, Any]:
    blades = []
    for mask, coefficient in value.items():
        coeff = poly_to_dict(coefficient) if isinstance(coefficient, PolyScalar) else coefficient.value
        blades.append({"mask": mask, "coeff": coeff})
    return {"signature_id": value.signature.name, "blades": blades}


def multivector_from_dict(data: Dict[str, Any], signature: MetricSignature) -> Multivector:
    """Rebuilds a multivector on ``signature``.

    Exact coefficients fix the registry of the result; a document with only
    float coefficients (or no blades) is read into the float backend unless
    the signature is exact and empty.

    Raises:
        SignatureError: If ``signature_id`` names another signature.
        InputSpecError: If the document is malformed.
    """
    try:
        if data["signature_id"] != signature.name:
            raise SignatureError(f"Document belongs to {data['signature_id']}", signature.name)
        entries = data["blades"]
        masks = [int(entry["mask"]) for entry in entries]
        if masks != sorted(set(masks)):
            raise InputSpecError("Blade masks must be unique and ascending", "multivector-json")
        exact = [isinstance(entry["coeff"], dict) for entry in entries]
    except (KeyError, TypeError, ValueError) as e:
        raise InputSpecError(f"Malformed multivector document: {e}", "multivector-json", e) from e

    if entries and all(exact):
        coefficients = [poly_from_dict(entry["coeff"]) for entry in entries]
        backend = ExactBackend(coefficients[0].registry)
    elif any(exact):
        raise InputSpecError("Mixed exact and float coefficients", "multivector-json")
    elif not entries and signature.is_exact:
        backend = ExactBackend()
        coefficients = []
    else:
        backend = FloatBackend()
        coefficients = [float(entry["coeff"]) for entry in entries]
    return Multivector(signature, backend, dict(zip(masks, coefficients)))


def multivector_to_json(value: Multivector) -> str:
    return json.dumps(multivector_to_dict(value), sort_keys=True, separators=(",", ":"))


def multivector_from_json(text: str, signature: MetricSignature) -> Multivector:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputSpecError(f"Invalid JSON: {e}", "multivector-json", e) from e
    return multivector_from_dict(data, signature)
