"""Higher McKay quivers with potential and their Ginzburg dg algebras."""

import json
from pathlib import Path

from . import _core
from ._core import Cyclo, MckayError  # noqa: F401

__all__ = ["Cyclo", "MckayError", "poly_qp", "mckay", "gl_dga", "h0", "verify", "info"]


def _text(doc):
    if isinstance(doc, dict):
        return json.dumps(doc)
    if isinstance(doc, Path):
        return doc.read_text()
    if isinstance(doc, str) and not doc.lstrip().startswith("{"):
        return Path(doc).read_text()
    return doc


def _decode(raw):
    out = {
        "passed": raw["passed"],
        "report": json.loads(raw["report"]),
        "text": raw["text"],
        "dot": raw["dot"],
    }
    out["presentation"] = json.loads(raw["presentation"]) if raw["presentation"] else None
    return out


def poly_qp(n, w_max=4, cohomology_w_max=3, path_budget=_core.default_path_budget):
    return _decode(_core.poly_qp(n, w_max, cohomology_w_max, path_budget))


def mckay(group_document, w_max=4, cohomology_w_max=3, path_budget=_core.default_path_budget):
    """Group document as a dict, a JSON string or a path."""
    return _decode(_core.mckay(_text(group_document), w_max, cohomology_w_max, path_budget))


def gl_dga(group_document, w_max=4, cohomology_w_max=3, path_budget=_core.default_path_budget):
    return _decode(_core.gl_dga(_text(group_document), w_max, cohomology_w_max, path_budget))


def h0(group_document=None, n=0, w_max=3, path_budget=_core.default_path_budget):
    doc = None if group_document is None else _text(group_document)
    return _decode(_core.h0(doc, n, w_max, path_budget))


def verify(presentation):
    return _decode(_core.verify(_text(presentation)))


def info(group_document):
    return _decode(_core.info(_text(group_document)))
