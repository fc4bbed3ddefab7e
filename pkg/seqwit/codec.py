"""JSON descriptor documents (schema ``seqwit/1``).

A document is either a bare descriptor (a set, sequence, function, ...) or a query
document naming its parts: ``set``, ``sets``, ``point``, ``sequence``, ``function``,
``testset``, ``corpus``, ``chain``. Any malformed input surfaces as ``ParseError``.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any, Callable, Dict, Mapping, TypeVar, Union

from .errors import ParseError, SeqwitError
from .models import (
    SCHEMA,
    ChainDescriptor,
    DefinableSet,
    FanPoint,
    FunctionCorpus,
    FunctionDescriptor,
    NeighborhoodSpec,
    SequenceDescriptor,
    TestSetDescriptor,
    testset_from_dict,
)

logger = logging.getLogger(__name__)

T = TypeVar("T")


def _parse(kind: str, loader: Callable[[Any], T], data: Any) -> T:
    try:
        return loader(data)
    except SeqwitError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"invalid {kind}: {exc}") from exc
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise ParseError(f"malformed {kind}: {exc!r}") from exc


def parse_point(data: Any) -> FanPoint:
    return _parse("point", FanPoint.from_dict, data)


def parse_neighborhood(data: Any) -> NeighborhoodSpec:
    return _parse("neighborhood", NeighborhoodSpec.from_dict, data)


def parse_set(data: Any) -> DefinableSet:
    return _parse("set", DefinableSet.from_dict, data)


def parse_sequence(data: Any) -> SequenceDescriptor:
    return _parse("sequence", SequenceDescriptor.from_dict, data)


def parse_function(data: Any) -> FunctionDescriptor:
    return _parse("function", FunctionDescriptor.from_dict, data)


def parse_testset(data: Any) -> TestSetDescriptor:
    return _parse("test set", testset_from_dict, data)


def parse_corpus(data: Any) -> FunctionCorpus:
    return _parse("corpus", FunctionCorpus.from_dict, data)


def parse_chain(data: Any) -> ChainDescriptor:
    def load(raw: Any) -> ChainDescriptor:
        entries = raw["chain"] if isinstance(raw, Mapping) else raw
        return ChainDescriptor(tuple(testset_from_dict(e) for e in entries))

    return _parse("chain", load, data)


PARSERS: Dict[str, Callable[[Any], Any]] = {
    "point": parse_point,
    "neighborhood": parse_neighborhood,
    "set": parse_set,
    "sequence": parse_sequence,
    "function": parse_function,
    "testset": parse_testset,
    "corpus": parse_corpus,
    "chain": parse_chain,
}


def document_kind(doc: Mapping[str, Any]) -> str:
    """Descriptor kind of a bare document, judged by its keys."""
    if "channels" in doc:
        return "sequence"
    if "spokes" in doc or "rows" in doc:
        return "set"
    if "layers" in doc or ("apex" in doc and "default" in doc):
        return "function"
    if "explicit" in doc or "canonicalFan" in doc or "prefixFamily" in doc:
        return "testset"
    if "chain" in doc:
        return "chain"
    if "functions" in doc:
        return "corpus"
    if "apex" in doc or "spoke" in doc:
        return "point"
    if "default" in doc:
        return "neighborhood"
    raise ParseError(f"cannot tell what kind of descriptor has keys {sorted(doc)}")


def check_schema(doc: Mapping[str, Any]) -> None:
    schema = doc.get("schema")
    if schema is None:
        logger.debug("document has no schema field; assuming %s", SCHEMA)
    elif schema != SCHEMA:
        raise ParseError(f"unsupported schema {schema!r} (expected {SCHEMA!r})")


def parse_document(doc: Any) -> Dict[str, Any]:
    """Named parts of a bare descriptor or query document."""
    if not isinstance(doc, Mapping):
        raise ParseError("a descriptor document must be a JSON object")
    check_schema(doc)
    body = {k: v for k, v in doc.items() if k != "schema"}
    named = {k: v for k, v in body.items() if k in PARSERS or k == "sets"}
    if not named:
        kind = document_kind(body)
        return {kind: PARSERS[kind](body)}
    out: Dict[str, Any] = {}
    for key, value in named.items():
        if key == "sets":
            if not isinstance(value, list):
                raise ParseError("'sets' must be a list")
            out["sets"] = [parse_set(v) for v in value]
        else:
            out[key] = PARSERS[key](value)
    return out


def load_document(path: Union[str, Path]) -> Dict[str, Any]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc}") from exc
    return parse_document(doc)


def dump_descriptor(obj: Any) -> str:
    payload = {"schema": SCHEMA, **obj.to_dict()}
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"
