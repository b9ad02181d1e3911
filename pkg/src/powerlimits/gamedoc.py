"""JSON game documents.

    {"quota": "1/2", "weights": ["0.42", "0.40", "0.09", "0.09"]}
    {"quota": "1452", "classes": [["242", 1], ["1", 2662]]}

Numbers may be "p/q" strings, decimal strings, or JSON numbers; all are
read exactly.
"""

from __future__ import annotations

import json
import re
from decimal import Decimal
from fractions import Fraction
from pathlib import Path

from .counting import WeightedGame, game_from_weights, make_game

_FRACTION = re.compile(r"^\s*[+-]?\d+\s*/\s*\d+\s*$")
_DECIMAL = re.compile(r"^\s*[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?\s*$")


class GameDocumentError(ValueError):
    pass


def parse_number(value) -> Fraction:
    if isinstance(value, bool):
        raise GameDocumentError(f"not a number: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, (Decimal, float)):
        return Fraction(str(value))
    if isinstance(value, str):
        if _FRACTION.match(value):
            num, den = value.split("/")
            if int(den) == 0:
                raise GameDocumentError(f"zero denominator in {value!r}")
            return Fraction(int(num), int(den))
        if _DECIMAL.match(value):
            return Fraction(value.strip())
    raise GameDocumentError(f"not a decimal or p/q number: {value!r}")


def game_from_document(doc: dict) -> WeightedGame:
    if not isinstance(doc, dict) or "quota" not in doc:
        raise GameDocumentError("game document needs a 'quota'")
    has_w, has_c = "weights" in doc, "classes" in doc
    if has_w == has_c:
        raise GameDocumentError("give exactly one of 'weights' or 'classes'")
    quota = parse_number(doc["quota"])
    try:
        if has_w:
            return game_from_weights(quota, [parse_number(w) for w in doc["weights"]])
        classes = []
        for entry in doc["classes"]:
            if not isinstance(entry, (list, tuple)) or len(entry) != 2:
                raise GameDocumentError(f"class entries are [weight, count], got {entry!r}")
            count = entry[1]
            if isinstance(count, bool) or not isinstance(count, int):
                raise GameDocumentError(f"class count must be an integer, got {count!r}")
            classes.append((parse_number(entry[0]), count))
        return make_game(quota, classes)
    except GameDocumentError:
        raise
    except (ValueError, TypeError) as exc:
        raise GameDocumentError(str(exc)) from exc


def game_to_document(game: WeightedGame) -> dict:
    return {
        "quota": str(game.quota),
        "classes": [[str(w), c] for w, c in game.classes],
    }


def loads(text: str) -> WeightedGame:
    try:
        doc = json.loads(text, parse_float=Decimal)
    except json.JSONDecodeError as exc:
        raise GameDocumentError(f"invalid JSON: {exc}") from exc
    return game_from_document(doc)


def load(path) -> WeightedGame:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise GameDocumentError(f"cannot read {path}: {exc}") from exc
    return loads(text)
