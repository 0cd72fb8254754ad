"""Game files: JSON documents with ``format_version: 1``.

Rationals are written as ``"p/q"`` strings (``"3"`` for integers) so values
survive a round trip exactly; parsing also accepts JSON integers.  Structure
is checked against :data:`SCHEMA` and backend invariants by the game
constructors.  See ``docs/formats.md`` for the full grammar.
"""

from __future__ import annotations

import json
from fractions import Fraction

import jsonschema

from .errors import GameError, ValidationError
from .game import (
    MAX_PLAYERS,
    ExplicitGame,
    Game,
    HypergraphGame,
    InducedSubgraphGame,
    MwcListGame,
    WeightedVotingGame,
    members,
    to_rational,
)

FORMAT_VERSION = 1

_rational = {
    "oneOf": [
        {"type": "integer"},
        {"type": "string", "pattern": r"^\s*-?\d+(\s*/\s*\d+)?\s*$"},
    ]
}
_player = {"type": "integer", "minimum": 0, "maximum": MAX_PLAYERS - 1}
_players = {"type": "array", "items": _player}
_n = {"type": "integer", "minimum": 1, "maximum": MAX_PLAYERS}


def _variant(tag: str, props: dict, required: list[str]) -> dict:
    return {
        "if": {"properties": {"type": {"const": tag}}},
        "then": {
            "properties": {"format_version": {}, "type": {}, "n": {}, **props},
            "required": ["n", *required],
            "additionalProperties": False,
        },
    }


SCHEMA = {
    "type": "object",
    "required": ["format_version", "type"],
    "properties": {
        "format_version": {"const": FORMAT_VERSION},
        "type": {"enum": ["wvg", "isg", "hypergraph", "mwc", "explicit"]},
        "n": _n,
    },
    "allOf": [
        _variant(
            "wvg",
            {"weights": {"type": "array", "items": {"type": "integer"}}, "quota": {"type": "integer"}},
            ["weights", "quota"],
        ),
        _variant(
            "isg",
            {
                "edges": {
                    "type": "array",
                    "items": {"type": "array", "prefixItems": [_player, _player, _rational], "minItems": 3, "maxItems": 3},
                }
            },
            ["edges"],
        ),
        _variant(
            "hypergraph",
            {
                "hyperedges": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "properties": {"members": _players, "weight": _rational},
                        "required": ["members", "weight"],
                        "additionalProperties": False,
                    },
                }
            },
            ["hyperedges"],
        ),
        _variant("mwc", {"mwcs": {"type": "array", "items": _players}}, ["mwcs"]),
        _variant("explicit", {"values": {"type": "array", "items": _rational}}, ["values"]),
    ],
}

_validator = jsonschema.Draft202012Validator(SCHEMA)


class GameFileError(ValidationError):
    """A game document is malformed; ``location`` points at the offending part."""

    def __init__(self, message: str, location: str = "$"):
        self.location = location
        super().__init__(f"{location}: {message}")


def format_rational(x) -> str:
    return str(Fraction(x))


def parse_game(text: str) -> Game:
    """Parse a game document; raises :class:`GameFileError` or ``ValidationError``."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GameFileError(exc.msg, f"line {exc.lineno}, column {exc.colno}") from exc
    return game_from_document(doc)


def game_from_document(doc) -> Game:
    error = jsonschema.exceptions.best_match(_validator.iter_errors(doc))
    if error is not None:
        raise GameFileError(error.message, error.json_path)
    kind = doc["type"]
    n = doc["n"]
    try:
        if kind == "wvg":
            g = WeightedVotingGame(doc["weights"], doc["quota"])
            if g.n != n:
                raise GameFileError(f"n = {n} but {g.n} weights given", "$.weights")
            return g
        if kind == "isg":
            return InducedSubgraphGame(n, [(i, j, to_rational(w)) for i, j, w in doc["edges"]])
        if kind == "hypergraph":
            return HypergraphGame(n, [(e["members"], to_rational(e["weight"])) for e in doc["hyperedges"]])
        if kind == "mwc":
            return MwcListGame(n, doc["mwcs"])
        return ExplicitGame(n, [to_rational(x) for x in doc["values"]])
    except GameFileError:
        raise
    except GameError as exc:
        raise ValidationError(f"invalid {kind} game: {exc}") from exc


def game_to_document(g: Game) -> dict:
    doc: dict = {"format_version": FORMAT_VERSION}
    if isinstance(g, WeightedVotingGame):
        doc.update(type="wvg", n=g.n, weights=list(g.weights), quota=g.quota)
    elif isinstance(g, InducedSubgraphGame):
        doc.update(type="isg", n=g.n, edges=[[i, j, format_rational(w)] for (i, j), w in g.edges.items()])
    elif isinstance(g, HypergraphGame):
        doc.update(
            type="hypergraph",
            n=g.n,
            hyperedges=[{"members": members(e), "weight": format_rational(w)} for e, w in g.hyperedges],
        )
    elif isinstance(g, MwcListGame):
        doc.update(type="mwc", n=g.n, mwcs=[members(m) for m in g.mwcs])
    elif isinstance(g, ExplicitGame):
        doc.update(type="explicit", n=g.n, values=[format_rational(x) for x in g.values])
    else:
        raise ValidationError(f"cannot serialise a {type(g).__name__}")
    return doc


def serialize_game(g: Game) -> str:
    return json.dumps(game_to_document(g), indent=2) + "\n"


def load_game(path) -> Game:
    with open(path, encoding="utf-8") as fh:
        return parse_game(fh.read())


def save_game(g: Game, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_game(g))
