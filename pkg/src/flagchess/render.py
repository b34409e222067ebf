"""Rendering and serialization for boards and game results.

All emitters are deterministic down to the byte: no set iteration, JSON with
fixed separators and explicitly ordered keys, graded dimensions as sorted
``[degree, dim]`` pairs.  ``parse_game_result`` inverts
``game_result_to_json`` exactly.
"""

from __future__ import annotations

import json
from typing import Any, Iterable

from .board import Board, Box, MoveRecord, Opaque, OracleCheck, SymBlock
from .games import GameResult
from .schur import INDETERMINATE, _Indeterminate
from .weights import GradedDims

SCHEMA_VERSION = 1


def dumps(obj: Any) -> str:
    return json.dumps(obj, separators=(",", ":"))


def graded_to_json(g: GradedDims | _Indeterminate) -> list[list[int]] | str:
    if g is INDETERMINATE:
        return "indeterminate"
    assert isinstance(g, dict)
    return [[k, v] for k, v in sorted(g.items())]


def _cell(box: Box | None) -> str:
    if box is None:
        return ""
    if isinstance(box.content, Opaque):
        return "x"
    return str(box.content.m)


def render_ascii(board: Board) -> str:
    """Plain-text grid over the bounding rectangle, rows by ascending y.

    Cells show the block grade, ``x`` for opaque material, and blank for
    empty lattice points; the origin cell is bracketed.
    """
    if not board.boxes:
        return ""
    by_pos = {b.pos: b for b in board.boxes}
    xs = [b.x for b in board.boxes]
    ys = [b.y for b in board.boxes]
    x_lo, x_hi = min(xs + [0]), max(xs + [0])
    y_lo, y_hi = min(ys + [0]), max(ys + [0])
    cells: dict[tuple[int, int], str] = {}
    for y in range(y_lo, y_hi + 1):
        for x in range(x_lo, x_hi + 1):
            text = _cell(by_pos.get((x, y)))
            if (x, y) == (0, 0):
                text = f"[{text or '·'}]"
            cells[(x, y)] = text
    width = max(len(t) for t in cells.values())
    lines = [f"x: {x_lo}..{x_hi}"]
    for y in range(y_lo, y_hi + 1):
        row = " ".join(cells[(x, y)].rjust(width) for x in range(x_lo, x_hi + 1))
        lines.append(f"y={y:>3} | {row.rstrip()}")
    return "\n".join(lines)


def render_latex(board: Board) -> str:
    """ytableau-style source for the board, rows by ascending y."""
    if not board.boxes:
        return "\\begin{ytableau}\n\\end{ytableau}"
    by_pos = {b.pos: b for b in board.boxes}
    xs = [b.x for b in board.boxes]
    ys = [b.y for b in board.boxes]
    x_lo, x_hi = min(xs + [0]), max(xs + [0])
    y_lo, y_hi = min(ys + [0]), max(ys + [0])
    lines = []
    for y in range(y_lo, y_hi + 1):
        row = []
        for x in range(x_lo, x_hi + 1):
            box = by_pos.get((x, y))
            if box is None:
                cell = "*(lightgray) \\none" if (x, y) == (0, 0) else "\\none"
            else:
                body = "\\times" if isinstance(box.content, Opaque) else str(box.content.m)
                cell = f"*(lightgray) {body}" if (x, y) == (0, 0) else body
            row.append(cell)
        lines.append(" & ".join(row) + " \\\\")
    return "\\begin{ytableau}\n" + "\n".join(lines) + "\n\\end{ytableau}"


def box_to_dict(box: Box) -> dict:
    if isinstance(box.content, Opaque):
        content = {"kind": "opaque", "copies": box.content.copies}
    else:
        content = {"kind": "sym", "m": box.content.m}
    return {"x": box.x, "y": box.y, "content": content}


def _box_from_dict(d: dict) -> Box:
    c = d["content"]
    content: SymBlock | Opaque
    if c["kind"] == "opaque":
        content = Opaque(c["copies"])
    elif c["kind"] == "sym":
        content = SymBlock(c["m"])
    else:
        raise ValueError(f"unknown content kind {c['kind']!r}")
    return Box(d["x"], d["y"], content)


def board_to_dict(board: Board) -> dict:
    return {"boxes": [box_to_dict(b) for b in board.boxes], "copies": board.copies}


def _check_to_dict(check: OracleCheck) -> dict:
    got: Any = check.got if isinstance(check.got, str) else [list(p) for p in check.got]
    return {
        "source": list(check.source),
        "target": list(check.target),
        "space": check.space,
        "expected": [list(p) for p in check.expected],
        "got": got,
        "ok": check.ok,
    }


def _check_from_dict(d: dict) -> OracleCheck:
    got = d["got"] if isinstance(d["got"], str) else tuple(tuple(p) for p in d["got"])
    return OracleCheck(tuple(d["source"]), tuple(d["target"]), d["space"],
                       tuple(tuple(p) for p in d["expected"]), got)


def move_to_dict(record: MoveRecord) -> dict:
    return {
        "kind": record.kind,
        "positions": [list(p) for p in record.positions],
        "params": dict(record.params),
        "oracle": [_check_to_dict(c) for c in record.oracle],
        "verdict": record.verdict,
        "copies_before": record.copies_before,
        "copies_after": record.copies_after,
    }


def _move_from_dict(d: dict) -> MoveRecord:
    return MoveRecord(
        d["kind"],
        tuple(tuple(p) for p in d["positions"]),
        tuple(d["params"].items()),
        tuple(_check_from_dict(c) for c in d["oracle"]),
        d["verdict"],
        d["copies_before"],
        d["copies_after"],
    )


def game_result_to_dict(result: GameResult) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "params": {"n": result.n, "eps": result.eps, "mode": result.mode},
        "initial": board_to_dict(result.initial),
        "moves": [move_to_dict(r) for r in result.log],
        "final": board_to_dict(result.final),
        "gr2": {"found": result.gr2_found,
                "boxes": [box_to_dict(b) for b in result.gr2_boxes]},
        "residual_f_count": result.residual_f_count,
        "flags": list(result.flags),
    }


def game_result_to_json(result: GameResult) -> str:
    return dumps(game_result_to_dict(result))


def parse_game_result(text: str) -> GameResult:
    """Exact inverse of :func:`game_result_to_json`."""
    d = json.loads(text)
    if d["schema_version"] != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema version {d['schema_version']}")
    n, eps, mode = d["params"]["n"], d["params"]["eps"], d["params"]["mode"]
    initial = Board(n, eps, tuple(_box_from_dict(b) for b in d["initial"]["boxes"]), mode)
    final = Board(n, eps, tuple(_box_from_dict(b) for b in d["final"]["boxes"]), mode)
    gr2_boxes = tuple(_box_from_dict(b) for b in d["gr2"]["boxes"])
    matched = {b.pos for b in gr2_boxes}
    residual = tuple(b for b in final.boxes if b.pos not in matched)
    return GameResult(
        n, eps, mode, initial, final,
        tuple(_move_from_dict(m) for m in d["moves"]),
        d["gr2"]["found"], gr2_boxes, residual,
        d["residual_f_count"], tuple(d["flags"]),
    )


def emit_json_lines(result: GameResult,
                    phases: Iterable[tuple[str, Board, int]] = ()) -> list[str]:
    """Streaming form: header, initial, each move (with phase snapshots
    interleaved at the move counts where they were taken), then final,
    column, and summary records."""
    phase_at: dict[int, list[tuple[str, Board]]] = {}
    for name, board, count in phases:
        if name in ("initial", "final"):
            continue
        phase_at.setdefault(count, []).append((name, board))
    lines = [dumps({"record": "header", "schema_version": SCHEMA_VERSION,
                    "params": {"n": result.n, "eps": result.eps, "mode": result.mode}}),
             dumps({"record": "initial", "board": board_to_dict(result.initial)})]
    for i, record in enumerate(result.log):
        for name, board in phase_at.get(i, []):
            lines.append(dumps({"record": "phase", "name": name,
                                "board": board_to_dict(board)}))
        lines.append(dumps({"record": "move", "index": i, **move_to_dict(record)}))
    for name, board in phase_at.get(len(result.log), []):
        lines.append(dumps({"record": "phase", "name": name,
                            "board": board_to_dict(board)}))
    lines.append(dumps({"record": "final", "board": board_to_dict(result.final)}))
    lines.append(dumps({"record": "gr2", "found": result.gr2_found,
                        "boxes": [box_to_dict(b) for b in result.gr2_boxes]}))
    lines.append(dumps({"record": "summary",
                        "residual_f_count": result.residual_f_count,
                        "flags": list(result.flags)}))
    return lines
