"""Chessboard model for semiorthogonal mutations on the divisor M.

A board is a finite sequence of boxes; the sequence order is the
semiorthogonal order (SOD order) and each box carries a lattice position
(x, y) recording the bidegree twist of the object it stands for, together
with a content: a symmetric-power block ``SymBlock(m)`` worth m+1 copies
of the generator count, or an ``Opaque`` marker for material that no
longer participates in moves and may be slid past freely.

Every move is a pure function Board -> (Board, MoveRecord).  Moves either
apply (returning the mutated board and a replayable record) or raise
:class:`MoveRefused`; total copy count is asserted invariant across every
move.  The mutation moves (transpose / absorb / rule1 / rule2) optionally
consult the Ext oracle on M and refuse when a required vanishing fails or
comes back indeterminate; the shape-based refusals (e.g. transposing a
pair that pairs nontrivially) are enforced even with validation off, so a
validated and an unvalidated run agree move for move.
"""

from __future__ import annotations

from dataclasses import dataclass

from .oracle import ext_on_M
from .schur import INDETERMINATE, BundleDescriptor
from .weights import GradedDims


@dataclass(frozen=True)
class SymBlock:
    """Block standing for the m-th symmetric power of the rank-2 dual; m+1 copies."""

    m: int

    def __post_init__(self) -> None:
        if self.m < 0:
            raise ValueError("block grade must be >= 0")

    @property
    def copies(self) -> int:
        return self.m + 1


@dataclass(frozen=True)
class Opaque:
    """Inert content: keeps its copy count but never moves or pairs again."""

    copies: int = 1


Content = SymBlock | Opaque


@dataclass(frozen=True)
class Box:
    x: int
    y: int
    content: Content

    @property
    def pos(self) -> tuple[int, int]:
        return (self.x, self.y)

    @property
    def copies(self) -> int:
        return self.content.copies

    @property
    def opaque(self) -> bool:
        return isinstance(self.content, Opaque)


@dataclass(frozen=True)
class Board:
    """Boxes in SOD order on the (x, y) twist lattice for M inside F(1,2,N)."""

    n: int
    eps: int
    boxes: tuple[Box, ...]
    mode: str = "fibration"

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError(f"need n >= 2, got {self.n}")
        if self.eps not in (0, 1):
            raise ValueError(f"eps must be 0 or 1, got {self.eps}")
        seen = set()
        for b in self.boxes:
            if b.pos in seen:
                raise ValueError(f"duplicate box position {b.pos}")
            seen.add(b.pos)

    @property
    def N(self) -> int:
        return 2 * self.n + self.eps

    @property
    def copies(self) -> int:
        return sum(b.copies for b in self.boxes)

    def at(self, pos: tuple[int, int]) -> Box | None:
        for b in self.boxes:
            if b.pos == pos:
                return b
        return None

    def index(self, pos: tuple[int, int]) -> int:
        for i, b in enumerate(self.boxes):
            if b.pos == pos:
                return i
        raise KeyError(pos)


@dataclass(frozen=True)
class OracleCheck:
    """One Ext_M requirement issued while validating a move."""

    source: tuple[int, int, int]  # (m, x, y)
    target: tuple[int, int, int]
    space: str
    expected: tuple[tuple[int, int], ...]
    got: tuple[tuple[int, int], ...] | str

    @property
    def ok(self) -> bool:
        return self.got == self.expected


Params = tuple[tuple[str, int | str | bool], ...]


@dataclass(frozen=True)
class MoveRecord:
    kind: str
    positions: tuple[tuple[int, int], ...]
    params: Params
    oracle: tuple[OracleCheck, ...]
    verdict: str
    copies_before: int
    copies_after: int


def log_signature(record: MoveRecord) -> tuple:
    """Everything about a move except its oracle transcript."""
    return (record.kind, record.positions, record.params,
            record.copies_before, record.copies_after)


class MoveRefused(RuntimeError):
    """A move whose preconditions (shape, bounds, or oracle) fail."""

    def __init__(self, kind: str, reason: str, check: OracleCheck | None = None):
        super().__init__(f"{kind}: {reason}")
        self.kind = kind
        self.reason = reason
        self.check = check


def _graded_key(g: GradedDims) -> tuple[tuple[int, int], ...]:
    return tuple(sorted(g.items()))


def _run_oracle(kind: str, board: Board,
                wanted: list[tuple[BundleDescriptor, BundleDescriptor, GradedDims]],
                ) -> tuple[OracleCheck, ...]:
    checks = []
    for source, target, expected in wanted:
        got = ext_on_M(source, target)
        shown = "indeterminate" if got is INDETERMINATE else _graded_key(got)
        check = OracleCheck((source.m, source.x, source.y),
                            (target.m, target.x, target.y),
                            "M", _graded_key(expected), shown)
        checks.append(check)
        if got is INDETERMINATE:
            raise MoveRefused(kind, f"oracle indeterminate for {check.source} vs {check.target}", check)
        if not check.ok:
            raise MoveRefused(
                kind,
                f"oracle expected {check.expected} but got {check.got} "
                f"for {check.source} vs {check.target}", check)
    return tuple(checks)


def _commit(board: Board, new_boxes: list[Box], kind: str,
            positions: tuple[tuple[int, int], ...], params: Params,
            oracle: tuple[OracleCheck, ...] = ()) -> tuple[Board, MoveRecord]:
    new_board = Board(board.n, board.eps, tuple(new_boxes), board.mode)
    assert new_board.copies == board.copies, f"{kind} broke copy conservation"
    record = MoveRecord(kind, positions, params, oracle, "applied",
                        board.copies, new_board.copies)
    return new_board, record


def _get(board: Board, pos: tuple[int, int], kind: str) -> Box:
    box = board.at(pos)
    if box is None:
        raise MoveRefused(kind, f"no box at {pos}")
    return box


def _sym(box: Box, kind: str, role: str) -> SymBlock:
    if not isinstance(box.content, SymBlock):
        raise MoveRefused(kind, f"{role} at {box.pos} is opaque")
    return box.content


def move_serre_translate(board: Board, y: int, direction: str, steps: int,
                         ) -> tuple[Board, MoveRecord]:
    """Rotate one row: each step wraps the row's outermost box by a full N-twist.

    A left step sends the rightmost box of the row to the row front at x - N;
    a right step sends the leftmost to the row end at x + N.  N steps return
    the row to its SOD arrangement shifted bodily by one period.
    """
    kind = "serre_translate"
    if direction not in ("left", "right"):
        raise MoveRefused(kind, f"unknown direction {direction!r}")
    if steps < 0:
        raise MoveRefused(kind, "steps must be >= 0")
    slots = [i for i, b in enumerate(board.boxes) if b.y == y]
    if not slots:
        raise MoveRefused(kind, f"no boxes in row y={y}")
    row = [board.boxes[i] for i in slots]
    N = board.N
    for _ in range(steps):
        if direction == "left":
            j = max(range(len(row)), key=lambda i: row[i].x)
            moved = Box(row[j].x - N, y, row[j].content)
            row = [moved] + row[:j] + row[j + 1:]
        else:
            j = min(range(len(row)), key=lambda i: row[i].x)
            moved = Box(row[j].x + N, y, row[j].content)
            row = row[:j] + row[j + 1:] + [moved]
    new_boxes = list(board.boxes)
    for slot, box in zip(slots, row):
        new_boxes[slot] = box
    return _commit(board, new_boxes, kind, (),
                   (("y", y), ("direction", direction), ("steps", steps)))


def move_serre_global(board: Board, k: int, direction: str) -> tuple[Board, MoveRecord]:
    """Rotate the whole SOD: k boxes cross the end, twisting by the canonical class.

    front_to_back moves the first k boxes to the end at (x+1, y+N-2);
    back_to_front moves the last k to the front at (x-1, y-(N-2)).
    """
    kind = "serre_global"
    if direction not in ("front_to_back", "back_to_front"):
        raise MoveRefused(kind, f"unknown direction {direction!r}")
    if not 0 <= k <= len(board.boxes):
        raise MoveRefused(kind, f"cannot rotate {k} of {len(board.boxes)} boxes")
    dy = board.N - 2
    if direction == "front_to_back":
        moved = [Box(b.x + 1, b.y + dy, b.content) for b in board.boxes[:k]]
        new_boxes = list(board.boxes[k:]) + moved
    else:
        moved = [Box(b.x - 1, b.y - dy, b.content) for b in board.boxes[-k:] if k]
        new_boxes = moved + list(board.boxes[:len(board.boxes) - k])
    return _commit(board, new_boxes, kind, (), (("k", k), ("direction", direction)))


def move_global_twist(board: Board, dx: int, dy: int,
                      note: str | None = None) -> tuple[Board, MoveRecord]:
    """Twist every box by (dx, dy); pure relabeling of the lattice."""
    new_boxes = [Box(b.x + dx, b.y + dy, b.content) for b in board.boxes]
    params: Params = (("dx", dx), ("dy", dy))
    if note is not None:
        params += (("note", note),)
    return _commit(board, new_boxes, "global_twist", (), params)


def move_push_right(board: Board, pos: tuple[int, int], count: int,
                    opacify: bool) -> tuple[Board, MoveRecord]:
    """Move one box later in the SOD, past the next `count` boxes.

    With opacify the box is retired to an Opaque marker of equal copy count
    as it goes (the position is kept for the ledger of leftover material).
    """
    kind = "push_right"
    box = _get(board, pos, kind)
    i = board.index(pos)
    if count < 0 or i + count >= len(board.boxes):
        raise MoveRefused(kind, f"cannot push past {count} boxes from slot {i}")
    if opacify:
        box = Box(box.x, box.y, Opaque(box.copies))
    rest = list(board.boxes[:i]) + list(board.boxes[i + 1:])
    rest.insert(i + count, box)
    return _commit(board, rest, kind, (pos,),
                   (("count", count), ("opacify", opacify)))


def move_opacify_boxes(board: Board, positions: list[tuple[int, int]],
                       ) -> tuple[Board, MoveRecord]:
    """Retire the listed blocks in place, keeping their copy counts."""
    kind = "opacify_boxes"
    targets = set()
    for pos in positions:
        box = _get(board, pos, kind)
        _sym(box, kind, "box")
        targets.add(pos)
    new_boxes = [Box(b.x, b.y, Opaque(b.copies)) if b.pos in targets else b
                 for b in board.boxes]
    return _commit(board, new_boxes, kind, tuple(positions), ())


def move_gather_to_end(board: Board, positions: list[tuple[int, int]],
                       ) -> tuple[Board, MoveRecord]:
    """Slide the listed boxes (keeping their mutual order) to the SOD end.

    Legal only when every non-listed box they pass over is opaque: sliding
    past retired material never changes any pairing.
    """
    kind = "gather_to_end"
    idxs = sorted(board.index(pos) for pos in positions)
    if not idxs:
        raise MoveRefused(kind, "nothing to gather")
    listed = set(idxs)
    for j in range(idxs[0] + 1, len(board.boxes)):
        if j not in listed and not board.boxes[j].opaque:
            raise MoveRefused(
                kind, f"would cross live box at {board.boxes[j].pos}")
    new_boxes = [b for i, b in enumerate(board.boxes) if i not in listed]
    new_boxes += [board.boxes[i] for i in idxs]
    return _commit(board, new_boxes, kind, tuple(positions), ())


def _between(board: Board, i: int, j: int) -> list[Box]:
    """Non-opaque boxes strictly between SOD slots i and j."""
    return [b for b in board.boxes[i + 1:j] if not b.opaque]


def move_transpose(board: Board, left_pos: tuple[int, int],
                   right_pos: tuple[int, int], validate: bool = True,
                   ) -> tuple[Board, MoveRecord]:
    """Swap two SOD-adjacent blocks (opaques between are tolerated in place).

    Refused outright for a pairing-shaped pair -- a grade-0 block at relative
    twist (t, 0) against a grade t-1 block at (-1, 1) pairs nontrivially, so
    those two may never commute past each other.  With validation on, the
    actual vanishing Ext_M(left, right-relative) = 0 is checked as well.
    """
    kind = "transpose"
    left = _get(board, left_pos, kind)
    right = _get(board, right_pos, kind)
    lm = _sym(left, kind, "left box")
    rm = _sym(right, kind, "right box")
    i, j = board.index(left_pos), board.index(right_pos)
    if i >= j:
        raise MoveRefused(kind, "left box must precede right box in SOD order")
    if _between(board, i, j):
        raise MoveRefused(kind, "boxes are not SOD-adjacent")
    if lm.m == 0 and right.y - left.y == 1:
        t = left.x - right.x - 1
        if t >= 1 and rm.m == t - 1:
            raise MoveRefused(
                kind, f"pairing-shaped pair at relative twist ({t}, 0) vs (-1, 1)")
    oracle: tuple[OracleCheck, ...] = ()
    if validate:
        N = board.N
        oracle = _run_oracle(kind, board, [(
            BundleDescriptor(lm.m, 0, 0, N),
            BundleDescriptor(rm.m, right.x - left.x, right.y - left.y, N),
            {},
        )])
    new_boxes = list(board.boxes)
    new_boxes[i], new_boxes[j] = new_boxes[j], new_boxes[i]
    return _commit(board, new_boxes, kind, (left_pos, right_pos), (), oracle)


def move_absorb(board: Board, target_pos: tuple[int, int],
                source_pos: tuple[int, int], validate: bool = True,
                ) -> tuple[Board, MoveRecord]:
    """Merge a grade-0 block with the grade t-1 block t+1 steps down-left of it.

    The pair at relative twists (t, 0) and (-1, 1) pairs in exactly one
    degree; the merge replaces both by a single grade-t block at the
    common origin (source x + 1, source y - 1).
    """
    kind = "absorb"
    target = _get(board, target_pos, kind)
    source = _get(board, source_pos, kind)
    tc = _sym(target, kind, "target")
    sc = _sym(source, kind, "source")
    if tc.m != 0:
        raise MoveRefused(kind, "absorbing box must have grade 0")
    t = target.x - source.x - 1
    if source.y - target.y != 1 or t < 1:
        raise MoveRefused(
            kind, f"source must sit at relative twist (-1-t, 1); got offset "
                  f"({source.x - target.x}, {source.y - target.y})")
    if sc.m != t - 1:
        raise MoveRefused(kind, f"source grade must be {t - 1}, got {sc.m}")
    i, j = board.index(target_pos), board.index(source_pos)
    if i >= j:
        raise MoveRefused(kind, "target must precede source in SOD order")
    if _between(board, i, j):
        raise MoveRefused(kind, "boxes are not SOD-adjacent")
    landing = (source.x + 1, source.y - 1)
    if board.at(landing) is not None:
        raise MoveRefused(kind, f"landing position {landing} is occupied")
    oracle: tuple[OracleCheck, ...] = ()
    if validate:
        N = board.N
        oracle = _run_oracle(kind, board, [(
            BundleDescriptor(0, t, 0, N),
            BundleDescriptor(t - 1, -1, 1, N),
            {1: 1},
        )])
    new_boxes = list(board.boxes)
    new_boxes[i] = Box(landing[0], landing[1], SymBlock(t))
    del new_boxes[j]
    return _commit(board, new_boxes, kind, (target_pos, source_pos), (), oracle)


def _rule_oracle(N: int, grades: range, span: int) -> list:
    """The transpose/absorb Ext requirements shared by the window rules.

    For each piece grade m the mover commutes past the window zeros at
    relative twists (m+2, 0) .. (span, 0) and then pairs with the zero at
    (m+1, 0) in a single degree.
    """
    wanted = []
    for m in grades:
        for tp in range(m + 2, span + 1):
            wanted.append((BundleDescriptor(0, tp, 0, N),
                           BundleDescriptor(m, -1, 1, N), {}))
        wanted.append((BundleDescriptor(0, m + 1, 0, N),
                       BundleDescriptor(m, -1, 1, N), {1: 1}))
    return wanted


def move_rule1(board: Board, gray_pos: tuple[int, int],
               block_pos: tuple[int, int], validate: bool = True,
               ) -> tuple[Board, MoveRecord]:
    """Feed a grade r-1 block into the zero heading a row of l zeros.

    Window (in SOD order, opaques skipped): a grade-0 box at (X, Y), then l
    zeros at (X+1, Y) .. (X+l, Y), then the moving block at (X-1, Y+1).
    Requires 1 <= r <= n-1 and r <= l <= 2n-3+eps.  The head zero becomes a
    grade-r block, the mover disappears, and the row of zeros survives.
    """
    kind = "rule1"
    gray = _get(board, gray_pos, kind)
    mover = _get(board, block_pos, kind)
    gc = _sym(gray, kind, "head")
    mc = _sym(mover, kind, "mover")
    if gc.m != 0:
        raise MoveRefused(kind, "head box must have grade 0")
    if block_pos != (gray.x - 1, gray.y + 1):
        raise MoveRefused(
            kind, f"mover must sit at ({gray.x - 1}, {gray.y + 1}), got {block_pos}")
    r = mc.m + 1
    i, j = board.index(gray_pos), board.index(block_pos)
    if i >= j:
        raise MoveRefused(kind, "head must precede mover in SOD order")
    window = _between(board, i, j)
    for k, b in enumerate(window):
        if not (isinstance(b.content, SymBlock) and b.content.m == 0
                and b.pos == (gray.x + 1 + k, gray.y)):
            raise MoveRefused(
                kind, f"window box at {b.pos} is not the expected zero at "
                      f"({gray.x + 1 + k}, {gray.y})")
    l = len(window)
    n, eps = board.n, board.eps
    if not 1 <= r <= n - 1:
        raise MoveRefused(kind, f"grade bound 1 <= r <= n-1 fails for r={r}")
    if not r <= l <= 2 * n - 3 + eps:
        raise MoveRefused(kind, f"window bound r <= l <= 2n-3+eps fails for r={r}, l={l}")
    oracle: tuple[OracleCheck, ...] = ()
    if validate:
        N = board.N
        wanted = _rule_oracle(N, range(r), l)
        for m in range(r):
            for back in range(1, m + 1):
                wanted.append((BundleDescriptor(0, back, 0, N),
                               BundleDescriptor(m + 1, 0, 0, N), {}))
        oracle = _run_oracle(kind, board, wanted)
    new_boxes = list(board.boxes)
    new_boxes[i] = Box(gray.x, gray.y, SymBlock(r))
    del new_boxes[j]
    return _commit(board, new_boxes, kind, (gray_pos, block_pos), (), oracle)


def move_rule2(board: Board, zeros_start: tuple[int, int],
               block_pos: tuple[int, int], t: int, r: int, validate: bool = True,
               ) -> tuple[Board, MoveRecord]:
    """Split a grade r-1 block across a row of t+1 zeros.

    Window (SOD order, opaques skipped): zeros at (zx, zy) .. (zx+t, zy),
    then the block at (zx-1, zy+1).  Requires r+1 <= t <= n-2, or the
    boundary case r = t+1 with t <= n-1 where every zero is consumed.  The
    block keeps its position and moves to the window front, a fresh grade
    r-1 block appears at (zx, zy), and the first r zeros are consumed.
    """
    kind = "rule2"
    zx, zy = zeros_start
    block = _get(board, block_pos, kind)
    bc = _sym(block, kind, "block")
    if block_pos != (zx - 1, zy + 1):
        raise MoveRefused(
            kind, f"block must sit at ({zx - 1}, {zy + 1}), got {block_pos}")
    if r < 1 or bc.m != r - 1:
        raise MoveRefused(kind, f"block grade must be {r - 1}, got {bc.m}")
    n = board.n
    boundary = r == t + 1
    if not ((r + 1 <= t <= n - 2) or (boundary and 0 <= t <= n - 1)):
        raise MoveRefused(kind, f"bounds fail for t={t}, r={r}")
    i = board.index(zeros_start)
    j = board.index(block_pos)
    if i >= j:
        raise MoveRefused(kind, "zeros must precede the block in SOD order")
    first = board.boxes[i]
    window = [first] + _between(board, i, j)
    if len(window) != t + 1:
        raise MoveRefused(
            kind, f"expected {t + 1} zeros before the block, found {len(window)}")
    for k, b in enumerate(window):
        if not (isinstance(b.content, SymBlock) and b.content.m == 0
                and b.pos == (zx + k, zy)):
            raise MoveRefused(
                kind, f"window box at {b.pos} is not the expected zero at "
                      f"({zx + k}, {zy})")
    oracle: tuple[OracleCheck, ...] = ()
    if validate:
        oracle = _run_oracle(kind, board, _rule_oracle(board.N, range(r - 1), t))
    consumed = min(r, t + 1)
    survivors = window[consumed:]
    replacement = [block, Box(zx, zy, SymBlock(r - 1))] + survivors
    new_boxes = []
    queue = list(replacement)
    for idx, b in enumerate(board.boxes):
        if idx < i or idx > j:
            new_boxes.append(b)
        elif b.opaque:
            new_boxes.append(b)
        elif queue:
            new_boxes.append(queue.pop(0))
    assert not queue, "rule2 window bookkeeping failed"
    return _commit(board, new_boxes, kind, (zeros_start, block_pos),
                   (("t", t), ("r", r)), oracle)


def move_orange_merge(board: Board, orange_pos: tuple[int, int],
                      target_pos: tuple[int, int]) -> tuple[Board, MoveRecord]:
    """Scripted finale: the reserved zero joins the grade n-2 block at the target.

    No oracle backs this step; it is forced by the copy count of the final
    arrangement rather than by a pairing computation.
    """
    kind = "orange_merge"
    orange = _get(board, orange_pos, kind)
    target = _get(board, target_pos, kind)
    oc = _sym(orange, kind, "orange")
    tc = _sym(target, kind, "target")
    n = board.n
    if oc.m != 0:
        raise MoveRefused(kind, "orange box must have grade 0")
    if tc.m != n - 2:
        raise MoveRefused(kind, f"target grade must be {n - 2}, got {tc.m}")
    new_boxes = [b for b in board.boxes if b.pos != orange_pos]
    k = next(idx for idx, b in enumerate(new_boxes) if b.pos == target_pos)
    new_boxes[k] = Box(target.x, target.y, SymBlock(n - 1))
    return _commit(board, new_boxes, kind, (orange_pos, target_pos), ())


def apply_record(board: Board, record: MoveRecord) -> Board:
    """Re-apply a logged move (validation off) and check the log signature."""
    params = dict(record.params)
    kind = record.kind
    if kind == "serre_translate":
        new_board, rec = move_serre_translate(
            board, params["y"], params["direction"], params["steps"])
    elif kind == "serre_global":
        new_board, rec = move_serre_global(board, params["k"], params["direction"])
    elif kind == "global_twist":
        new_board, rec = move_global_twist(
            board, params["dx"], params["dy"], params.get("note"))
    elif kind == "push_right":
        new_board, rec = move_push_right(
            board, record.positions[0], params["count"], params["opacify"])
    elif kind == "opacify_boxes":
        new_board, rec = move_opacify_boxes(board, list(record.positions))
    elif kind == "gather_to_end":
        new_board, rec = move_gather_to_end(board, list(record.positions))
    elif kind == "transpose":
        new_board, rec = move_transpose(board, *record.positions, validate=False)
    elif kind == "absorb":
        new_board, rec = move_absorb(board, *record.positions, validate=False)
    elif kind == "rule1":
        new_board, rec = move_rule1(board, *record.positions, validate=False)
    elif kind == "rule2":
        new_board, rec = move_rule2(board, *record.positions,
                                    t=params["t"], r=params["r"], validate=False)
    elif kind == "orange_merge":
        new_board, rec = move_orange_merge(board, *record.positions)
    else:
        raise ValueError(f"unknown move kind {kind!r}")
    if log_signature(rec) != log_signature(record):
        raise ValueError(f"replayed {kind} diverged from its record")
    return new_board
