"""Move engine: shape checks, oracle gating, conservation, and replay."""
from __future__ import annotations

import pytest

from flagchess import (
    Board,
    Box,
    MoveRecord,
    MoveRefused,
    Opaque,
    SymBlock,
    apply_record,
    log_signature,
    move_absorb,
    move_gather_to_end,
    move_global_twist,
    move_opacify_boxes,
    move_orange_merge,
    move_push_right,
    move_rule1,
    move_rule2,
    move_serre_global,
    move_serre_translate,
    move_transpose,
)


def board_of(n, eps, *cells) -> Board:
    """Cells in SOD order: (x, y, m) for a block, (x, y, 'x') for opaque."""
    boxes = tuple(
        Box(x, y, Opaque() if m == "x" else SymBlock(m)) for x, y, m in cells
    )
    return Board(n, eps, boxes)


class TestContentTypes:
    def test_copy_counts(self):
        assert SymBlock(0).copies == 1
        assert SymBlock(4).copies == 5
        assert Opaque().copies == 1
        assert Opaque(7).copies == 7

    def test_negative_grade_rejected(self):
        with pytest.raises(ValueError):
            SymBlock(-1)

    def test_box_views(self):
        b = Box(2, -1, SymBlock(3))
        assert b.pos == (2, -1)
        assert b.copies == 4
        assert not b.opaque
        assert Box(0, 0, Opaque()).opaque


class TestBoard:
    def test_lattice_and_lookup(self):
        b = board_of(2, 1, (0, 1, 0), (1, 1, 2), (2, 1, "x"))
        assert b.N == 5
        assert b.copies == 1 + 3 + 1
        assert b.at((1, 1)).content == SymBlock(2)
        assert b.at((9, 9)) is None
        assert b.index((2, 1)) == 2
        with pytest.raises(KeyError):
            b.index((9, 9))

    def test_validation(self):
        with pytest.raises(ValueError):
            Board(1, 0, ())
        with pytest.raises(ValueError):
            Board(2, 2, ())
        with pytest.raises(ValueError):
            board_of(2, 0, (0, 0, 0), (0, 0, 1))


class TestSerreTranslate:
    def row(self):
        return board_of(2, 1, *[(x, 1, 0) for x in range(5)], (0, 2, 1))

    def test_one_left_step_wraps_the_rightmost(self):
        new, rec = move_serre_translate(self.row(), 1, "left", 1)
        row = [b.pos for b in new.boxes if b.y == 1]
        assert row == [(-1, 1), (0, 1), (1, 1), (2, 1), (3, 1)]
        assert new.at((0, 2)).content == SymBlock(1)  # other rows untouched
        assert rec.params == (("y", 1), ("direction", "left"), ("steps", 1))

    def test_full_period_is_a_bodily_shift(self):
        new, _ = move_serre_translate(self.row(), 1, "left", 5)
        row = [b.pos for b in new.boxes if b.y == 1]
        assert row == [(x - 5, 1) for x in range(5)]

    def test_right_inverts_left(self):
        board = self.row()
        stepped, _ = move_serre_translate(board, 1, "left", 3)
        back, _ = move_serre_translate(stepped, 1, "right", 3)
        assert back.boxes == board.boxes

    def test_refusals(self):
        with pytest.raises(MoveRefused):
            move_serre_translate(self.row(), 1, "sideways", 1)
        with pytest.raises(MoveRefused):
            move_serre_translate(self.row(), 1, "left", -1)
        with pytest.raises(MoveRefused):
            move_serre_translate(self.row(), 7, "left", 1)


class TestSerreGlobal:
    def test_front_to_back_twist(self):
        board = board_of(2, 1, (0, 1, 0), (1, 1, 1), (2, 1, 0))
        new, _ = move_serre_global(board, 2, "front_to_back")
        assert [b.pos for b in new.boxes] == [(2, 1), (1, 4), (2, 4)]
        assert new.boxes[1].content == SymBlock(0)
        assert new.boxes[2].content == SymBlock(1)

    def test_round_trip(self):
        board = board_of(2, 0, (0, 1, 0), (1, 1, 2), (2, 1, 0))
        there, _ = move_serre_global(board, 2, "front_to_back")
        back, _ = move_serre_global(there, 2, "back_to_front")
        assert back.boxes == board.boxes

    def test_refusals(self):
        board = board_of(2, 0, (0, 1, 0))
        with pytest.raises(MoveRefused):
            move_serre_global(board, 2, "front_to_back")
        with pytest.raises(MoveRefused):
            move_serre_global(board, 1, "around")


class TestGlobalTwist:
    def test_shifts_every_box(self):
        board = board_of(2, 0, (0, 1, 0), (3, 2, 1))
        new, rec = move_global_twist(board, -1, 2, note="lineup")
        assert [b.pos for b in new.boxes] == [(-1, 3), (2, 4)]
        assert rec.params == (("dx", -1), ("dy", 2), ("note", "lineup"))

    def test_note_is_optional(self):
        board = board_of(2, 0, (0, 1, 0))
        _, rec = move_global_twist(board, 1, 0)
        assert rec.params == (("dx", 1), ("dy", 0))


class TestPushRight:
    def test_reorders_the_sod(self):
        board = board_of(2, 0, (0, 0, 0), (1, 0, 0), (2, 0, 0), (3, 0, 0))
        new, _ = move_push_right(board, (0, 0), 2, opacify=False)
        assert [b.pos for b in new.boxes] == [(1, 0), (2, 0), (0, 0), (3, 0)]

    def test_opacify_preserves_copies(self):
        board = board_of(2, 0, (0, 0, 2), (1, 0, 0))
        new, _ = move_push_right(board, (0, 0), 1, opacify=True)
        assert new.boxes[-1].content == Opaque(3)
        assert new.copies == board.copies

    def test_refusals(self):
        board = board_of(2, 0, (0, 0, 0), (1, 0, 0))
        with pytest.raises(MoveRefused):
            move_push_right(board, (0, 0), 5, opacify=False)
        with pytest.raises(MoveRefused):
            move_push_right(board, (9, 9), 1, opacify=False)


class TestOpacifyAndGather:
    def test_opacify_in_place(self):
        board = board_of(2, 0, (0, 1, 0), (1, 1, 2))
        new, _ = move_opacify_boxes(board, [(0, 1), (1, 1)])
        assert [b.content for b in new.boxes] == [Opaque(1), Opaque(3)]

    def test_opacify_rejects_opaque_input(self):
        board = board_of(2, 0, (0, 1, "x"))
        with pytest.raises(MoveRefused):
            move_opacify_boxes(board, [(0, 1)])

    def test_gather_slides_over_opaques_only(self):
        board = board_of(2, 0, (0, 1, 0), (1, 1, "x"), (2, 1, 0))
        new, _ = move_gather_to_end(board, [(0, 1), (2, 1)])
        assert [b.pos for b in new.boxes] == [(1, 1), (0, 1), (2, 1)]

    def test_gather_refuses_to_cross_live_boxes(self):
        board = board_of(2, 0, (0, 1, 0), (1, 1, 0), (2, 1, 0))
        with pytest.raises(MoveRefused):
            move_gather_to_end(board, [(0, 1), (2, 1)])


class TestTranspose:
    def test_vanishing_pair_swaps(self):
        board = board_of(2, 1, (0, 0, 0), (-3, 1, 0))
        new, rec = move_transpose(board, (0, 0), (-3, 1))
        assert [b.pos for b in new.boxes] == [(-3, 1), (0, 0)]
        assert len(rec.oracle) == 1 and rec.oracle[0].ok

    def test_pairing_shape_is_always_refused(self):
        # a zero against the grade t-1 block at relative twist (-1-t, 1):
        # the pair supports a forced extension, so commuting them is never
        # allowed, validated or not
        for validate in (True, False):
            for cells, pair in [
                ((("left", 2, 0, 0), ("right", -1, 1, 1)), ((2, 0), (-1, 1))),
                ((("left", 2, 0, 0), ("right", 0, 1, 0)), ((2, 0), (0, 1))),
            ]:
                board = board_of(2, 1, *[c[1:] for c in cells])
                with pytest.raises(MoveRefused) as err:
                    move_transpose(board, *pair, validate=validate)
                assert err.value.check is None  # structural, before any oracle

    def test_non_pairing_shape_still_oracle_checked(self):
        # same rows but the wrong grade for the pairing shape: the static
        # guard passes and the Ext oracle itself refuses the swap
        board = board_of(2, 1, (2, 0, 0), (0, 1, 1))
        with pytest.raises(MoveRefused) as err:
            move_transpose(board, (2, 0), (0, 1))
        assert err.value.check is not None
        assert err.value.check.got == ((1, 5),)

    def test_oracle_mismatch_refused_with_transcript(self):
        board = board_of(2, 1, (0, 0, 0), (3, 0, 0))
        with pytest.raises(MoveRefused) as err:
            move_transpose(board, (0, 0), (3, 0))
        assert err.value.check is not None
        assert err.value.check.expected == ()
        assert err.value.check.got == ((0, 35),)

    def test_indeterminate_refused(self):
        board = board_of(2, 1, (0, 0, 0), (2, 1, 0))
        with pytest.raises(MoveRefused) as err:
            move_transpose(board, (0, 0), (2, 1))
        assert err.value.check.got == "indeterminate"

    def test_shape_refusals(self):
        adjacent = board_of(2, 1, (0, 0, 0), (-3, 1, 0))
        with pytest.raises(MoveRefused):
            move_transpose(adjacent, (-3, 1), (0, 0))  # wrong SOD order
        blocked = board_of(2, 1, (0, 0, 0), (5, 5, 0), (-3, 1, 0))
        with pytest.raises(MoveRefused):
            move_transpose(blocked, (0, 0), (-3, 1))  # live box between
        opaque = board_of(2, 1, (0, 0, "x"), (-3, 1, 0))
        with pytest.raises(MoveRefused):
            move_transpose(opaque, (0, 0), (-3, 1))

    def test_opaques_between_are_tolerated(self):
        board = board_of(2, 1, (0, 0, 0), (5, 5, "x"), (-3, 1, 0))
        new, _ = move_transpose(board, (0, 0), (-3, 1))
        assert [b.pos for b in new.boxes] == [(-3, 1), (5, 5), (0, 0)]


class TestAbsorb:
    def test_merges_into_the_landing_cell(self):
        board = board_of(2, 1, (2, 0, 0), (0, 1, 0))
        new, rec = move_absorb(board, (2, 0), (0, 1))
        assert [b.pos for b in new.boxes] == [(1, 0)]
        assert new.boxes[0].content == SymBlock(1)
        assert new.copies == board.copies
        assert rec.oracle[0].expected == ((1, 1),) and rec.oracle[0].ok

    def test_larger_gap(self):
        board = board_of(3, 0, (3, 0, 0), (0, 1, 1))
        new, _ = move_absorb(board, (3, 0), (0, 1))
        assert new.boxes[0] == Box(1, 0, SymBlock(2))

    def test_refusals(self):
        with pytest.raises(MoveRefused):  # landing occupied
            move_absorb(board_of(2, 1, (2, 0, 0), (1, 0, 0), (0, 1, 0)),
                        (2, 0), (0, 1))
        with pytest.raises(MoveRefused):  # absorbing box must be grade 0
            move_absorb(board_of(2, 1, (2, 0, 1), (0, 1, 0)), (2, 0), (0, 1))
        with pytest.raises(MoveRefused):  # wrong source grade
            move_absorb(board_of(2, 1, (2, 0, 0), (0, 1, 1)), (2, 0), (0, 1))
        with pytest.raises(MoveRefused):  # wrong relative offset
            move_absorb(board_of(2, 1, (2, 0, 0), (2, 1, 0)), (2, 0), (2, 1))
        with pytest.raises(MoveRefused):  # live box between
            move_absorb(board_of(2, 1, (2, 0, 0), (7, 7, 0), (0, 1, 0)),
                        (2, 0), (0, 1))


class TestRule1:
    def happy(self):
        return board_of(2, 1, (0, 1, 0), (1, 1, 0), (-1, 2, 0))

    def test_feeds_the_head_zero(self):
        new, rec = move_rule1(self.happy(), (0, 1), (-1, 2))
        assert [(b.pos, b.content) for b in new.boxes] == [
            ((0, 1), SymBlock(1)),
            ((1, 1), SymBlock(0)),
        ]
        assert new.copies == 3
        assert all(check.ok for check in rec.oracle)
        assert rec.oracle  # validated by default

    def test_window_may_skip_opaques(self):
        board = board_of(2, 1, (0, 1, 0), (1, 1, 0), (9, 9, "x"), (-1, 2, 0))
        new, _ = move_rule1(board, (0, 1), (-1, 2))
        assert new.at((9, 9)).opaque

    def test_grade_bound(self):
        board = board_of(2, 1, (0, 1, 0), (1, 1, 0), (2, 1, 0), (-1, 2, 1))
        with pytest.raises(MoveRefused) as err:
            move_rule1(board, (0, 1), (-1, 2))
        assert "r <= n-1" in str(err.value) or "grade bound" in str(err.value)

    def test_window_bounds(self):
        short = board_of(2, 1, (0, 1, 0), (-1, 2, 0))  # l = 0 < r
        with pytest.raises(MoveRefused):
            move_rule1(short, (0, 1), (-1, 2))
        long = board_of(2, 1, (0, 1, 0), *[(x, 1, 0) for x in range(1, 5)],
                        (-1, 2, 0))  # l = 4 > 2n-3+eps = 2
        with pytest.raises(MoveRefused):
            move_rule1(long, (0, 1), (-1, 2))

    def test_shape_refusals(self):
        with pytest.raises(MoveRefused):  # head must be grade 0
            move_rule1(board_of(2, 1, (0, 1, 1), (1, 1, 0), (-1, 2, 0)),
                       (0, 1), (-1, 2))
        with pytest.raises(MoveRefused):  # mover at the wrong position
            move_rule1(board_of(2, 1, (0, 1, 0), (1, 1, 0), (-2, 2, 0)),
                       (0, 1), (-2, 2))
        with pytest.raises(MoveRefused):  # window holds a non-zero
            move_rule1(board_of(2, 1, (0, 1, 0), (1, 1, 1), (2, 1, 0), (-1, 2, 0)),
                       (0, 1), (-1, 2))

    def test_signature_ignores_validation(self):
        _, with_oracle = move_rule1(self.happy(), (0, 1), (-1, 2), validate=True)
        _, without = move_rule1(self.happy(), (0, 1), (-1, 2), validate=False)
        assert with_oracle.oracle and not without.oracle
        assert log_signature(with_oracle) == log_signature(without)


class TestRule2:
    def test_boundary_split_consumes_every_zero(self):
        board = board_of(2, 1, (1, 2, 0), (2, 2, 0), (0, 3, 1))
        new, rec = move_rule2(board, (1, 2), (0, 3), t=1, r=2)
        assert [(b.pos, b.content) for b in new.boxes] == [
            ((0, 3), SymBlock(1)),
            ((1, 2), SymBlock(1)),
        ]
        assert new.copies == board.copies
        assert rec.params == (("t", 1), ("r", 2))

    def test_interior_split_keeps_survivors(self):
        board = board_of(4, 0, (0, 1, 0), (1, 1, 0), (2, 1, 0), (-1, 2, 0))
        new, _ = move_rule2(board, (0, 1), (-1, 2), t=2, r=1)
        assert [(b.pos, b.content) for b in new.boxes] == [
            ((-1, 2), SymBlock(0)),
            ((0, 1), SymBlock(0)),
            ((1, 1), SymBlock(0)),
            ((2, 1), SymBlock(0)),
        ]

    def test_opaques_stay_in_their_slots(self):
        board = board_of(2, 1, (1, 2, 0), (9, 9, "x"), (2, 2, 0), (0, 3, 1))
        new, _ = move_rule2(board, (1, 2), (0, 3), t=1, r=2)
        assert [b.pos for b in new.boxes] == [(0, 3), (9, 9), (1, 2)]

    def test_bound_refusals(self):
        board = board_of(4, 0, (0, 1, 0), (1, 1, 0), (2, 1, 0), (-1, 2, 1))
        with pytest.raises(MoveRefused):  # t=2, r=2: neither branch fits
            move_rule2(board, (0, 1), (-1, 2), t=2, r=2)
        with pytest.raises(MoveRefused):  # wrong declared grade
            move_rule2(board, (0, 1), (-1, 2), t=2, r=1)

    def test_window_count_must_match(self):
        board = board_of(2, 1, (1, 2, 0), (0, 3, 1))
        with pytest.raises(MoveRefused):
            move_rule2(board, (1, 2), (0, 3), t=1, r=2)


class TestOrangeMerge:
    def test_merges(self):
        board = board_of(3, 0, (-2, 3, 0), (0, 1, 1))
        new, rec = move_orange_merge(board, (-2, 3), (0, 1))
        assert [(b.pos, b.content) for b in new.boxes] == [((0, 1), SymBlock(2))]
        assert rec.oracle == ()

    def test_refusals(self):
        with pytest.raises(MoveRefused):  # orange must be grade 0
            move_orange_merge(board_of(3, 0, (-2, 3, 1), (0, 1, 1)),
                              (-2, 3), (0, 1))
        with pytest.raises(MoveRefused):  # target must be grade n-2
            move_orange_merge(board_of(3, 0, (-2, 3, 0), (0, 1, 2)),
                              (-2, 3), (0, 1))


class TestRecordsAndReplay:
    def test_every_move_conserves_copies(self):
        board = board_of(2, 1, (0, 1, 0), (1, 1, 0), (-1, 2, 0))
        new, rec = move_rule1(board, (0, 1), (-1, 2))
        assert rec.copies_before == rec.copies_after == board.copies == new.copies

    def test_replay_reproduces_a_move(self):
        board = board_of(2, 1, (0, 1, 0), (1, 1, 0), (-1, 2, 0))
        new, rec = move_rule1(board, (0, 1), (-1, 2))
        assert apply_record(board, rec).boxes == new.boxes

    def test_replay_rejects_unknown_kinds(self):
        board = board_of(2, 1, (0, 1, 0))
        bogus = MoveRecord("teleport", (), (), (), "applied", 1, 1)
        with pytest.raises(ValueError):
            apply_record(board, bogus)

    def test_replay_rejects_divergence(self):
        board = board_of(2, 1, (0, 1, 0), (1, 1, 0))
        _, rec = move_serre_translate(board, 1, "left", 1)
        bigger = board_of(2, 1, (0, 1, 0), (1, 1, 0), (0, 2, 0))
        with pytest.raises(ValueError):
            apply_record(bigger, rec)

    def test_refusal_metadata(self):
        board = board_of(2, 1, (2, 0, 0), (-1, 1, 1))
        with pytest.raises(MoveRefused) as err:
            move_transpose(board, (2, 0), (-1, 1))
        assert err.value.kind == "transpose"
        assert "pairing" in err.value.reason
