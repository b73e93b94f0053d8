import itertools

import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from meshinspect.gestures import (
    LEFT,
    MENU_BUTTONS,
    RIGHT,
    GazeRay,
    GestureConfig,
    GestureSet,
    HandFrame,
    Mode,
    classify_gestures,
    gaze_pick,
    menu_button_centers,
    step_menu,
)

CFG = GestureConfig()


def hand(
    side=RIGHT,
    palm_center=(0, 1, 0),
    palm_normal=(0, -1, 0),
    thumb_tip=(0.0, 1.0, -0.1),
    index_tip=(0.06, 1.0, -0.1),
    thumb_dir=(1, 0, 0),
    index_curl=0.5,
):
    def unit(v):
        v = np.asarray(v, dtype=float)
        return v / np.linalg.norm(v)

    return HandFrame(
        handedness=side,
        palm_center=np.asarray(palm_center, dtype=float),
        palm_normal=unit(palm_normal),
        thumb_tip=np.asarray(thumb_tip, dtype=float),
        index_tip=np.asarray(index_tip, dtype=float),
        thumb_dir=unit(thumb_dir),
        index_curl=index_curl,
    )


def pinching(side=RIGHT, at=(0, 1, 0)):
    return hand(side, palm_center=at, thumb_tip=at, index_tip=at, index_curl=0.9)


class TestClassify:
    def test_touching_fingertips_pinch(self):
        g = classify_gestures(None, pinching(RIGHT), CFG)
        assert g.pinch_right and not g.pinch_left

    def test_separation_at_30mm_is_not_a_pinch(self):
        h = hand(RIGHT, thumb_tip=(0, 1, 0), index_tip=(0.030, 1, 0))
        assert not classify_gestures(None, h, CFG).pinch_right

    def test_threshold_boundary_is_exclusive(self):
        h = hand(RIGHT, thumb_tip=(0, 1, 0), index_tip=(CFG.pinch_threshold, 1, 0))
        assert not classify_gestures(None, h, CFG).pinch_right

    def test_exact_up_palm(self):
        h = hand(LEFT, palm_normal=(0, 1, 0))
        assert classify_gestures(h, None, CFG).palm_up_left

    def test_palm_up_is_left_only(self):
        h = hand(RIGHT, palm_normal=(0, 1, 0))
        assert not classify_gestures(None, h, CFG).palm_up_left

    def test_double_pinch_needs_clustered_midpoints(self):
        near = classify_gestures(pinching(LEFT, (0, 1, 0)), pinching(RIGHT, (0.05, 1, 0)), CFG)
        far = classify_gestures(pinching(LEFT, (0, 1, 0)), pinching(RIGHT, (0.2, 1, 0)), CFG)
        assert near.double_pinch
        assert not far.double_pinch

    def test_thumbs_up_needs_curl_and_direction(self):
        up = hand(RIGHT, thumb_dir=(0, 1, 0), index_curl=0.9)
        flat = hand(RIGHT, thumb_dir=(1, 0, 0), index_curl=0.9)
        open_index = hand(RIGHT, thumb_dir=(0, 1, 0), index_curl=0.2)
        assert classify_gestures(None, up, CFG).thumbs_up_right
        assert not classify_gestures(None, flat, CFG).thumbs_up_right
        assert not classify_gestures(None, open_index, CFG).thumbs_up_right

    def test_point_excludes_pinching(self):
        pointer = hand(RIGHT, index_curl=0.1)
        pinched = hand(RIGHT, thumb_tip=(0, 1, 0), index_tip=(0, 1, 0), index_curl=0.1)
        assert classify_gestures(None, pointer, CFG).point_right
        assert not classify_gestures(None, pinched, CFG).point_right

    def test_absent_hands_are_all_false(self):
        assert classify_gestures(None, None, CFG) == GestureSet()

    def test_double_pinch_implies_both_pinches(self):
        g = classify_gestures(pinching(LEFT), pinching(RIGHT), CFG)
        assert g.double_pinch and g.pinch_left and g.pinch_right


def _mirror(h: HandFrame) -> HandFrame:
    flip = np.array([-1.0, 1.0, 1.0])
    return HandFrame(
        handedness=LEFT if h.handedness == RIGHT else RIGHT,
        palm_center=h.palm_center * flip,
        palm_normal=h.palm_normal * flip,
        thumb_tip=h.thumb_tip * flip,
        index_tip=h.index_tip * flip,
        thumb_dir=h.thumb_dir * flip,
        index_curl=h.index_curl,
    )


_coord = st.floats(-1, 1, allow_nan=False)
_point = st.tuples(_coord, _coord, _coord)


@st.composite
def hands(draw, side):
    direction = draw(st.sampled_from([(1, 0, 0), (0, 1, 0), (0, 0, 1), (0.6, 0.8, 0)]))
    return hand(
        side,
        palm_center=draw(_point),
        thumb_tip=draw(_point),
        index_tip=draw(_point),
        thumb_dir=direction,
        index_curl=draw(st.floats(0, 1)),
    )


@given(hands(LEFT), hands(RIGHT))
def test_mirroring_swaps_handed_outputs(left, right):
    g = classify_gestures(left, right, CFG)
    mirrored = classify_gestures(_mirror(right), _mirror(left), CFG)
    assert mirrored.pinch_left == g.pinch_right
    assert mirrored.pinch_right == g.pinch_left
    assert mirrored.point_left == g.point_right
    assert mirrored.point_right == g.point_left
    assert mirrored.thumbs_up_left == g.thumbs_up_right
    assert mirrored.thumbs_up_right == g.thumbs_up_left
    assert mirrored.double_pinch == g.double_pinch


class TestGazePick:
    RAY = GazeRay(np.zeros(3), np.array([0.0, 0.0, -1.0]))

    def test_on_axis_hit(self):
        assert gaze_pick(self.RAY, [(1, np.array([0, 0, -2.0]), 0.02)], 1.5) == 1

    def test_miss_beyond_slop(self):
        assert gaze_pick(self.RAY, [(1, np.array([0.1, 0, -2.0]), 0.02)], 1.5) is None

    def test_nearest_along_ray_wins(self):
        targets = [(1, np.array([0, 0, -2.0]), 0.02), (2, np.array([0, 0, -1.0]), 0.02)]
        assert gaze_pick(self.RAY, targets, 1.5) == 2

    def test_behind_origin_ignored(self):
        assert gaze_pick(self.RAY, [(1, np.array([0, 0, 2.0]), 0.5)], 1.5) is None


class TestMenu:
    PALM = np.array([-0.3, 1.2, 0.5])
    UP = np.array([0.0, 1.0, 0.0])

    def step(self, mode, label=None, prev_inside=frozenset(), help_visible=False, palm_up=True):
        gestures = GestureSet(palm_up_left=palm_up)
        tip = None
        if label is not None:
            tip = menu_button_centers(self.PALM, self.UP, CFG)[label]
        return step_menu(mode, help_visible, gestures, tip, self.PALM, self.UP, CFG, prev_inside)

    EXPECTED = {
        ("measure", "remove"): Mode.REMOVE_MARKER,
        ("measure", "add"): Mode.ADD_MARKER,
        ("measure", "manipulate"): Mode.MANIPULATE,
        ("manipulate", "remove"): Mode.REMOVE_MARKER,
        ("manipulate", "add"): Mode.ADD_MARKER,
        ("manipulate", "manipulate"): Mode.MEASURE,
        ("add_marker", "remove"): Mode.REMOVE_MARKER,
        ("add_marker", "add"): Mode.MEASURE,
        ("add_marker", "manipulate"): Mode.MANIPULATE,
        ("remove_marker", "remove"): Mode.MEASURE,
        ("remove_marker", "add"): Mode.ADD_MARKER,
        ("remove_marker", "manipulate"): Mode.MANIPULATE,
    }

    def test_every_mode_button_transition(self):
        for mode, label in itertools.product(Mode, MENU_BUTTONS):
            step = self.step(mode, label)
            if label in ("reset", "help"):
                assert step.mode is mode
            else:
                assert step.mode is self.EXPECTED[(mode.value, label)]
            assert step.reset == (label == "reset")
            # exactly one mode active is structural: step.mode is a single enum
            assert isinstance(step.mode, Mode)

    def test_press_add_enters_add_marker_mode(self):
        assert self.step(Mode.MEASURE, "add").mode is Mode.ADD_MARKER

    def test_pressing_active_mode_returns_to_measure(self):
        assert self.step(Mode.ADD_MARKER, "add").mode is Mode.MEASURE

    def test_help_toggles(self):
        first = self.step(Mode.MEASURE, "help")
        assert first.help_visible
        second = self.step(Mode.MEASURE, "help", help_visible=True)
        assert not second.help_visible

    def test_dwelling_finger_does_not_refire(self):
        first = self.step(Mode.MEASURE, "add")
        assert first.mode is Mode.ADD_MARKER
        second = self.step(first.mode, "add", prev_inside=first.inside)
        assert second.mode is Mode.ADD_MARKER  # no toggle-off while dwelling

    def test_hidden_menu_takes_no_presses(self):
        step = self.step(Mode.MEASURE, "add", palm_up=False)
        assert step.mode is Mode.MEASURE
        assert step.inside == frozenset()

    def test_pointer_outside_all_buttons(self):
        step = self.step(Mode.MEASURE, None)
        assert step.mode is Mode.MEASURE and step.inside == frozenset()

    def test_button_layout_is_two_columns_three_rows(self):
        centers = menu_button_centers(self.PALM, self.UP, CFG)
        assert set(centers) == set(MENU_BUTTONS) and len(MENU_BUTTONS) == 5
        xs = sorted({round(c[0], 9) for c in centers.values()})
        zs = sorted({round(c[2], 9) for c in centers.values()})
        assert len(xs) == 2 and len(zs) == 3
