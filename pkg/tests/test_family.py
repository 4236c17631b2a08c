import pytest

from gcrsolver.family import (
    GameFamily,
    INFINITY,
    FamilyFormatError,
    decode_value,
    encode_value,
    read_family,
    validate_family,
    write_family,
)


def tiny_family(successor_patch=None, capture=(0, 1)):
    """Two locations each side: 8 regular states + terminal.

    Default wiring keeps every rule satisfied; tests patch single states to
    break specific rules.
    """
    tau = 8
    successors = {
        0: [tau],  # capture (0,0,1)
        1: [tau],  # capture (0,0,2)
        2: [3, 6],  # (0,1,1): pursuer stays or moves, evader loc fixed
        3: [0, 2],  # (0,1,2): evader moves
        4: [0, 4],  # (1,0,1): pursuer move may keep the mover
        5: [4, 7],  # (1,0,2)
        6: [2, 6],  # (1,1,1)
        7: [4, 6],  # (1,1,2)
        tau: [tau],
    }
    if successor_patch:
        successors.update(successor_patch)
    return GameFamily(2, 2, [successors[s] for s in range(9)], capture)


def test_valid_family_reports_nothing():
    assert validate_family(tiny_family()) == []


def test_capture_state_with_regular_successor_flagged():
    fam = tiny_family(successor_patch={1: [2]})
    report = validate_family(fam)
    assert [v.state for v in report] == [1]
    assert report[0].rule == "capture-to-terminal"


def test_empty_successor_list_flagged():
    fam = tiny_family(successor_patch={3: []})
    report = validate_family(fam)
    assert [v.state for v in report] == [3]
    assert report[0].rule == "nonempty-successors"


def test_noncapture_state_may_not_jump_to_terminal():
    fam = tiny_family(successor_patch={3: [0, 8]})
    report = validate_family(fam)
    assert [v.state for v in report] == [3]
    assert report[0].rule == "regular-successor"


def test_move_changing_the_waiting_players_location_flagged():
    # state 2 = (0,1,1): pursuer moves, so the evader location must stay 1.
    fam = tiny_family(successor_patch={2: [0, 4]})  # 4 = (1,0,1): evader moved
    report = validate_family(fam)
    assert any(v.state == 2 and v.rule == "other-location-fixed" for v in report)


def test_unsorted_successors_flagged():
    fam = tiny_family(successor_patch={7: [6, 4]})
    report = validate_family(fam)
    assert any(v.state == 7 and v.rule == "successor-order" for v in report)


def test_terminal_must_self_loop():
    fam = tiny_family(successor_patch={8: [7]})
    report = validate_family(fam)
    assert any(v.state == 8 and v.rule == "terminal-loop" for v in report)


def test_state_id_round_trip():
    fam = tiny_family()
    seen = set()
    for p in range(2):
        for e in range(2):
            for m in (1, 2):
                sid = fam.state_id(p, e, m)
                st = fam.state(sid)
                assert (st.pursuer_loc, st.evader_loc, st.mover) == (p, e, m)
                seen.add(sid)
    assert seen == set(range(8))
    assert fam.state(fam.tau).terminal


def test_successor_queries_are_stable_and_ordered(p3):
    for sid in range(p3.state_count):
        succs = p3.successors(sid)
        assert succs == sorted(succs)
        assert len(set(succs)) == len(succs)
        assert succs == p3.successors(sid)
    assert p3.successors(p3.tau) == [p3.tau]
    for sid in p3.capture_ids():
        assert p3.successors(sid) == [p3.tau]


def test_turn_payoff_is_the_noncapture_indicator(p3):
    for sid in range(p3.state_count):
        expected = 0 if (sid == p3.tau or p3.is_capture(sid)) else 1
        assert p3.turn_payoff(sid) == expected


def test_is_capture_on_classic_diagonal(k2):
    assert k2.is_capture(k2.state_id(1, 1, 1))
    assert not k2.is_capture(k2.state_id(0, 1, 2))
    assert not k2.is_capture(k2.tau)


@pytest.mark.parametrize("bad", [-1, 9, 100])
def test_out_of_range_ids_rejected(bad):
    fam = tiny_family()
    with pytest.raises(ValueError):
        fam.successors(bad)
    with pytest.raises(ValueError):
        fam.is_capture(bad)


def test_family_document_round_trip(p3, p3_dist1, p4_speed2):
    for fam in (p3, p3_dist1, p4_speed2):
        text = write_family(fam)
        back = read_family(text)
        assert back.same_structure(fam)
        assert back.metadata == fam.metadata
        assert write_family(back) == text  # byte-identical second pass


@pytest.mark.parametrize(
    "mangle",
    [
        lambda d: d.pop("edges"),
        lambda d: d.update(locations1=0),
        lambda d: d.update(edges=[[0]]),
        lambda d: d.update(capture=["x"]),
        lambda d: d.update(metadata=[1]),
    ],
)
def test_malformed_family_documents_rejected(p3, mangle):
    import json

    doc = json.loads(write_family(p3))
    mangle(doc)
    with pytest.raises(FamilyFormatError):
        read_family(json.dumps(doc))


def test_value_encoding():
    assert encode_value(INFINITY) == "infinity"
    assert encode_value(7) == 7
    assert decode_value("infinity") == INFINITY
    assert decode_value(7) == 7
    with pytest.raises(FamilyFormatError):
        decode_value(3.5)
