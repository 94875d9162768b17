"""Schedules and streams: construction, emission order, convergence."""

from fractions import Fraction

import pytest

from colorgames import (ContractError, FinitePath, FrequencyVector,
                        LimitMatrix, LoopSet, PathStream,
                        bounded_witness_stream, build_schedule,
                        convergence_profile, decide_balanced_path,
                        decide_bounded_path, decide_frequency_path,
                        diff_matrix, frequency_to_limit, measure_convergence,
                        stream)
from builders import TWO_LOOPS, build_arena
from oracles import growing_block_word


def two_loop_schedule(freq=None):
    arena = build_arena(2, TWO_LOOPS)
    if freq is None:
        decision = decide_balanced_path(arena)
    else:
        decision = decide_frequency_path(arena, freq)
    assert decision.exists
    return arena, build_schedule(decision.witness, arena)


def test_schedule_two_self_loops():
    _, sched = two_loop_schedule()
    assert sched.connectors == ((), ())
    assert [e.color for e in sched.round_edges(1)] == [1, 2]
    assert [e.color for e in sched.round_edges(3)] == [1] * 3 + [2] * 3


def test_schedule_adjacent_loops_have_unit_connectors():
    arena = build_arena(2, [("u", 1, "u"), ("v", 2, "v"),
                            ("u", 1, "v"), ("v", 2, "u")])
    loops = LoopSet(((FinitePath([arena.edges[0]]), 1),
                     (FinitePath([arena.edges[1]]), 1)))
    sched = build_schedule(loops, arena)
    assert [len(c) for c in sched.connectors] == [1, 1]
    # every round is a closed walk through the start
    walk = FinitePath(sched.round_edges(2))
    assert walk.start == walk.end == sched.start


def test_schedule_frequency_two_one():
    _, sched = two_loop_schedule(FrequencyVector.of("2/3", "1/3"))
    assert sched.coeffs == (2, 1)
    assert [e.color for e in sched.round_edges(1)] == [1, 1, 2]
    assert [e.color for e in sched.round_edges(2)] == [1] * 4 + [2] * 2


def test_schedule_rejects_disconnected_loops():
    arena = build_arena(2, [("u", 1, "u"), ("u", 1, "v"), ("v", 2, "v")])
    loops = LoopSet(((FinitePath([arena.edges[0]]), 1),
                     (FinitePath([arena.edges[2]]), 1)))
    with pytest.raises(ContractError):
        build_schedule(loops, arena)


def test_stream_first_edges():
    _, sched = two_loop_schedule()
    assert [e.color for e in stream(sched).take(6)] == [1, 2, 1, 1, 2, 2]


def test_stream_single_loop_is_periodic():
    arena = build_arena(2, [("u", 1, "v"), ("v", 2, "u")])
    decision = decide_balanced_path(arena)
    sched = build_schedule(decision.witness, arena)
    colors = [e.color for e in stream(sched).take(12)]
    assert colors == [1, 2] * 6


def test_round_boundary_arithmetic():
    _, sched = two_loop_schedule(FrequencyVector.of("2/3", "1/3"))
    n = sched.loop_weight()
    bounds = [sched.boundary(i) for i in range(1, 8)]
    for i in range(2, 7):
        assert bounds[i] - bounds[i - 1] == bounds[i - 1] - bounds[i - 2] + n
        assert bounds[i] - bounds[i - 1] == sched.round_length(i + 1)


def test_stream_adjacency():
    arena = build_arena(2, [("u", 1, "u"), ("v", 2, "v"),
                            ("u", 1, "v"), ("v", 2, "u")])
    loops = LoopSet(((FinitePath([arena.edges[0]]), 1),
                     (FinitePath([arena.edges[1]]), 1)))
    sched = build_schedule(loops, arena)
    edges = stream(sched).take(400)
    assert edges[0].src == sched.start
    for a, b in zip(edges, edges[1:]):
        assert a.dst == b.src


def test_round_closure_identity():
    arena = build_arena(2, [("u", 1, "u"), ("v", 2, "v"),
                            ("u", 1, "v"), ("v", 2, "u")])
    loops = LoopSet(((FinitePath([arena.edges[0]]), 1),
                     (FinitePath([arena.edges[1]]), 2)))
    sched = build_schedule(loops, arena)
    z = diff_matrix([1], 2) + diff_matrix([2, 2], 2)
    conn = diff_matrix([1], 2) + diff_matrix([2], 2)
    for i in range(1, 7):
        round_diff = diff_matrix([e.color for e in sched.round_edges(i)], 2)
        assert round_diff == z.scaled(i) + conn


def test_measure_convergence_zero_on_period_multiples():
    arena = build_arena(2, [("u", 1, "v"), ("v", 2, "u")])
    sched = build_schedule(decide_balanced_path(arena).witness, arena)
    for n in (2, 10, 40):
        assert measure_convergence(stream(sched), n,
                                   LimitMatrix.zero(2)) == 0


def test_measure_convergence_boundary_bound_decreasing():
    _, sched = two_loop_schedule()
    zero = LimitMatrix.zero(2)
    devs = [measure_convergence(stream(sched), sched.boundary(i), zero)
            for i in range(1, 11)]
    for i, d in enumerate(devs, start=1):
        assert d <= Fraction(i, sched.boundary(i))
    assert all(a >= b for a, b in zip(devs, devs[1:]))


def test_block_word_deviation_shrinks():
    word3 = growing_block_word(3)
    word30 = growing_block_word(30)
    zero = LimitMatrix.zero(3)
    arena = build_arena(3, [("u", c, "u") for c in (1, 2, 3)])

    def word_stream(word):
        gen = (arena.edges[c - 1] for c in word)
        return PathStream("u", gen)

    d3 = measure_convergence(word_stream(word3), len(word3), zero)
    d30 = measure_convergence(word_stream(word30), len(word30), zero)
    assert d30 < d3
    # pair (3,1) alone drifts by exactly one per block
    m = diff_matrix(word30, 3)
    assert Fraction(m.entry(3, 1), len(word30)) == Fraction(30, len(word30))


def test_convergence_profile_matches_single_measurements():
    _, sched = two_loop_schedule(FrequencyVector.of("2/3", "1/3"))
    lm = frequency_to_limit(FrequencyVector.of("2/3", "1/3"))
    marks = [3, 9, 18, 30]
    profile = convergence_profile(stream(sched), marks, lm)
    for mark, dev in profile:
        assert dev == measure_convergence(stream(sched), mark, lm)


def test_peak_envelope_is_square_root():
    # right after the first loop block of round i the deviation peaks at
    # i / i^2, so dev^2 * n is exactly 1 at every peak
    _, sched = two_loop_schedule()
    zero = LimitMatrix.zero(2)
    peaks = [sched.boundary(i - 1) + i for i in range(1, 60)]
    for mark, dev in convergence_profile(stream(sched), peaks, zero):
        assert dev * dev * mark == 1


def test_bounded_stream_small_prefix_diffs():
    arena = build_arena(2, TWO_LOOPS)
    walk = decide_bounded_path(arena).witness
    bs = bounded_witness_stream(walk, (), 2)
    assert bs.bound == 1
    counts = [0, 0]
    for e in bs.take(1000):
        counts[e.color - 1] += 1
        assert abs(counts[0] - counts[1]) <= 1


def test_bounded_stream_figure_eight_long_run():
    # two loops sharing u with opposite per-loop drift (+2 and -2); the
    # walk cancels overall but excursions inside one period persist
    arena = build_arena(2, [("s", 1, "u"), ("u", 1, "v"), ("v", 1, "u"),
                            ("u", 2, "w"), ("w", 2, "u")],
                        initial="s")
    walk = FinitePath([arena.edges[1], arena.edges[2],
                       arena.edges[3], arena.edges[4]])
    access = (arena.edges[0],)
    bs = bounded_witness_stream(walk, access, 2)
    assert bs.bound == 3  # access excursion 1 plus loop drift 2
    counts = [0, 0]
    worst = 0
    for e in bs.take(100_000):
        counts[e.color - 1] += 1
        worst = max(worst, abs(counts[0] - counts[1]))
    assert worst <= bs.bound


def test_bounded_stream_rejects_unbalanced_walk():
    arena = build_arena(2, [("u", 1, "u"), ("u", 2, "u")])
    with pytest.raises(ContractError):
        bounded_witness_stream(FinitePath([arena.edges[0]]), (), 2)
