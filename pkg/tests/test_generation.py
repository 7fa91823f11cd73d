import threading

import numpy as np
import pytest
from hypothesis import given, settings

from conftest import P, coloured_perms
from kpancake import (
    CapacityError,
    ColouredPermutation,
    PrePerm,
    flip,
    format_perm,
    generate_by_flipseq,
    generate_by_successor,
    greedy,
    iter_flipseq,
    iter_in_thread,
    listing_arrays,
    listing_size,
    rec_listing,
    reverse,
    run_visitor,
    shift,
    sigma_recursive,
    successor,
    successor_flips,
    successor_perm,
)
from kpancake import _kernels
from kpancake.generation import arrays_to_perms

MATRIX = [(n, 1) for n in range(1, 7)] + [(n, 2) for n in range(1, 6)] + [(n, 3) for n in range(1, 5)] + \
    [(n, 4) for n in range(1, 4)] + [(n, 10) for n in range(1, 3)]

MAX_FLIP_PATH = "1^0 2^0, 2^1 1^1, 1^2 2^2, 2^0 1^0, 1^1 2^1, 2^2 1^2, 2^0 1^2, 1^0 2^1, 2^2 1^1, 1^2 2^0, 2^1 1^0, 1^1 2^2"


class TestGreedy:
    def test_example_listing(self, example_3_3):
        perms, flips = example_3_3
        out = greedy(3, 3, "min")
        assert [format_perm(p) for p in out.listing] == perms
        assert list(out.flips) == flips[:-1]
        assert out.exhaustive and out.cyclic

    def test_max_flip_gets_stuck(self):
        out = greedy(2, 3, "max")
        assert ", ".join(map(format_perm, out.listing)) == MAX_FLIP_PATH
        assert not out.exhaustive and not out.is_hamilton_cycle
        last = out.listing[-1]
        seen = set(out.listing)
        assert all(flip(last, j) in seen for j in (1, 2))

    @pytest.mark.parametrize("n", range(1, 6))
    @pytest.mark.parametrize("k", [1, 2])
    def test_max_flip_works_for_one_and_two_colours(self, n, k):
        assert greedy(n, k, "max").exhaustive

    def test_one_element(self):
        out = greedy(1, 4)
        assert [format_perm(p) for p in out.listing] == ["1^0", "1^1", "1^2", "1^3"]
        assert out.is_hamilton_cycle

    @pytest.mark.parametrize("n,k", [(4, 1), (3, 2), (3, 3), (2, 5)])
    def test_min_flip_is_minimal(self, n, k):
        out = greedy(n, k)
        seen = {out.listing[0]}
        for cur, j, nxt in zip(out.listing, out.flips, out.listing[1:]):
            assert flip(cur, j) == nxt
            lo = 2 if k == 1 else 1
            assert all(flip(cur, s) in seen for s in range(lo, j))
            seen.add(nxt)

    def test_budget(self):
        with pytest.raises(CapacityError):
            greedy(5, 3, budget=1000)

    def test_bad_priority(self):
        with pytest.raises(ValueError):
            greedy(2, 2, "middle")


class TestRecursive:
    def test_base_case(self):
        out = rec_listing(P("1^0", 3))
        assert [format_perm(p) for p in out] == ["1^0", "1^1", "1^2"]

    @pytest.mark.parametrize("n,k", [(3, 1), (3, 3), (4, 2), (2, 4)])
    def test_first_and_last(self, n, k):
        out = rec_listing(ColouredPermutation.identity(n, k))
        assert out[0] == ColouredPermutation.identity(n, k)
        assert format_perm(out[-1]) == " ".join(f"{v}^{k - 1}" for v in range(n, 0, -1))

    def test_matches_greedy(self):
        assert list(rec_listing(ColouredPermutation.identity(3, 3))) == list(greedy(3, 3).listing)

    @given(coloured_perms(max_n=4, max_k=3))
    @settings(max_examples=30, deadline=None)
    def test_any_start_first_last_and_flips(self, pi):
        out = rec_listing(pi)
        assert out[0] == pi
        assert out[-1] == reverse(shift(pi, pi.k - 1))
        assert len(out) == listing_size(pi.n, pi.k)
        assert len(set(out)) == len(out)
        seq = sigma_recursive(pi.n, pi.k)
        assert all(flip(a, j) == b for a, j, b in zip(out, seq, out[1:]))
        assert flip(out[-1], pi.n) == out[0]

    def test_preperm_listing(self):
        p = PrePerm((2, 4), (1, 0), 3, 5)
        out = rec_listing(p)
        assert len(out) == 3 * 3 * 2
        assert out[0] == p
        assert out[-1] == reverse(shift(p, 2))
        assert all(isinstance(q, PrePerm) and q.n == 5 for q in out)


class TestSuccessor:
    def test_worked_examples(self):
        pi = P("3^8 2^8 5^9 4^9 1^7 6^3", 10)
        assert successor(pi) == 4
        assert format_perm(successor_perm(pi)) == "4^0 5^0 2^9 3^9 1^7 6^3"
        pi = P("1^8 3^7 2^6 5^5 4^3 6^2", 10)
        assert successor(pi) == 1
        assert format_perm(successor_perm(pi)) == "1^9 3^7 2^6 5^5 4^3 6^2"

    @pytest.mark.parametrize("n,k", [(3, 3), (4, 2), (5, 1), (2, 6)])
    def test_last_wraps_to_first(self, n, k):
        last = rec_listing(ColouredPermutation.identity(n, k))[-1]
        assert successor(last) == n
        assert successor_perm(last) == ColouredPermutation.identity(n, k)

    @pytest.mark.parametrize("n,k", [(4, 2), (3, 3), (5, 1), (3, 4)])
    def test_agrees_with_listing(self, n, k):
        out = list(rec_listing(ColouredPermutation.identity(n, k)))
        for a, b in zip(out, out[1:] + out[:1]):
            assert successor_perm(a) == b

    @pytest.mark.parametrize("n,k", [(1, 1), (3, 1), (3, 2), (2, 3), (4, 2)])
    def test_single_cycle(self, n, k):
        # the successor map is one cycle through every coloured permutation
        start = ColouredPermutation.identity(n, k)
        cur, steps = successor_perm(start), 1
        while cur != start:
            cur = successor_perm(cur)
            steps += 1
            assert steps <= listing_size(n, k)
        assert steps == listing_size(n, k)

    def test_two_two(self):
        out = generate_by_successor(2, 2)
        flips = [successor(p) for p in out]
        assert len(out) == 8
        assert flips == [1, 2, 1, 2, 1, 2, 1, 2]

    def test_trivial(self):
        assert [format_perm(p) for p in generate_by_successor(1, 1)] == ["1^0"]


class TestFlipseqDriven:
    def test_matches_greedy(self):
        assert list(generate_by_flipseq(3, 3)) == list(greedy(3, 3).listing)

    def test_non_canonical_start(self):
        start = P("2^1 1^0", 2)
        out = generate_by_flipseq(2, 2, start)
        assert out[0] == start
        assert len(set(out)) == 8
        assert list(out) == list(rec_listing(start))

    @given(coloured_perms(max_n=4, max_k=3))
    @settings(max_examples=25, deadline=None)
    def test_any_start_matches_recursive(self, pi):
        assert list(generate_by_flipseq(pi.n, pi.k, pi)) == list(rec_listing(pi))

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            list(iter_flipseq(3, 2, P("1^0 2^0", 2)))


@pytest.mark.parametrize("n,k", MATRIX)
def test_four_way_equivalence(n, k):
    reference = list(greedy(n, k).listing)
    assert list(rec_listing(ColouredPermutation.identity(n, k))) == reference
    assert list(generate_by_successor(n, k)) == reference
    assert list(generate_by_flipseq(n, k)) == reference


class TestArrays:
    @pytest.mark.parametrize("method", ["flipseq", "successor"])
    @pytest.mark.parametrize("n,k", [(1, 1), (4, 1), (3, 3), (4, 2), (2, 10)])
    def test_arrays_match_iterator(self, method, n, k):
        vals, cols = listing_arrays(n, k, method)
        assert arrays_to_perms(vals, cols, k) == list(generate_by_flipseq(n, k))

    def test_array_start(self):
        start = P("3^1 1^0 2^2", 3)
        vals, cols = listing_arrays(3, 3, start=start)
        assert arrays_to_perms(vals, cols, 3) == list(rec_listing(start))

    def test_successor_requires_canonical_start(self):
        with pytest.raises(ValueError):
            listing_arrays(2, 2, "successor", start=P("2^0 1^0", 2))

    @pytest.mark.parametrize("backend", sorted(_kernels.BACKENDS))
    @pytest.mark.parametrize("n,k", [(4, 2), (3, 3), (5, 1)])
    def test_backends_agree(self, backend, n, k):
        impl = _kernels.BACKENDS[backend]
        total = listing_size(n, k)
        ref_v, ref_c = listing_arrays(n, k)
        out_v = np.empty((total, n), dtype=np.int64)
        out_c = np.empty((total, n), dtype=np.int64)
        impl["listing_by_successor"](k, out_v, out_c)
        assert (out_v == ref_v).all() and (out_c == ref_c).all()
        flips = np.asarray(sigma_recursive(n, k), dtype=np.int64)
        impl["listing_from_flips"](ref_v[0].copy(), ref_c[0].copy(), k, flips, out_v, out_c)
        assert (out_v == ref_v).all() and (out_c == ref_c).all()
        succ = impl["successor_rows"](ref_v, ref_c, k)
        assert succ[:-1].tolist() == sigma_recursive(n, k) and succ[-1] == n

    def test_batch_successor_matches_scalar(self):
        vals, cols = listing_arrays(3, 4)
        perms = arrays_to_perms(vals, cols, 4)
        assert successor_flips(vals, cols, 4).tolist() == [successor(p) for p in perms]


class TestStreaming:
    def test_visitor(self):
        class Collect:
            def __init__(self):
                self.seen, self.closed = [], None

            def visit(self, perm):
                self.seen.append(perm)

            def close(self, closing):
                self.closed = closing

        v = Collect()
        assert run_visitor(iter_flipseq(3, 2), v) == 48
        assert v.seen == list(generate_by_flipseq(3, 2))
        assert v.closed == 3

    def test_thread_queue(self):
        out = list(iter_in_thread(iter_flipseq(4, 2), maxsize=8))
        assert out == list(generate_by_flipseq(4, 2))

    def test_thread_queue_early_exit(self):
        gen = iter_in_thread(iter_flipseq(5, 2), maxsize=4)
        first = [next(gen) for _ in range(3)]
        gen.close()
        assert len(first) == 3
        assert not any(t.name == "kpancake-producer" and t.is_alive() for t in threading.enumerate())

    def test_thread_queue_propagates_errors(self):
        def bad():
            yield 1
            raise KeyError("boom")

        with pytest.raises(KeyError):
            list(iter_in_thread(bad()))
