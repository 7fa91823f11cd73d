import math
from collections import Counter
from fractions import Fraction

import numpy as np
import pytest

from conftest import P
from kpancake import (
    ColouredPermutation,
    avg_flip_length,
    check_equivalence,
    exact_average,
    generate_by_flipseq,
    greedy,
    listing_arrays,
    listing_size,
    sigma_recursive,
    verify_arrays,
    verify_listing,
)
from kpancake import _kernels
from kpancake.analysis import certified_below, empirical_average, exp_inverse_enclosure
from kpancake.genseq import sigma_bar


class TestVerify:
    def test_example_listing(self):
        report = verify_listing(greedy(3, 3).listing, 3, 3)
        assert report.is_hamilton_cycle
        assert report.total_visited == report.expected == 162
        assert report.closing_flip == 3

    def test_replaced_entry_is_caught(self):
        perms = list(generate_by_flipseq(3, 2))
        perms[10] = perms[20]
        report = verify_listing(perms, 3, 2)
        assert report.duplicates == 1
        assert report.bad_transitions
        assert not report.is_hamilton_cycle

    def test_max_flip_path(self):
        report = verify_listing(greedy(2, 3, "max").listing, 2, 3)
        assert report.total_visited == 12
        assert not report.is_hamilton_cycle
        assert not report.cyclic_closure

    def test_truncated(self):
        perms = list(generate_by_flipseq(3, 2))[:-1]
        report = verify_listing(perms, 3, 2)
        assert report.duplicates == 0 and not report.bad_transitions
        assert not report.is_hamilton_cycle

    def test_streams_a_generator_once(self):
        report = verify_listing(generate_by_flipseq(4, 2).perms.__iter__(), 4, 2)
        assert report.is_hamilton_cycle

    def test_text(self):
        text = verify_listing(generate_by_flipseq(2, 2), 2, 2).to_text()
        assert text.splitlines() == [
            "total:8", "expected:8", "duplicates:0", "bad_transitions:0", "cyclic:true", "hamilton:true",
        ]

    @pytest.mark.parametrize("n,k", [(1, 1), (1, 3), (4, 2), (3, 3), (5, 1)])
    def test_arrays_agree(self, n, k):
        vals, cols = listing_arrays(n, k)
        fast = verify_arrays(vals, cols, k)
        slow = verify_listing(generate_by_flipseq(n, k), n, k)
        assert fast.is_hamilton_cycle and slow.is_hamilton_cycle
        assert fast.closing_flip == slow.closing_flip == n

    def test_arrays_catch_mutation(self):
        vals, cols = listing_arrays(3, 3)
        vals[5], cols[5] = vals[40], cols[40]
        report = verify_arrays(vals, cols, 3)
        assert report.duplicates == 1 and len(report.bad_transitions) == 2

    @pytest.mark.parametrize("backend", sorted(_kernels.BACKENDS))
    def test_transition_backends(self, backend):
        vals, cols = listing_arrays(4, 2)
        nv, nc = np.roll(vals, -1, 0), np.roll(cols, -1, 0)
        steps = _kernels.BACKENDS[backend]["transition_flips"](vals, cols, nv, nc, 2)
        assert steps.tolist() == sigma_recursive(4, 2) + [4]
        nv[3] = nv[9]
        steps = _kernels.BACKENDS[backend]["transition_flips"](vals, cols, nv, nc, 2)
        assert steps[3] == 0

    @pytest.mark.parametrize("backend", sorted(_kernels.BACKENDS))
    def test_transition_uncoloured_identity(self, backend):
        a = np.array([[1, 2, 3]], dtype=np.int64)
        z = np.zeros_like(a)
        assert _kernels.BACKENDS[backend]["transition_flips"](a, z, a, z, 1).tolist() == [1]
        assert _kernels.BACKENDS[backend]["transition_flips"](a, z, a, z, 2).tolist() == [0]


class TestStats:
    def test_base(self):
        for k in range(1, 6):
            assert exact_average(1, k) == 1

    def test_two_two(self):
        stats = avg_flip_length(2, 2)
        assert stats.exact_average == Fraction(3, 2)
        assert sigma_bar(2, 2).sum() == 12
        assert stats.empirical_average == Fraction(3, 2)

    def test_uncoloured_bound(self):
        assert exact_average(10, 1) < Fraction("2.7182819")
        assert avg_flip_length(10, 1, empirical_limit=None).below_bound

    @pytest.mark.parametrize("n,k", [(n, k) for k in (1, 2, 3, 4) for n in range(1, 8) if listing_size(n, k) <= 10**5])
    def test_exact_equals_empirical(self, n, k):
        assert exact_average(n, k) == empirical_average(n, k)

    @pytest.mark.parametrize("k", [1, 2, 3, 7])
    def test_increments(self, k):
        for n in range(1, 12):
            assert exact_average(n + 1, k) - exact_average(n, k) == Fraction(1, math.factorial(n) * k**n)

    @pytest.mark.parametrize("k", [1, 2, 3, 10])
    def test_enclosure(self, k):
        lo, hi = exp_inverse_enclosure(k)
        assert hi - lo <= Fraction(1, 10**12)
        assert lo <= Fraction(math.exp(1 / k)) <= hi or abs(float(lo) - math.exp(1 / k)) < 1e-15
        for n in (1, 5, 15, 25):
            assert certified_below(exact_average(n, k), k)
        assert not certified_below(hi, k)
        assert not certified_below(Fraction(3), 1)

    @pytest.mark.parametrize("n,k", [(4, 1), (5, 2), (3, 3), (2, 10)])
    def test_histogram(self, n, k):
        total = listing_size(n, k)
        counts = Counter(sigma_bar(n, k).tolist())
        from_recurrence = Counter(sigma_recursive(n, k) + [n])
        assert counts == from_recurrence
        for j in range(1, n):
            assert counts.get(j, 0) == total // (k**j * math.factorial(j)) * (k * j - 1)
        assert counts[n] == k * n

    def test_text(self):
        text = avg_flip_length(2, 2).to_text()
        assert "exact_average:3/2" in text
        assert "below_bound:true" in text
        assert "empirical_average:3/2" in text


@pytest.mark.parametrize("n,k", [(3, 3), (4, 2), (1, 1)])
def test_check_equivalence(n, k):
    assert check_equivalence(n, k)
