"""Tests for the Moebius sieve, table and sieve cache."""

import math

import numpy as np
import pytest

from app.exceptions import SieveCacheError, ValidationError
from app.models import MoebiusTable
from app.services.numtheory import iter_moebius_segments, moebius_sieve
from app.services.sieve_cache import HEADER, MAGIC, SieveCache


def trial_division_mu(n: int) -> int:
    """mu(n) by factoring n."""
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result


class TestMoebiusSieve:
    """Test the segmented sieve."""

    def test_matches_trial_division(self, table):
        """Test every n <= 10^4 against trial division."""
        expected = [trial_division_mu(n) for n in range(1, 10_001)]
        assert table.values[1:].tolist() == expected

    def test_small_values(self):
        """Test the first values of mu."""
        table = moebius_sieve(12)
        assert table.values[1:].tolist() == [
            1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0,
        ]

    def test_segment_size_independent(self):
        """Test tiny segments give the same table."""
        whole = moebius_sieve(5000)
        segmented = moebius_sieve(5000, segment_size=97)
        assert np.array_equal(whole.values, segmented.values)

    def test_segments_cover_range(self):
        """Test streamed segments are contiguous and complete."""
        starts = []
        total = 0
        for lo, segment in iter_moebius_segments(1000, segment_size=300):
            starts.append(lo)
            total += segment.size
        assert starts == [1, 301, 601, 901]
        assert total == 1000

    def test_multiplicative(self, table):
        """Test mu(mn) = mu(m) mu(n) for coprime m, n."""
        for m in range(1, 100):
            for n in range(1, 100):
                if math.gcd(m, n) == 1:
                    assert table.mu(m * n) == table.mu(m) * table.mu(n)

    def test_invalid_limit(self):
        """Test limits below 1 are rejected."""
        with pytest.raises(ValidationError):
            moebius_sieve(0)

    def test_limit_above_maximum(self, monkeypatch):
        """Test the configured maximum limit is enforced."""
        from app.services import numtheory

        monkeypatch.setattr(numtheory.settings, "moebius_max_limit", 100)
        with pytest.raises(ValidationError) as exc_info:
            moebius_sieve(101)
        assert exc_info.value.field == "limit"


class TestMoebiusTable:
    """Test table helpers."""

    def test_mertens(self, table):
        """Test known Mertens values."""
        assert table.mertens(10) == -1
        assert table.mertens(100) == 1
        assert table.mertens(1000) == 2
        assert table.mertens(10_000) == -23

    def test_squarefree_support(self, table):
        """Test the squarefree support below a truncation."""
        n, mu = table.squarefree_support(10)
        assert n.tolist() == [1, 2, 3, 5, 6, 7, 10]
        assert mu.tolist() == [1.0, -1.0, -1.0, -1.0, 1.0, -1.0, 1.0]

    def test_support_beyond_limit(self, table):
        """Test a truncation above the sieved limit is rejected."""
        with pytest.raises(ValidationError):
            table.squarefree_support(10_001)

    def test_read_only(self, table):
        """Test the values array cannot be modified."""
        with pytest.raises(ValueError):
            table.values[1] = 0

    def test_truncated(self, table):
        """Test truncation keeps a prefix."""
        small = table.truncated(100)
        assert small.limit == 100
        assert small.mertens() == 1

    def test_mu_out_of_range(self, table):
        """Test mu outside the sieved range."""
        with pytest.raises(ValidationError):
            table.mu(0)

    def test_shape_mismatch(self):
        """Test values must hold limit + 1 entries."""
        with pytest.raises(ValidationError):
            MoebiusTable(limit=5, values=np.zeros(3, dtype=np.int8))


class TestSieveCache:
    """Test sieve persistence."""

    def test_save_and_load(self, tmp_path):
        """Test a stored table loads back unchanged."""
        cache = SieveCache(tmp_path)
        table = moebius_sieve(3000)
        path = cache.save(table)
        assert path.name == "moebius_3000.mu"
        loaded = cache.load(path)
        assert loaded.limit == 3000
        assert np.array_equal(loaded.values, table.values)

    def test_larger_table_sliced(self, tmp_path):
        """Test a request is served by a larger cached table."""
        cache = SieveCache(tmp_path)
        cache.save(moebius_sieve(5000))
        table = cache.get_or_build(1000, persist=False)
        assert table.limit == 1000
        assert table.mertens() == 2
        assert not cache.path_for(1000).exists()

    def test_miss_builds_and_persists(self, tmp_path):
        """Test a cache miss sieves and stores the table."""
        cache = SieveCache(tmp_path)
        table = cache.get_or_build(500)
        assert table.limit == 500
        assert cache.path_for(500).exists()

    def test_bad_magic(self, tmp_path):
        """Test a foreign file is rejected."""
        path = tmp_path / "moebius_10.mu"
        path.write_bytes(HEADER.pack(b"XXXX", 10) + bytes(10))
        with pytest.raises(SieveCacheError) as exc_info:
            SieveCache(tmp_path).load(path)
        assert exc_info.value.code == "CACHE_ERROR"

    def test_truncated_file(self, tmp_path):
        """Test a file shorter than its header claims."""
        path = tmp_path / "moebius_10.mu"
        path.write_bytes(HEADER.pack(MAGIC, 10) + bytes([1, 255, 255]))
        with pytest.raises(SieveCacheError):
            SieveCache(tmp_path).load(path)

    def test_missing_file(self, tmp_path):
        """Test a missing file."""
        with pytest.raises(SieveCacheError) as exc_info:
            SieveCache(tmp_path).load(tmp_path / "nope.mu")
        assert exc_info.value.path == tmp_path / "nope.mu"
