import pytest

from thzfronthaul.datasets import table2, table2_check


class TestTable2:
    def test_row_count(self):
        assert len(table2()) == 7

    def test_h_band_rows(self):
        thz = [r for r in table2() if r.center_frequency >= 100e9]
        assert [r.reference for r in thz] == ["[21]", "[22]", "[23]", "[24]", "[25]"]

    def test_transcribed_values(self):
        r = {x.reference: x for x in table2()}["[25]"]
        assert (r.center_frequency, r.data_rate, r.distance) == (300e9, 102.4e9, 500.0)
        assert (r.signal_generation, r.architecture) == ("opto-electronic", "simplex")

    def test_only_upper_bound_row_flagged(self):
        flagged = [r.reference for r in table2() if r.rate_is_upper_bound]
        assert flagged == ["[10]"]

    def test_reference_operating_point(self):
        hits = table2_check(15.93e9, 500.0)
        assert [r.reference for r in hits] == ["[25]"]

    def test_long_range_low_rate(self):
        refs = {r.reference for r in table2_check(1e6, 1.0)}
        assert "[10]" not in refs
        assert len(refs) == 6

    def test_nothing_meets_extreme_demand(self):
        assert table2_check(1e13, 1e5) == []

    @pytest.mark.parametrize("rate,dist", [(0, 500), (1e9, 0), (-1, 10)])
    def test_rejects_non_positive(self, rate, dist):
        with pytest.raises(ValueError):
            table2_check(rate, dist)
