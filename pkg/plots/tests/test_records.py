import pytest
from conftest import mk_record, write_records_csv

from latplots.records import (
    CSV_HEADER,
    ESTIMATOR_ORDER,
    check_estimators,
    filter_records,
    present_estimators,
    read_records,
)


class TestReadRecords:
    def test_roundtrip(self, tmp_path):
        recs = [
            mk_record("random_z", value=-3.25, n=251),
            mk_record("alg1", value=-5.5, n=251, rep=1),
            mk_record("mc", fn="f2", m=64, n=0, value=1.0078125),
        ]
        path = write_records_csv(tmp_path / "r.csv", recs)
        assert read_records(path) == recs

    def test_negative_infinity_value(self, tmp_path):
        path = write_records_csv(
            tmp_path / "r.csv", [mk_record("mc", fn="f1", value=float("-inf"))]
        )
        (rec,) = read_records(path)
        assert rec.value == float("-inf")

    def test_bad_header(self, tmp_path):
        path = tmp_path / "r.csv"
        path.write_text("a,b,c\n1,2,3\n")
        with pytest.raises(ValueError, match="header"):
            read_records(path)

    def test_bad_field_count(self, tmp_path):
        path = tmp_path / "r.csv"
        path.write_text(CSV_HEADER + "\nx,alg1,f1,2,1.0,32,17,0\n")
        with pytest.raises(ValueError, match="line 2"):
            read_records(path)

    def test_unknown_estimator(self, tmp_path):
        path = tmp_path / "r.csv"
        path.write_text(CSV_HEADER + "\nx,sobol,f1,2,1.0,32,17,0,1.0,3\n")
        with pytest.raises(ValueError, match="unknown estimator"):
            read_records(path)


class TestFilters:
    def test_check_estimators_orders_and_validates(self):
        assert check_estimators(["mc", "random_z"]) == ("random_z", "mc")
        with pytest.raises(ValueError, match="unknown estimator"):
            check_estimators(["halton"])

    def test_filter_by_estimator_and_fn(self):
        recs = [
            mk_record("alg1", fn="f1", m=32),
            mk_record("alg1", fn="f2", m=32),
            mk_record("mc", fn="f1", m=32),
        ]
        sub = filter_records(recs, estimators=["alg1"], fns=["f1"])
        assert sub == [recs[0]]

    def test_filter_by_modulus_and_budget(self):
        recs = [
            mk_record("alg1", fn="f1", m=32, n=17),
            mk_record("alg1", fn="f1", m=64, n=37),
            mk_record("alg1", fn="f1", m=128, n=67),
        ]
        assert filter_records(recs, n=37) == [recs[1]]
        assert filter_records(recs, m_min=64, m_max=64) == [recs[1]]

    def test_present_estimators_in_display_order(self):
        recs = [mk_record("mc"), mk_record("random_z"), mk_record("mc")]
        assert present_estimators(recs) == ("random_z", "mc")
        assert present_estimators([]) == ()

    def test_order_constant_is_complete(self):
        assert ESTIMATOR_ORDER == ("random_z", "alg1", "cbc_rand", "cbc_det", "mc")
