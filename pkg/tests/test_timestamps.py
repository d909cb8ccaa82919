import pytest

from crossid.timestamps import Timestamp, TimestampError, parse_timestamp


def test_ampm_form():
    assert parse_timestamp("07:19:35 PM, 31 August, 2014") == Timestamp(2014, 8, 31, 19, 19, 35)


def test_iso_epoch():
    assert parse_timestamp("1970-01-01T00:00:00") == Timestamp(1970, 1, 1, 0, 0, 0)


def test_tuple_form():
    assert parse_timestamp("{2014, 08, 31, 19, 19, 35}") == Timestamp(2014, 8, 31, 19, 19, 35)
    assert parse_timestamp("2014,8,31,19,19,35") == Timestamp(2014, 8, 31, 19, 19, 35)


def test_leap_year():
    assert parse_timestamp("2016-02-29T12:00:00").day == 29
    with pytest.raises(TimestampError, match="day"):
        parse_timestamp("2017-02-29T12:00:00")


@pytest.mark.parametrize(
    "raw,component",
    [
        ("2017-13-01T00:00:00", "month"),
        ("2017-01-32T00:00:00", "day"),
        ("2017-01-01T24:00:00", "hour"),
        ("2017-01-01T00:60:00", "minute"),
        ("2017-01-01T00:00:61", "second"),
    ],
)
def test_component_errors_are_named(raw, component):
    with pytest.raises(TimestampError, match=component):
        parse_timestamp(raw)


def test_malformed_string():
    with pytest.raises(TimestampError):
        parse_timestamp("yesterday at noon")


def test_roundtrip_through_canonical_serialization():
    t = parse_timestamp("2014-08-31T19:19:35")
    assert parse_timestamp(t.isoformat()) == t


def test_total_order_and_fractional_days():
    a = Timestamp(2014, 1, 1, 0, 0, 0)
    b = Timestamp(2014, 1, 2, 12, 0, 0)
    assert a < b
    assert b.days_since(a) == 1.5
    assert a.days_since(b) == -1.5


def test_am_pm_edge_hours():
    assert parse_timestamp("12:00:00 AM, 1 January, 2000").hour == 0
    assert parse_timestamp("12:00:00 PM, 1 January, 2000").hour == 12
