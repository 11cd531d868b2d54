from __future__ import annotations

import pytest

from writecoach.psl import load_rules, public_suffix, registrable_domain

# small rule set exercising every matching mode, independent of the snapshot
RULES = frozenset({"com", "co.uk", "uk", "*.ck", "!www.ck", "k12.us", "us"})


@pytest.mark.parametrize(
    "host,expected",
    [
        ("example.com", "com"),
        ("a.b.example.com", "com"),
        ("bbc.co.uk", "co.uk"),  # longest rule beats "uk"
        ("www.bbc.co.uk", "co.uk"),
        ("example.zz", "zz"),  # unmatched -> final label fallback
        ("foo.bar.ck", "bar.ck"),  # *.ck consumes one extra label
        ("www.ck", "ck"),  # !www.ck exception undoes the wildcard
        ("shop.k12.us", "k12.us"),
        ("EXAMPLE.COM", "com"),  # case-insensitive
    ],
)
def test_public_suffix(host, expected):
    assert public_suffix(host, RULES) == expected


@pytest.mark.parametrize(
    "host,expected",
    [
        ("example.com", "example.com"),
        ("a.b.example.com", "example.com"),
        ("news.bbc.co.uk", "bbc.co.uk"),
        ("bbc.co.uk", "bbc.co.uk"),
        ("foo.bar.ck", "foo.bar.ck"),  # suffix bar.ck + one label
        ("www.ck", "www.ck"),  # exception: www.ck is registrable
        ("localhost", "localhost"),  # single label returned unchanged
        ("co.uk", "co.uk"),  # host that IS a suffix returned unchanged
    ],
)
def test_registrable_domain(host, expected):
    assert registrable_domain(host, RULES) == expected


def test_bundled_snapshot_loads_and_matches():
    rules = load_rules()
    assert "com" in rules
    assert "co.uk" in rules
    assert registrable_domain("news.bbc.co.uk") == "bbc.co.uk"
    assert registrable_domain("www.example.edu") == "example.edu"


def test_comments_and_blanks_skipped(tmp_path):
    path = tmp_path / "rules.dat"
    path.write_text("# comment\n\n// also comment\ncom\n  co.uk  \n", encoding="utf-8")
    assert load_rules(path) == frozenset({"com", "co.uk"})


def test_registrable_is_idempotent():
    for host in ("a.b.example.com", "news.bbc.co.uk", "foo.bar.ck"):
        first = registrable_domain(host, RULES)
        assert registrable_domain(first, RULES) == first
