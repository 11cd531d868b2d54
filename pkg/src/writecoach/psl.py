"""Registrable-domain lookup against a bundled public-suffix snapshot.

The snapshot is a frozen subset of the public suffix list, shipped with the
package so tier decisions stay reproducible. Standard matching rules apply:
longest matching rule wins, ``*.`` rules match one extra label, ``!`` rules
carve out exceptions, and an unmatched host falls back to its final label.
"""

from __future__ import annotations

from functools import lru_cache
from importlib import resources as importlib_resources
from pathlib import Path


def load_rules(path: Path | None = None) -> frozenset[str]:
    if path is None:
        path = Path(str(importlib_resources.files("writecoach") / "data" / "public_suffix_snapshot.dat"))
    rules = set()
    for line in path.read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if line and not line.startswith("//") and not line.startswith("#"):
            rules.add(line.lower())
    return frozenset(rules)


@lru_cache(maxsize=1)
def _bundled_rules() -> frozenset[str]:
    return load_rules()


def public_suffix(host: str, rules: frozenset[str] | None = None) -> str:
    rules = rules if rules is not None else _bundled_rules()
    labels = host.lower().split(".")
    best = labels[-1]  # implicit "*" fallback rule
    best_len = 1
    for i in range(len(labels)):
        candidate = ".".join(labels[i:])
        length = len(labels) - i
        if f"!{candidate}" in rules:
            # exception rule: the suffix is everything after the first label
            return ".".join(labels[i + 1:])
        if candidate in rules and length > best_len:
            best, best_len = candidate, length
        if i > 0:
            wildcard = "*." + ".".join(labels[i:])
            if wildcard in rules and length + 1 > best_len:
                best, best_len = ".".join(labels[i - 1:]), length + 1
    return best


def registrable_domain(host: str, rules: frozenset[str] | None = None) -> str:
    """Suffix plus one label, e.g. ``news.bbc.co.uk`` -> ``bbc.co.uk``.

    A host that is itself a public suffix (or a single label) is returned
    unchanged.
    """
    host = host.lower()
    suffix = public_suffix(host, rules)
    if host == suffix:
        return host
    prefix = host[: -(len(suffix) + 1)]
    return prefix.split(".")[-1] + "." + suffix
