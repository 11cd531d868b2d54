"""Deterministic reliability tiers for resource links.

The tier comes from URL structure alone so guidance is stable and testable:

    tld in {edu, gov}                 -> High
    registrable domain on allowlist   -> Medium
    anything else                     -> Low
    plain http caps the tier at Low
    unparsable input                  -> Invalid

A model may add an explanatory rationale afterwards, but it can never
change a tier.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from importlib import resources as importlib_resources
from pathlib import Path
from urllib.parse import urlsplit

from .errors import CoachError
from .psl import registrable_domain

HIGH_TLDS = frozenset({"edu", "gov"})


class UnparsableUrl(CoachError):
    code = "unparsable_url"


class Tier(str, Enum):
    HIGH = "High"
    MEDIUM = "Medium"
    LOW = "Low"
    INVALID = "Invalid"


@dataclass(frozen=True)
class UrlParts:
    scheme: str
    host: str
    registrable_domain: str
    tld: str
    path: str


@dataclass(frozen=True)
class ReliabilityAssessment:
    url: str
    tier: Tier
    reasons: tuple[str, ...]
    rationale: str | None = None


@lru_cache(maxsize=1)
def _allowlist() -> frozenset[str]:
    path = Path(str(importlib_resources.files("writecoach") / "data" / "domain_allowlist.txt"))
    domains = set()
    for line in path.read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            domains.add(line.lower())
    return frozenset(domains)


def parse_url(text: str) -> UrlParts:
    """Parse an absolute http/https URL; anything else is UnparsableUrl."""
    trimmed = text.strip()
    try:
        split = urlsplit(trimmed)
    except ValueError as exc:
        raise UnparsableUrl(trimmed) from exc
    if split.scheme not in ("http", "https"):
        raise UnparsableUrl(trimmed)
    host = (split.hostname or "").lower()
    if not host:
        raise UnparsableUrl(trimmed)
    return UrlParts(
        scheme=split.scheme,
        host=host,
        registrable_domain=registrable_domain(host),
        tld=host.rsplit(".", 1)[-1],
        path=split.path,
    )


def score(parts: UrlParts) -> ReliabilityAssessment:
    """Tier a parsed URL. Pure in (scheme, registrable_domain, tld)."""
    reasons: list[str] = []
    if parts.tld in HIGH_TLDS:
        tier = Tier.HIGH
        reasons.append(f"tld_{parts.tld}")
    elif parts.registrable_domain in _allowlist():
        tier = Tier.MEDIUM
        reasons.append("allowlist_match")
    else:
        tier = Tier.LOW
        reasons.append("default_low")
    if parts.scheme == "http" and tier is not Tier.LOW:
        tier = Tier.LOW
        reasons.append("http_downgrade")
    url = f"{parts.scheme}://{parts.host}{parts.path}"
    return ReliabilityAssessment(url=url, tier=tier, reasons=tuple(reasons))


def evaluate_all(
    urls: list[str],
    rationale_fn=None,
) -> list[ReliabilityAssessment]:
    """Assess every URL in order; parse failures become Invalid entries.

    ``rationale_fn(assessment) -> str`` may attach an explanatory note to
    parsed URLs; rationale failures are swallowed so a provider outage never
    breaks the batch.
    """
    out: list[ReliabilityAssessment] = []
    for url in urls:
        try:
            parts = parse_url(url)
        except UnparsableUrl:
            out.append(
                ReliabilityAssessment(url=url, tier=Tier.INVALID, reasons=("unparsable",))
            )
            continue
        assessment = score(parts)
        assessment = ReliabilityAssessment(
            url=url.strip(), tier=assessment.tier, reasons=assessment.reasons
        )
        if rationale_fn is not None:
            try:
                rationale = rationale_fn(assessment)
            except Exception:
                rationale = None
            if rationale:
                assessment = ReliabilityAssessment(
                    url=assessment.url, tier=assessment.tier,
                    reasons=assessment.reasons, rationale=rationale,
                )
        out.append(assessment)
    return out
