"""Per-stage coaching templates, loaded from versioned YAML data files.

One file per stage under ``data/``, each carrying the named fields
``stage``, ``persona``, ``limiters``, ``criteria``, ``output_format``,
``validation`` and ``slots``. Files are data, not code: wording can be
tuned without touching the package. The loader checks each file against
the stage table so criteria order cannot drift.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from importlib import resources as importlib_resources
from pathlib import Path

import yaml

from ..errors import CoachError
from ..stages import Stage, stage_spec

# Slot names a template may reference; resolution happens at render time.
KNOWN_SLOTS = (
    "assignment_prompt",
    "key_questions",
    "thesis",
    "outline",
    "essay",
    "prior_feedback",
)

PERSONA_PHRASE = "Act as a writing coach"
NON_GENERATION_LIMITER = "You must not suggest any ideas or examples for the essay"


class TemplateDataError(CoachError):
    code = "template_data_error"


@dataclass(frozen=True)
class PromptTemplate:
    stage: Stage
    persona: str
    limiters: tuple[str, ...]
    criteria: tuple[str, ...]
    output_format_instruction: str
    validation_directive: str | None
    context_slots: tuple[str, ...]


def _check(template: PromptTemplate, source: str) -> PromptTemplate:
    if PERSONA_PHRASE not in template.persona:
        raise TemplateDataError(f"{source}: persona must contain {PERSONA_PHRASE!r}")
    spec = stage_spec(template.stage)
    if template.criteria != spec.criteria:
        raise TemplateDataError(
            f"{source}: criteria {template.criteria} do not match the stage table {spec.criteria}"
        )
    for slot in template.context_slots:
        if slot not in KNOWN_SLOTS:
            raise TemplateDataError(f"{source}: unknown context slot {slot!r}")
    return template


def parse_template(text: str, *, source: str = "<string>") -> PromptTemplate:
    """Parse one template file. Inverse of :func:`dump_template`."""
    doc = yaml.safe_load(text)
    if not isinstance(doc, dict):
        raise TemplateDataError(f"{source}: expected a mapping at top level")
    try:
        template = PromptTemplate(
            stage=Stage.from_title(doc["stage"]),
            persona=doc["persona"].strip(),
            limiters=tuple(doc.get("limiters") or ()),
            criteria=tuple(doc.get("criteria") or ()),
            output_format_instruction=(doc.get("output_format") or "").strip(),
            validation_directive=(doc["validation"].strip() if doc.get("validation") else None),
            context_slots=tuple(doc.get("slots") or ()),
        )
    except (KeyError, AttributeError, ValueError) as exc:
        raise TemplateDataError(f"{source}: {exc}") from exc
    return _check(template, source)


def dump_template(template: PromptTemplate) -> str:
    """Serialize a template back to its file form (lossless round trip)."""
    doc = {
        "stage": template.stage.title,
        "persona": template.persona,
        "limiters": list(template.limiters),
        "criteria": list(template.criteria),
        "output_format": template.output_format_instruction,
        "validation": template.validation_directive,
        "slots": list(template.context_slots),
    }
    return yaml.safe_dump(doc, sort_keys=False, allow_unicode=True, width=100)


def load_template_dir(path: Path) -> dict[Stage, PromptTemplate]:
    templates: dict[Stage, PromptTemplate] = {}
    for file in sorted(path.glob("*.yaml")):
        template = parse_template(file.read_text(encoding="utf-8"), source=file.name)
        if template.stage in templates:
            raise TemplateDataError(f"duplicate template for stage {template.stage.title}")
        templates[template.stage] = template
    missing = [stage.title for stage in Stage if stage not in templates]
    if missing:
        raise TemplateDataError(f"missing templates for: {', '.join(missing)}")
    return templates


_lock = threading.Lock()
_registry: dict[Stage, PromptTemplate] | None = None


def _bundled_dir() -> Path:
    return Path(str(importlib_resources.files("writecoach.prompts") / "data"))


def template_for(stage: Stage) -> PromptTemplate:
    """Return the bundled template for ``stage``. Loaded once, then cached."""
    global _registry
    if _registry is None:
        with _lock:
            if _registry is None:
                _registry = load_template_dir(_bundled_dir())
    return _registry[stage]
