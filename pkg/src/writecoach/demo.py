"""Offline demonstration: a complete session against the scripted provider."""

from __future__ import annotations

from collections.abc import Callable

from .engine import SessionEngine
from .llm import ProviderConfig, ScriptedTransport
from .service import WritingCoach
from .storage import InMemoryStore

# One complete pass over all eleven stages. Each step is either a submit
# with its text or an advance.
DEMO_STEPS: tuple[tuple[str, str], ...] = (
    ("submit", "Who assigns homework and why? Does it help retention? What do families give up for it?"),
    ("advance", ""),
    ("submit", "https://www.ed.gov/research https://en.wikipedia.org/wiki/Homework https://nature.com/articles/study-time"),
    ("advance", ""),
    ("submit", "Middle schools should ban graded homework because it widens inequity without improving learning."),
    ("advance", ""),
    ("submit", "I. Hook and context II. Inequity at home III. Sleep and wellbeing IV. What replaces homework V. Conclusion"),
    ("advance", ""),
    ("submit", "Every evening, a quiet second school day begins at kitchen tables across the country, and not every table offers the same chances of finishing it."),
    ("advance", ""),
    ("submit", "First, graded homework rewards the home environment rather than the student, because tutors, quiet rooms, and fast internet are unevenly distributed resources."),
    ("submit", "Second, homework competes directly with sleep, and adolescent sleep research ties shorter nights to weaker memory, lower mood, and more conflict at home."),
    ("advance", ""),
    ("advance", ""),
    ("submit", "Banning graded homework does not end practice; it moves practice into the classroom, where every student works with the same support and the same clock."),
    ("advance", ""),
    ("advance", ""),
    ("advance", ""),
    ("advance", ""),
)


def build_offline_coach() -> WritingCoach:
    """A coach wired for no-network runs: memory store, scripted provider."""
    config = ProviderConfig(
        base_url="http://scripted.local", api_key="scripted", model="scripted"
    )
    return WritingCoach(InMemoryStore(), SessionEngine(config, ScriptedTransport()))


def run_demo(
    assignment: str = "Argue for or against banning homework in middle school.",
    *,
    printer: Callable[[str], None] = print,
) -> None:
    coach = build_offline_coach()
    user = coach.register("demo", "demo-password")
    state = coach.create_task(user.user_id, assignment)
    task_id = state.session_id
    printer(f"ASSIGNMENT: {assignment}")
    printer(f"STAGE: {state.current.title}")

    for action, text in DEMO_STEPS:
        if action == "submit":
            printer(f"\n>>> {text}")
            result = coach.submit(task_id, user.user_id, text)
            printer(result.report.raw)
            for a in result.annotations:
                printer(f"    [{a.start},{a.end}) {a.category.value}: {a.suggestion}")
        else:
            state = coach.advance_task(task_id, user.user_id)
            label = "session complete" if state.completed else state.current.title
            printer(f"\n=== STAGE: {label} ===")
            for view in coach.messages(task_id, user.user_id, state.current):
                if view.role in ("system", "assistant"):
                    printer(view.content)
                    for a in view.annotations:
                        printer(f"    [{a.start},{a.end}) {a.category.value}: {a.suggestion}")

    final = coach.get_task(task_id, user.user_id)
    printer(f"\ncompleted: {final.completed}")
