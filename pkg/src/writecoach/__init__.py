"""writecoach: a stage-based academic writing coach service.

The package walks a writer through eleven fixed writing stages, generating
criteria-structured feedback at each stage without ever writing content for
the user. Feedback comes from a pluggable chat-completions provider; a
deterministic scripted provider backs all tests.
"""

__version__ = "0.1.0"
