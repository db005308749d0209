"""Default limits and seeds; every value can be overridden per call or by CLI flag."""

from __future__ import annotations

# Largest base carrier a powerset carrier may be built over (2**6 = 64 subsets).
POWERSET_CAP = 6

# Largest product of row degrees a choice-function enumeration may visit.
ENUMERATION_CAP = 10**6

DEFAULT_SEED = 0
DEFAULT_SAMPLES = 10**4

# Largest base size an exhaustive sweep accepts, keyed by the number of
# quantified multirelations in the law.
EXHAUSTIVE_LIMITS: dict[int, int] = {1: 2, 2: 2, 3: 1}

# Unit search visits every candidate and checks it against every operand.
UNIT_SEARCH_LIMIT = 2

# Labels used for the elements of generated universes.
UNIVERSE_LABELS = ("a", "b", "c", "d", "e", "f")
