from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from edsprim.curve import validate_curve  # noqa: E402

# (label, a-invariants, generator, conductor); conductors from the standard tables
CURVES = {
    "37a1": ((0, 0, 1, -1, 0), (0, 0), 37),
    "43a1": ((0, 1, 1, 0, 0), (0, 0), 43),
    "53a1": ((1, -1, 1, 0, 0), (0, 0), 53),
    "389a1": ((0, 1, 1, -2, 0), (0, 0), 389),
    "5077a1": ((0, 0, 1, -7, 6), (0, 2), 5077),
}


@pytest.fixture(scope="session")
def reference():
    a, pt, _ = CURVES["37a1"]
    E = validate_curve(*a)
    return E, E.point(*pt)


@pytest.fixture(scope="session")
def reference_terms(reference):
    from edsprim.eds import generate_sequence
    E, P = reference
    return generate_sequence(E, P, 60)
