import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from bslab.exact_poly import parse_polynomial  # noqa: E402


@pytest.fixture
def P():
    """Parse with variables inferred from a compact string: P("x^2+y^3", "xy")."""
    def make(text, names="xy"):
        names = names.split(",") if "," in names else list(names)
        return parse_polynomial(text, names)
    return make
