import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from bbsolver.qubo import JsspInstance

REPO_ROOT = Path(__file__).resolve().parents[1]

TOY_KITCHEN = {
    "machines": ["mixer", "oven"],
    "t_max": 3,
    "jobs": {
        "cupcakes": [["mixer", 2], ["oven", 1]],
        "smoothie": [["mixer", 1]],
        "lasagna": [["oven", 2]],
    },
}


@pytest.fixture
def toy_instance() -> JsspInstance:
    """3 jobs / 2 machines / 4 operations kitchen instance, horizon 3."""
    return JsspInstance.from_dict(TOY_KITCHEN)
