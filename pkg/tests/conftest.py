import json
import random
from pathlib import Path

import pytest

from nlmopt import cli

FIXTURES = Path(__file__).parent / "fixtures"


def run_cli(capsys, *argv):
    """(exit code, stdout, stderr) for one in-process CLI invocation."""
    code = cli.main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def fixtures():
    return FIXTURES


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def write_json(tmp_path):
    def write(name, obj):
        path = tmp_path / name
        path.write_text(json.dumps(obj))
        return path

    return write
