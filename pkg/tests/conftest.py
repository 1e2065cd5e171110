"""Shared fixtures: schema loading and an in-process CLI runner."""

import json
import pathlib

import pytest

from pseudoherm import cli

SCHEMA_DIR = pathlib.Path(__file__).resolve().parents[1] / "docs" / "schemas"


@pytest.fixture(scope="session")
def schemas():
    """All shipped JSON schemas, keyed by file stem (e.g. 'scan.schema')."""
    out = {}
    for path in SCHEMA_DIR.glob("*.schema.json"):
        out[path.stem] = json.loads(path.read_text(encoding="utf-8"))
    return out


@pytest.fixture
def run_cli(capsys):
    """Invoke the CLI in-process; returns (exit_code, stdout, stderr).

    argparse-level failures raise SystemExit, which is converted into the
    exit code so tests can treat usage errors uniformly.
    """

    def _run(*argv):
        try:
            code = cli.main(list(argv))
        except SystemExit as exc:  # argparse validation path
            code = int(exc.code) if exc.code is not None else 0
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return _run
