"""Shared, cached assemblies and verifier runs (the full runs take minutes).

The headline and wingless runs go through the command line exactly as a user
would type them; tests read the JSON reports they leave behind.
"""

import json
import time

import pytest

from decalock import build_chain
from decalock.cli import main


@pytest.fixture(scope="session")
def chain4():
    return build_chain(4)


@pytest.fixture(scope="session")
def chain4_fixed(chain4):
    return chain4.with_fixed(chain4.end_tiles())


def _cli_run(tmp, name, build_args):
    scene, report = tmp / f"{name}.scene", tmp / f"{name}.json"
    build_exit = main(["build", "chain", "--count", "4", *build_args, "-o", str(scene)])
    t0 = time.perf_counter()
    verify_exit = main(["verify", str(scene), "--fix-ends", "--report", str(report)])
    wall = time.perf_counter() - t0
    doc = json.loads(report.read_text()) if report.exists() else None
    return {"build_exit": build_exit, "verify_exit": verify_exit, "wall": wall,
            "doc": doc, "scene": scene, "report": report}


@pytest.fixture(scope="session")
def headline(tmp_path_factory):
    """``build chain --count 4`` then ``verify --fix-ends`` at default parameters."""
    return _cli_run(tmp_path_factory.mktemp("headline"), "c4", [])


@pytest.fixture(scope="session")
def wingless(tmp_path_factory):
    return _cli_run(tmp_path_factory.mktemp("wingless"), "c4w", ["--no-wings"])


# ------------------------------------------------------ acceptance summary

_ACCEPTANCE = []


@pytest.fixture
def record():
    """``record(criterion, ok, detail)`` logs one line for the end-of-run summary."""
    def _record(criterion, ok, detail):
        line = f"criterion {criterion}: {'PASS' if ok else 'FAIL'}  {detail}"
        _ACCEPTANCE.append((criterion, line))
        print(line)
        return ok
    return _record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(_ACCEPTANCE):
        terminalreporter.write_line(line)
