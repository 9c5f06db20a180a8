import os
import subprocess
import sys
from pathlib import Path

import pytest

import acceptance

HERE = Path(__file__).resolve().parent
_cache: dict[int, tuple[bool, str]] = {}


def result(k):
    if k not in _cache:
        _cache[k] = acceptance.BUILDERS[k]()
    return _cache[k]


def record(k, passed, detail=""):
    line = f"criterion {k} [{acceptance.TITLES[k]}]: {'PASS' if passed else 'FAIL'}"
    if detail:
        line += f" ({detail})"
    acceptance.SUMMARY[k] = line
    print(line)


def last_lines(text, n):
    return "; ".join(text.splitlines()[-n:])


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5, 6])
def test_criterion(k):
    passed, text = result(k)
    detail = {1: last_lines(text, 3), 4: last_lines(text, 1)}.get(k, "")
    if k == 5:
        lines = text.splitlines()
        bad = [ln.split(":")[0] for ln in lines if ln.endswith("MISMATCH")]
        checked = sum(ln.endswith(("ok", "MISMATCH")) for ln in lines)
        oracle = [ln.split(" ", 3)[3].split(" theta")[0] for ln in lines if ln.startswith("oracle")]
        detail = f"{checked - len(bad)}/{checked} schemas as expected"
        if bad:
            detail += f"; mismatches: {', '.join(bad)}; oracle on antipodal algebras: {', '.join(oracle)}"
    record(k, passed, detail)
    assert passed, acceptance.SUMMARY[k]


def test_criterion_7_determinism():
    first = acceptance.full_report({k: result(k) for k in acceptance.BUILDERS})
    env = dict(os.environ, PYTHONHASHSEED="12345")
    env["PYTHONPATH"] = os.pathsep.join(filter(None, [str(HERE), env.get("PYTHONPATH")]))
    second = subprocess.run([sys.executable, str(HERE / "acceptance.py")], env=env,
                            capture_output=True, check=True).stdout
    same = first.encode() == second
    record(7, same, f"{len(second)} bytes compared across two processes")
    assert same
