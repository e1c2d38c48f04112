import runpy
import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parent.parent


@pytest.mark.parametrize(
    "script, args, expect",
    [
        ("democracy_table.py", [str(ROOT / "configs" / "nakano_alt12.json"), "--Nmax", "4"], "4,2,4,2,monotone-window"),
        ("greedy_failure.py", ["--trials", "5", "--support", "4"], "ratio 1.179090120"),
        ("condition_c.py", ["--kmax", "3"], "s_n = 1/log(n+1): fails"),
    ],
)
def test_script_runs(script, args, expect, capsys, monkeypatch):
    monkeypatch.setattr(sys, "argv", [script] + args)
    runpy.run_path(str(ROOT / "scripts" / script), run_name="__main__")
    assert expect in capsys.readouterr().out
