"""Smoke test for the pysimpgd extension.

Build it first with `cargo build -p simpgd-py --features extension-module`; the script copies
the shared library next to itself under the importable name when it is not installed.
"""

import importlib
import json
import shutil
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def load():
    try:
        return importlib.import_module("pysimpgd")
    except ImportError:
        pass
    for profile in ("release", "debug"):
        lib = ROOT / "target" / profile / "libpysimpgd.so"
        if lib.exists():
            tmp = Path(tempfile.mkdtemp())
            shutil.copy(lib, tmp / "pysimpgd.so")
            sys.path.insert(0, str(tmp))
            return importlib.import_module("pysimpgd")
    sys.exit("pysimpgd is not built")


def main():
    m = load()
    fx = m.fixtures()
    z2 = fx["z2const.json"]
    assert m.wbar_counts(z2, 4) == [1, 2, 4, 8, 16]
    assert m.j_weq(fx["twocomp.json"])
    assert m.kan(fx["interval.json"], 4, 3) == (True, True)
    report = json.loads(m.classify(fx["pt.json"], fx["twocomp.json"], "sgpd"))
    assert (report["torsor_classes"], report["homotopy_classes"]) == (2, 2)
    code, out = m.run(["check", "j-weq", str(ROOT / "fixtures" / "z2const.json")])
    assert code == 0 and "PASS" in out, out
    try:
        m.wbar_counts("{}", 4)
    except ValueError as e:
        assert "#/name" in str(e)
    else:
        raise AssertionError("malformed coefficients were accepted")
    print("ok")


if __name__ == "__main__":
    main()
