"""
Driving the command line tool from Python
=========================================

The same steps work from a shell with ``mvbp generate``, ``mvbp solve``
and ``mvbp verify``.
"""

import tempfile
from pathlib import Path

from mvbp.cli import main

tmp = Path(tempfile.mkdtemp())
inst = tmp / "inst.json"
out = tmp / "packing.json"

main(["generate", "-n", "7", "-D", "2", "-T", "2", "--seed", "11", "--out", str(inst)])
print("solve exit code:", main(["solve", str(inst), "--mode", "mvbp", "--out", str(out)]))
print("verify exit code:", main(["verify", str(inst), str(out)]))
print("compare exit code:", main(["compare", str(inst)]))
