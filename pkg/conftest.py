"""Make the src-layout package importable for in-repo pytest runs.

An installed tristarter still wins if it precedes this path; building the
kernels in place (`python setup.py build_ext --inplace`) drops the
extension next to the source so this path sees it too.
"""

import sys
from pathlib import Path

SRC = Path(__file__).parent / "src"
if str(SRC) not in sys.path:
    sys.path.insert(0, str(SRC))
