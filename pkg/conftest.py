import os
import sys

# Let the tests import dpx from a fresh checkout before `pip install -e .`.
_src = os.path.join(os.path.dirname(os.path.abspath(__file__)), "src")
if _src not in sys.path:
    sys.path.insert(0, _src)
