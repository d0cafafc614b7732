"""Backend package for Proportionality Lab.

Importing ``backend`` makes the flat package names under ``backend/core``
(``config``, ``election``, ``rules``, ``axioms``, ...) importable, which is
how the CLI entry point, lab worker processes and tests refer to them.
"""
import sys
from pathlib import Path

BACKEND_ROOT = Path(__file__).parent
CORE_ROOT = BACKEND_ROOT / "core"
PROJECT_ROOT = BACKEND_ROOT.parent

__version__ = "1.0.0"


def _register_import_roots() -> None:
    # core first so ``config`` resolves to backend/core/config.py
    for root in (BACKEND_ROOT, CORE_ROOT):
        if str(root) not in sys.path:
            sys.path.insert(0, str(root))


_register_import_roots()
