"""Main entry point for Proportionality Lab.

Approval-based committee elections with exact proportionality checks:
- Committee rules (PAV family, Monroe family, Equal Shares, seq-Phragmén)
- Axiom verifiers with certificates (JR ... FJR, core, EJR+/PJR+, priceability, PER)
- Balanced Biclique reductions and the empirical implication lab

Usage:
    python main.py [command] [options]

Examples:
    python main.py elect --rule seq-pav --input tests/fixtures/E1.appr
    python main.py verify --axiom fpjr --input tests/fixtures/E1.appr --committee 0,1,2,6,7,8,9,10,11,12,13,14
    python main.py price --input tests/fixtures/E2.appr --committee 2,3,4
    python main.py lab --trials 200 --model impartial --n 8 --m 8 --k 4

For full command list:
    python main.py --help
"""
import sys

import backend  # noqa: F401  (puts backend/core on sys.path)
from cli.main import cli

if __name__ == "__main__":
    sys.exit(cli())
