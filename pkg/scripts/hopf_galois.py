"""
Run the command line interface with the configuration of `settings.py` (and `settings_prod.py`, if any)
"""

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(os.path.abspath(__file__)), '..'))

from settings import CLI_CONFIG  # noqa: E402

from hopf_galois import cli  # noqa: E402

if __name__ == '__main__':
    sys.exit(cli.main(config=CLI_CONFIG))
