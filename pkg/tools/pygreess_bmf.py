#!/usr/bin/env python
"""

Boolean matrix factorization workbench command-line tool.

See pygreess_bmf.py --help for the subcommands.

"""

import pygreess.cli


if __name__ == '__main__':
    pygreess.cli.main()
