import sys

from GenFlag.cli import main

# python main.py projective fixtures/ZETA.flag
# python main.py commensurable GR2.flag GR3.flag
# python main.py truncate ASC.flag --level 3

if __name__ == "__main__":
    sys.exit(main())
