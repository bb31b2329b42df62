import sys

from .cli_explorer import main

sys.exit(main())
