import sys

from cvoml.cli import main

sys.exit(main())
