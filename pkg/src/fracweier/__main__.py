import sys

from fracweier.cli import main

sys.exit(main())
