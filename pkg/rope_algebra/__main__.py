import sys

from rope_algebra.main import main

sys.exit(main())
