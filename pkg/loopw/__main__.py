import sys

from loopw.main import main

sys.exit(main())
