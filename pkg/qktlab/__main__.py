import sys

from qktlab.main import main

sys.exit(main())
