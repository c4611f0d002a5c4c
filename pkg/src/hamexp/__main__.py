import sys

from hamexp.cli import main

sys.exit(main())
