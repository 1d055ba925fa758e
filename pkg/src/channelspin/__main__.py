import sys

from channelspin.cli import main

sys.exit(main())
