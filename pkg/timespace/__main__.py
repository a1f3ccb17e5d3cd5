import sys

from timespace.cli import main

sys.exit(main())
