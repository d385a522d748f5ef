import sys

from qdecay.main.cli import main
from qdecay.utils import print_err

try:
    sys.exit(main())
except SystemExit:
    raise
except Exception as e:
    print_err(f"Unhandled exception: {e}")
    sys.exit(1)
