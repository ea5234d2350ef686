import sys

from vvmc.cli import main

sys.exit( main() )
