"""
Main application - conic viewpoint toolkit.

Commands:
- classify: surface type of a confocal family member
- coords: Cartesian <-> confocal coordinates
- viewpoints: where a conic looks like a circle, with cone axis and aperture
- export: sampled curves, surfaces and cone rulings as JSON, CSV or OBJ
"""

import sys

from cli.commands import main


if __name__ == "__main__":
    sys.exit(main())
