"""Handover-count simulation and speed estimation for cellular-connected UAVs.

Thin wrapper over the compiled extension; the heavy lifting (Monte Carlo
campaigns, estimators, mobility-state detection) lives in C++.
"""

try:
    from ._uavho import *  # noqa: F401,F403
    from ._uavho import __version__  # noqa: F401
except ImportError:
    # Build-tree layout: the extension sits next to the package on sys.path.
    from _uavho import *  # noqa: F401,F403
    from _uavho import __version__  # noqa: F401
