try:
    from qpadic._qpadic import *  # noqa: F401,F403
    from qpadic._qpadic import __doc__  # noqa: F401
except ImportError:
    # In-tree test runs put the extension directly on sys.path.
    from _qpadic import *  # noqa: F401,F403
    from _qpadic import __doc__  # noqa: F401
