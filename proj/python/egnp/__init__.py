try:
    from ._egnp import *  # noqa: F401,F403  (installed layout)
except ImportError:  # in-tree build: the module sits next to the package on sys.path
    from _egnp import *  # noqa: F401,F403
