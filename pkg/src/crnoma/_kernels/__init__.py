"""Detection-trial kernel backends.

The compiled Cython kernel is preferred when its extension module built;
otherwise the vectorized numpy reference implementation is used. Both
expose the same functions (``trial_energies``, ``words``) and the same
random-stream contract documented in ``reference.py``.
"""

from __future__ import annotations


def _load():
    try:
        from . import _fast

        return _fast, "cython"
    except ImportError:
        from . import reference

        return reference, "numpy"


_impl, BACKEND = _load()


def active():
    """The kernel module currently in use."""
    return _impl


def get_backend(name: str):
    """Fetch a kernel by name ('cython' or 'numpy') for benchmarks/tests."""
    if name == "cython":
        from . import _fast

        return _fast
    if name == "numpy":
        from . import reference

        return reference
    raise ValueError(f"unknown kernel backend {name!r}")


def available_backends() -> tuple[str, ...]:
    names = []
    try:
        from . import _fast  # noqa: F401

        names.append("cython")
    except ImportError:
        pass
    names.append("numpy")
    return tuple(names)
