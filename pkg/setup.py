"""Build script: compiles the optional grid-scan extension.

The package works without the extension (a NumPy fallback with identical
arithmetic is selected at import time), so a failed compile is tolerated
when SUBADD_SKIP_EXT=1 is set.
"""

import os

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pragma: no cover - build environments without Cython
    cythonize = None


def extensions():
    if os.environ.get("SUBADD_SKIP_EXT") == "1" or cythonize is None:
        return []
    # -ffp-contract=off: the kernel must round a*x+y in two steps exactly
    # like the interpreted paths do; fused multiply-add would change the
    # last ulp and break cross-path agreement.
    ext = Extension(
        "subadd._gridscan",
        sources=["src/subadd/_gridscan.pyx"],
        extra_compile_args=["-O2", "-ffp-contract=off"],
    )
    return cythonize([ext], language_level="3")


setup(ext_modules=extensions())
