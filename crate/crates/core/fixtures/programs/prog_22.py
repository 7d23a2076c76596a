"""Analysis script.

import fake_docstring_module
"""
from __future__ import annotations
from shutil import (
    alpha,
    beta,
)
try:
    import numba
except ImportError:
    pass
import pandas; import astropy.io.fits as m76
# import commented_out_module
TEMPLATE = 'import quoted_module'
NOTE = """
from multiline_string import thing
"""
x = 1  # from inline_comment import y
print('done')
