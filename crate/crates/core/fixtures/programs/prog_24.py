"""Analysis script.

import fake_docstring_module
"""
from __future__ import annotations
try:
    import numba
except ImportError:
    pass
try:
    import pathlib
except ImportError:
    pass
import shapely.geometry
import random, torch
import numpy
import glob
from . import sibling
# import commented_out_module
TEMPLATE = 'import quoted_module'
NOTE = """
from multiline_string import thing
"""
x = 1  # from inline_comment import y
print('done')
