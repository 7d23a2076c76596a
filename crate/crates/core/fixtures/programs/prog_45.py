"""Analysis script.

import fake_docstring_module
"""
from __future__ import annotations
import sys; import itertools as m85
import pydicom
import gzip as m73
import numpy, dataclasses
from . import sibling
from .helpers import tool
# import commented_out_module
TEMPLATE = 'import quoted_module'
NOTE = """
from multiline_string import thing
"""
x = 1  # from inline_comment import y
print('done')
