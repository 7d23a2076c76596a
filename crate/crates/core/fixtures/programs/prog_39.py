"""Analysis script.

import fake_docstring_module
"""
from __future__ import annotations
import math
import random as m41
try:
    import csv
except ImportError:
    pass
import subprocess
from . import sibling
from .helpers import tool
# import commented_out_module
TEMPLATE = 'import quoted_module'
NOTE = """
from multiline_string import thing
"""
x = 1  # from inline_comment import y
print('done')
